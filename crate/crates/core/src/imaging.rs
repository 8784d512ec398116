//! Subspace-migration imaging on a rectangular grid, peak extraction and
//! map comparison.

use std::cmp::Ordering;

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::point::Point2;
use crate::real::Real;
use crate::scene::DirectionSet;
use crate::spectral::SpectralFactors;

pub const DEFAULT_RESOLUTION: usize = 256;
pub const DEFAULT_PEAK_THRESHOLD: f64 = 0.5;
pub const DEFAULT_MIN_SEPARATION: f64 = 0.1;

/// Search window sampled at `nx * ny` nodes, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec<T> {
    pub x_min: T,
    pub x_max: T,
    pub y_min: T,
    pub y_max: T,
    pub nx: usize,
    pub ny: usize,
}

impl<T: Real> GridSpec<T> {
    pub fn new(x_min: T, x_max: T, y_min: T, y_max: T, nx: usize, ny: usize) -> Result<Self> {
        let finite = [x_min, x_max, y_min, y_max].iter().all(|v| v.is_finite());
        if !finite || x_min >= x_max || y_min >= y_max {
            return Err(Error::InvalidArgument(format!(
                "grid bounds must satisfy x_min < x_max and y_min < y_max, got [{x_min}, {x_max}] x [{y_min}, {y_max}]"
            )));
        }
        if nx < 2 || ny < 2 {
            return Err(Error::InvalidArgument(format!(
                "grid needs at least 2 nodes per axis, got {nx}x{ny}"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            y_min,
            y_max,
            nx,
            ny,
        })
    }

    /// Square window `[-half, half]^2` with `n x n` nodes.
    pub fn square(half: T, n: usize) -> Result<Self> {
        Self::new(-half, half, -half, half, n, n)
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn x(&self, i: usize) -> T {
        lerp(self.x_min, self.x_max, i, self.nx)
    }

    pub fn y(&self, j: usize) -> T {
        lerp(self.y_min, self.y_max, j, self.ny)
    }

    pub fn node(&self, i: usize, j: usize) -> Point2<T> {
        Point2::new(self.x(i), self.y(j))
    }

    pub fn dx(&self) -> T {
        (self.x_max - self.x_min) / T::from_usize_lossy(self.nx - 1)
    }

    pub fn dy(&self) -> T {
        (self.y_max - self.y_min) / T::from_usize_lossy(self.ny - 1)
    }

    /// Diagonal length of one grid cell.
    pub fn cell_diagonal(&self) -> T {
        self.dx().hypot(self.dy())
    }
}

impl<T: Real> Default for GridSpec<T> {
    fn default() -> Self {
        Self::square(T::one(), DEFAULT_RESOLUTION).expect("default grid is valid")
    }
}

/// Weighted endpoint form; refining `n -> 2n - 1` reproduces shared nodes
/// bit for bit.
fn lerp<T: Real>(lo: T, hi: T, i: usize, n: usize) -> T {
    let last = n - 1;
    (lo * T::from_usize_lossy(last - i) + hi * T::from_usize_lossy(i)) / T::from_usize_lossy(last)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageSource {
    Numeric,
    Analytic,
}

impl ImageSource {
    pub fn as_str(self) -> &'static str {
        match self {
            ImageSource::Numeric => "numeric",
            ImageSource::Analytic => "analytic",
        }
    }
}

impl std::str::FromStr for ImageSource {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "numeric" => Ok(ImageSource::Numeric),
            "analytic" => Ok(ImageSource::Analytic),
            other => Err(Error::InvalidArgument(format!("unknown image source `{other}`"))),
        }
    }
}

/// Sampled imaging function. Values are stored row by row, rows ordered by
/// increasing `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageMap<T> {
    grid: GridSpec<T>,
    values: Vec<T>,
    eta: T,
    source: ImageSource,
}

impl<T: Real> ImageMap<T> {
    pub fn new(grid: GridSpec<T>, values: Vec<T>, eta: T, source: ImageSource) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidArgument(format!(
                "image has {} values for a {}x{} grid",
                values.len(),
                grid.nx,
                grid.ny
            )));
        }
        if let Some(bad) = values.iter().find(|v| !(**v >= T::zero() && v.is_finite())) {
            return Err(Error::InvalidArgument(format!(
                "image values must be finite and nonnegative, found {bad}"
            )));
        }
        Ok(Self {
            grid,
            values,
            eta,
            source,
        })
    }

    pub fn grid(&self) -> &GridSpec<T> {
        &self.grid
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn eta(&self) -> T {
        self.eta
    }

    pub fn source(&self) -> ImageSource {
        self.source
    }

    /// Value at node `(x_i, y_j)`.
    pub fn value(&self, i: usize, j: usize) -> T {
        self.values[j * self.grid.nx + i]
    }

    pub fn row(&self, j: usize) -> &[T] {
        &self.values[j * self.grid.nx..(j + 1) * self.grid.nx]
    }

    pub fn max_value(&self) -> T {
        self.values.iter().copied().fold(T::zero(), T::max)
    }

    /// First node attaining the global maximum, in storage order.
    pub fn argmax(&self) -> (Point2<T>, T) {
        let (k, v) = self
            .values
            .iter()
            .enumerate()
            .fold((0, T::neg_infinity()), |best, (k, v)| if *v > best.1 { (k, *v) } else { best });
        let (i, j) = (k % self.grid.nx, k / self.grid.nx);
        (self.grid.node(i, j), v)
    }
}

/// Steering vector `W(x; eta)_n = e^{i eta theta_n . x} / sqrt(N)`.
pub fn test_vector<T: Real>(x: Point2<T>, eta: T, dirs: &DirectionSet<T>) -> Vec<Complex<T>> {
    let norm = T::from_usize_lossy(dirs.len()).sqrt().recip();
    dirs.iter()
        .map(|theta| Complex::from_polar(norm, eta * theta.dot(x)))
        .collect()
}

/// `|sum_{m < rank} <W, U_m> <W, conj(V_m)>|` with `<a, b> = conj(a) . b`.
pub fn imaging_value<T: Real>(
    x: Point2<T>,
    eta: T,
    factors: &SpectralFactors<T>,
    dirs: &DirectionSet<T>,
) -> Result<T> {
    let rank = check_imaging_inputs(eta, factors, dirs)?;
    Ok(imaging_value_unchecked(x, eta, factors, dirs, rank))
}

fn check_imaging_inputs<T: Real>(eta: T, factors: &SpectralFactors<T>, dirs: &DirectionSet<T>) -> Result<usize> {
    let rank = factors.rank().ok_or(Error::RankNotSelected)?;
    if !(eta.is_finite() && eta > T::zero()) {
        return Err(Error::InvalidArgument(format!(
            "test frequency must be positive, got {eta}"
        )));
    }
    if dirs.len() != factors.size() {
        return Err(Error::InvalidArgument(format!(
            "{} directions do not match a {}x{} MSR matrix",
            dirs.len(),
            factors.size(),
            factors.size()
        )));
    }
    Ok(rank)
}

fn imaging_value_unchecked<T: Real>(
    x: Point2<T>,
    eta: T,
    factors: &SpectralFactors<T>,
    dirs: &DirectionSet<T>,
    rank: usize,
) -> T {
    let w = test_vector(x, eta, dirs);
    let left = factors.left_vectors();
    let right = factors.right_vectors();
    let zero = Complex::new(T::zero(), T::zero());
    let mut total = zero;
    for m in 0..rank {
        let mut with_u = zero;
        let mut with_v = zero;
        for (n, wn) in w.iter().enumerate() {
            let wc = wn.conj();
            with_u += wc * left[(n, m)];
            with_v += wc * right[(n, m)].conj();
        }
        total += with_u * with_v;
    }
    total.norm()
}

/// Evaluates [`imaging_value`] at every grid node. Rows are computed in
/// parallel; each node is independent, so the output is deterministic.
pub fn image_grid<T: Real>(
    grid: &GridSpec<T>,
    eta: T,
    factors: &SpectralFactors<T>,
    dirs: &DirectionSet<T>,
) -> Result<ImageMap<T>> {
    let rank = check_imaging_inputs(eta, factors, dirs)?;
    let values = sample_grid(grid, |p| imaging_value_unchecked(p, eta, factors, dirs, rank));
    ImageMap::new(*grid, values, eta, ImageSource::Numeric)
}

pub(crate) fn sample_grid<T: Real>(grid: &GridSpec<T>, f: impl Fn(Point2<T>) -> T + Sync) -> Vec<T> {
    let mut values = vec![T::zero(); grid.len()];
    values
        .par_chunks_mut(grid.nx)
        .enumerate()
        .for_each(|(j, row)| {
            for (i, v) in row.iter_mut().enumerate() {
                *v = f(grid.node(i, j));
            }
        });
    values
}

/// A detected local maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak<T> {
    pub location: Point2<T>,
    pub value: T,
    pub i: usize,
    pub j: usize,
}

/// Strict 8-neighbourhood local maxima at or above `threshold_frac` of the
/// global maximum, greedily thinned to be `min_separation` apart, strongest
/// first.
pub fn extract_peaks<T: Real>(image: &ImageMap<T>, threshold_frac: T, min_separation: T) -> Result<Vec<Peak<T>>> {
    if !(threshold_frac > T::zero() && threshold_frac < T::one()) {
        return Err(Error::InvalidArgument(format!(
            "peak threshold must lie in (0, 1), got {threshold_frac}"
        )));
    }
    if !(min_separation.is_finite() && min_separation > T::zero()) {
        return Err(Error::InvalidArgument(format!(
            "minimum peak separation must be positive, got {min_separation}"
        )));
    }
    let grid = image.grid();
    let global = image.max_value();
    if global <= T::zero() {
        return Ok(Vec::new());
    }
    let floor = threshold_frac * global;
    let (nx, ny) = (grid.nx, grid.ny);

    let mut candidates = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            let v = image.value(i, j);
            if v < floor {
                continue;
            }
            let is_max = neighbours(i, j, nx, ny).all(|(a, b)| image.value(a, b) < v);
            if is_max {
                candidates.push(Peak {
                    location: grid.node(i, j),
                    value: v,
                    i,
                    j,
                });
            }
        }
    }
    candidates.sort_by(|a, b| {
        b.value
            .partial_cmp(&a.value)
            .unwrap_or(Ordering::Equal)
            .then((a.j, a.i).cmp(&(b.j, b.i)))
    });

    let mut kept: Vec<Peak<T>> = Vec::new();
    for c in candidates {
        if kept.iter().all(|k| k.location.distance(c.location) >= min_separation) {
            kept.push(c);
        }
    }
    Ok(kept)
}

fn neighbours(i: usize, j: usize, nx: usize, ny: usize) -> impl Iterator<Item = (usize, usize)> {
    (-1isize..=1)
        .flat_map(|dj| (-1isize..=1).map(move |di| (di, dj)))
        .filter(|&(di, dj)| di != 0 || dj != 0)
        .filter_map(move |(di, dj)| {
            let a = i.checked_add_signed(di)?;
            let b = j.checked_add_signed(dj)?;
            (a < nx && b < ny).then_some((a, b))
        })
}

/// Summary of the difference between two maps on the same grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImageComparison<T> {
    pub max_abs_diff: T,
    pub rmse: T,
    pub argmax_a: Point2<T>,
    pub argmax_b: Point2<T>,
}

pub fn compare_images<T: Real>(a: &ImageMap<T>, b: &ImageMap<T>) -> Result<ImageComparison<T>> {
    if a.grid() != b.grid() {
        return Err(Error::GeometryMismatch(format!(
            "{:?} vs {:?}",
            a.grid(),
            b.grid()
        )));
    }
    let mut max_abs_diff = T::zero();
    let mut sq = T::zero();
    for (x, y) in a.values().iter().zip(b.values()) {
        let d = (*x - *y).abs();
        max_abs_diff = max_abs_diff.max(d);
        sq += d * d;
    }
    let rmse = (sq / T::from_usize_lossy(a.values().len())).sqrt();
    Ok(ImageComparison {
        max_abs_diff,
        rmse,
        argmax_a: a.argmax().0,
        argmax_b: b.argmax().0,
    })
}
