//! Far-field forward model: multistatic response synthesis and noise.

use nalgebra::DMatrix;
use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::point::Point2;
use crate::real::Real;
use crate::scene::{DirectionSet, FrequencySpec, Inhomogeneity, SceneConfig};

/// Multistatic response matrix: entry `(j, l)` is the far-field amplitude
/// observed in direction `-theta_j` for incidence `theta_l`.
#[derive(Debug, Clone, PartialEq)]
pub struct MsrMatrix<T: Real> {
    entries: DMatrix<Complex<T>>,
    omega: T,
    noisy: bool,
}

impl<T: Real> MsrMatrix<T> {
    pub fn from_entries(entries: DMatrix<Complex<T>>, omega: T, noisy: bool) -> Result<Self> {
        if !entries.is_square() || entries.nrows() == 0 {
            return Err(Error::InvalidArgument(format!(
                "MSR matrix must be square and non-empty, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        if !(omega.is_finite() && omega > T::zero()) {
            return Err(Error::InvalidArgument(format!(
                "MSR frequency must be positive, got {omega}"
            )));
        }
        Ok(Self {
            entries,
            omega,
            noisy,
        })
    }

    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex<T>> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<Complex<T>> {
        self.entries
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    pub fn is_noisy(&self) -> bool {
        self.noisy
    }
}

/// `e^{i pi/4} / sqrt(8 omega pi)`, the Hankel far-field constant.
fn hankel_constant<T: Real>(omega: T) -> Complex<T> {
    let scale = (T::lit(8.0) * omega * T::PI()).sqrt().recip();
    Complex::from_polar(scale, T::FRAC_PI_4())
}

fn permittivity_contrast<T: Real>(scene: &SceneConfig<T>, h: &Inhomogeneity<T>) -> T {
    (h.permittivity - scene.background_permittivity())
        / (scene.background_permittivity() * scene.background_permeability()).sqrt()
}

/// Isotropic polarization factor `2 mu_0 / (mu_m + mu_0)`.
fn permeability_factor<T: Real>(scene: &SceneConfig<T>, h: &Inhomogeneity<T>) -> T {
    let mu0 = scene.background_permeability();
    T::lit(2.0) * mu0 / (h.permeability + mu0)
}

/// Far-field amplitude for observation direction `obs` and incidence `inc`.
///
/// Inclusions whose parameters equal the background's are not scatterers
/// and contribute nothing.
pub fn farfield_entry<T: Real>(
    scene: &SceneConfig<T>,
    freq: &FrequencySpec<T>,
    obs: Point2<T>,
    inc: Point2<T>,
) -> Complex<T> {
    let omega = freq.omega();
    let base = hankel_constant(omega) * (omega * omega);
    let shift = inc - obs;
    let mut sum = Complex::new(T::zero(), T::zero());
    for h in scene.inhomogeneities() {
        if !scene.has_contrast(h) {
            continue;
        }
        let bracket = (permittivity_contrast(scene, h)
            - obs.dot(inc) * permeability_factor(scene, h))
            * h.shape_area;
        let phase = Complex::from_polar(T::one(), omega * shift.dot(h.location));
        sum += phase * (bracket * h.radius * h.radius);
    }
    base * sum
}

/// Noiseless MSR matrix with observation directions `-theta_j`.
pub fn assemble_msr<T: Real>(
    scene: &SceneConfig<T>,
    freq: &FrequencySpec<T>,
    dirs: &DirectionSet<T>,
) -> MsrMatrix<T> {
    let theta = dirs.as_slice();
    let n = theta.len();
    let entries = DMatrix::from_fn(n, n, |j, l| farfield_entry(scene, freq, -theta[j], theta[l]));
    MsrMatrix {
        entries,
        omega: freq.omega(),
        noisy: false,
    }
}

/// `N x 3` matrix whose columns are the normalized steering vector and its
/// two directional-derivative companions for a point `location`.
pub fn build_e_matrix<T: Real>(
    location: Point2<T>,
    omega: T,
    dirs: &DirectionSet<T>,
) -> DMatrix<Complex<T>> {
    let theta = dirs.as_slice();
    let norm = T::from_usize_lossy(theta.len()).sqrt().recip();
    DMatrix::from_fn(theta.len(), 3, |n, col| {
        let steer = Complex::from_polar(norm, omega * theta[n].dot(location));
        match col {
            0 => steer,
            c => steer * theta[n].component(c - 1),
        }
    })
}

/// Rebuilds the noiseless MSR matrix as `sum_m E_m D_m E_m^T` with the
/// diagonal contrast block `D_m`.
pub fn decomposition_reconstruction<T: Real>(
    scene: &SceneConfig<T>,
    freq: &FrequencySpec<T>,
    dirs: &DirectionSet<T>,
) -> DMatrix<Complex<T>> {
    let omega = freq.omega();
    let n = dirs.len();
    let base = hankel_constant(omega) * (omega * omega * T::from_usize_lossy(n));
    let mut total = DMatrix::zeros(n, n);
    for h in scene.inhomogeneities() {
        if !scene.has_contrast(h) {
            continue;
        }
        let e = build_e_matrix(h.location, omega, dirs);
        let eps = permittivity_contrast(scene, h) * h.shape_area;
        let mu = permeability_factor(scene, h) * h.shape_area;
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex::from(eps),
            Complex::from(mu),
            Complex::from(mu),
        ]));
        let block = &e * d * e.transpose();
        total += block * (base * (h.radius * h.radius));
    }
    total
}

/// Adds circularly-symmetric complex white Gaussian noise at the requested
/// signal-to-noise ratio (dB), with signal power the mean of `|M_jl|^2`.
///
/// Draws are taken row-major over `(j, l)`, real part before imaginary part.
pub fn add_noise<T: Real>(msr: &MsrMatrix<T>, snr_db: T, seed: u64) -> Result<MsrMatrix<T>> {
    if !snr_db.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "SNR must be finite, got {snr_db}"
        )));
    }
    if msr.noisy {
        return Err(Error::InvalidArgument(
            "noise is only added to noiseless MSR data".into(),
        ));
    }
    let n = msr.size();
    let count = T::from_usize_lossy(n * n);
    let power = msr.entries.iter().map(|z| z.norm_sqr()).sum::<T>() / count;
    let variance = power / T::lit(10.0).powf(snr_db / T::lit(10.0));
    let part_std = (variance / T::lit(2.0)).sqrt();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = msr.entries.clone();
    for j in 0..n {
        for l in 0..n {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            entries[(j, l)] += Complex::new(T::lit(re), T::lit(im)) * part_std;
        }
    }
    Ok(MsrMatrix {
        entries,
        omega: msr.omega,
        noisy: true,
    })
}

/// `10 log10(||clean||^2 / ||noisy - clean||^2)`.
pub fn empirical_snr_db<T: Real>(clean: &MsrMatrix<T>, noisy: &MsrMatrix<T>) -> T {
    let signal = clean.entries.iter().map(|z| z.norm_sqr()).sum::<T>();
    let noise = clean
        .entries
        .iter()
        .zip(noisy.entries.iter())
        .map(|(a, b)| (b - a).norm_sqr())
        .sum::<T>();
    T::lit(10.0) * (signal / noise).log10()
}
