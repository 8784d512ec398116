//! Closed-form description of the imaging function in terms of `J0` and `J1`.

pub mod bessel;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::imaging::{sample_grid, GridSpec, ImageMap, ImageSource};
use crate::point::Point2;
use crate::real::Real;
use crate::scene::{DirectionSet, SceneConfig};

pub use bessel::{bessel_j0, bessel_j1, BesselEvaluator};

/// Discrete direction averages next to their Bessel-function limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureIdentity<T> {
    /// `(1/N) sum_n e^{i omega theta_n . x}`
    pub lhs0: Complex<T>,
    /// `(1/N) sum_n (theta_n . xi) e^{i omega theta_n . x}`
    pub lhs1: Complex<T>,
    /// `J0(omega |x|)`
    pub rhs0: T,
    /// `i (x/|x| . xi) J1(omega |x|)`, zero at `x = 0`.
    pub rhs1: Complex<T>,
}

impl<T: Real> QuadratureIdentity<T> {
    pub fn error0(&self) -> T {
        (self.lhs0 - Complex::from(self.rhs0)).norm()
    }

    pub fn error1(&self) -> T {
        (self.lhs1 - self.rhs1).norm()
    }
}

pub fn quadrature_identity_check<T: Real>(
    x: Point2<T>,
    xi: Point2<T>,
    omega: T,
    dirs: &DirectionSet<T>,
) -> QuadratureIdentity<T> {
    let count = T::from_usize_lossy(dirs.len());
    let zero = Complex::new(T::zero(), T::zero());
    let (mut s0, mut s1) = (zero, zero);
    for theta in dirs.iter() {
        let e = Complex::from_polar(T::one(), omega * theta.dot(x));
        s0 += e;
        s1 += e * theta.dot(xi);
    }
    let r = x.norm();
    let direction = if r > T::zero() { x.dot(xi) / r } else { T::zero() };
    QuadratureIdentity {
        lhs0: s0 / count,
        lhs1: s1 / count,
        rhs0: bessel::j0(omega * r),
        rhs1: Complex::new(T::zero(), direction * bessel::j1(omega * r)),
    }
}

/// Closed-form image value, summed over inclusions with material contrast:
///
/// `|sum_m J0(|rho_m|)^2 - sum_s (rho_m/|rho_m| . e_s)^2 J1(|rho_m|)^2|`,
/// `rho_m = omega z_m - eta x`, each summand equal to 1 at `rho_m = 0`.
pub fn analytic_image_value<T: Real>(x: Point2<T>, eta: T, scene: &SceneConfig<T>, omega: T) -> T {
    contributing(scene)
        .map(|z| {
            let rho = z * omega - x * eta;
            let r = rho.norm();
            if r == T::zero() {
                return T::one();
            }
            let unit = rho.scale(r.recip());
            let b0 = bessel::j0(r);
            let b1 = bessel::j1(r);
            (0..2).fold(b0 * b0, |acc, s| {
                let c = unit.component(s);
                acc - c * c * b1 * b1
            })
        })
        .sum::<T>()
        .abs()
}

/// Same quantity using `sum_s (rho_hat . e_s)^2 = 1`: `|sum_m J0^2 - J1^2|`.
pub fn analytic_image_value_simplified<T: Real>(x: Point2<T>, eta: T, scene: &SceneConfig<T>, omega: T) -> T {
    contributing(scene)
        .map(|z| {
            let r = (z * omega - x * eta).norm();
            let b0 = bessel::j0(r);
            let b1 = bessel::j1(r);
            b0 * b0 - b1 * b1
        })
        .sum::<T>()
        .abs()
}

fn contributing<T: Real>(scene: &SceneConfig<T>) -> impl Iterator<Item = Point2<T>> + '_ {
    scene
        .inhomogeneities()
        .iter()
        .filter(|h| scene.has_contrast(h))
        .map(|h| h.location)
}

pub fn analytic_image_grid<T: Real>(
    grid: &GridSpec<T>,
    eta: T,
    scene: &SceneConfig<T>,
    omega: T,
) -> Result<ImageMap<T>> {
    for (name, v) in [("test frequency", eta), ("angular frequency", omega)] {
        if !(v.is_finite() && v > T::zero()) {
            return Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")));
        }
    }
    let values = sample_grid(grid, |p| analytic_image_value(p, eta, scene, omega));
    ImageMap::new(*grid, values, eta, ImageSource::Analytic)
}

/// Predicted maxima `(omega / eta) z_m`, in scene order.
pub fn predict_peaks<T: Real>(scene: &SceneConfig<T>, omega: T, eta: T) -> Vec<Point2<T>> {
    let ratio = omega / eta;
    scene.locations().map(|z| z * ratio).collect()
}
