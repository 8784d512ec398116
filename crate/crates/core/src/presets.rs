//! Built-in experiment configurations: three disks of radius 0.05 at
//! (0.4, 0), (-0.6, 0.3) and (0.1, -0.5) in a unit background, probed with
//! 16 equispaced directions.

use crate::point::Point2;
use crate::real::Real;
use crate::scene::{Inhomogeneity, SceneConfig};

pub const PRESET_NAMES: [&str; 2] = ["fig2", "fig3"];

/// A scene together with its acquisition parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Preset<T> {
    pub name: &'static str,
    pub scene: SceneConfig<T>,
    pub wavelength: T,
    pub n_directions: usize,
    pub snr_db: T,
}

const LOCATIONS: [(f64, f64); 3] = [(0.4, 0.0), (-0.6, 0.3), (0.1, -0.5)];
const RADIUS: f64 = 0.05;

fn build<T: Real>(name: &'static str, wavelength: f64, contrasts: [(f64, f64); 3]) -> Preset<T> {
    let inclusions = LOCATIONS
        .iter()
        .zip(contrasts)
        .map(|(&(x, y), (eps, mu))| {
            Inhomogeneity::new(Point2::new(T::lit(x), T::lit(y)), T::lit(RADIUS), T::lit(eps), T::lit(mu))
                .expect("preset inclusion is valid")
        })
        .collect();
    Preset {
        name,
        scene: SceneConfig::in_vacuum(inclusions).expect("preset scene is valid"),
        wavelength: T::lit(wavelength),
        n_directions: 16,
        snr_db: T::lit(20.0),
    }
}

/// Wavelength 0.4, every inclusion with `eps = mu = 5`.
pub fn fig2<T: Real>() -> Preset<T> {
    build("fig2", 0.4, [(5.0, 5.0); 3])
}

/// Wavelength 0.2, contrasts (5, 5), (2, 2), (7, 7).
pub fn fig3<T: Real>() -> Preset<T> {
    build("fig3", 0.2, [(5.0, 5.0), (2.0, 2.0), (7.0, 7.0)])
}

pub fn by_name<T: Real>(name: &str) -> Option<Preset<T>> {
    match name {
        "fig2" => Some(fig2()),
        "fig3" => Some(fig3()),
        _ => None,
    }
}
