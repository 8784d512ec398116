//! Physical configuration: inclusions, background medium, frequency and the
//! illumination directions.

use std::fmt;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::point::Point2;
use crate::real::Real;

/// Separation threshold used by [`validate_scene`]: pairs with
/// `omega * |z_m - z_m'|` at or below this value are reported.
pub const DEFAULT_SEPARATION_THRESHOLD: f64 = 7.5;

/// A small circular inclusion `z + r B` with constant material parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Inhomogeneity<T> {
    pub location: Point2<T>,
    pub radius: T,
    pub permittivity: T,
    pub permeability: T,
    /// Area of the reference domain `B`; the unit disk by default.
    pub shape_area: T,
}

impl<T: Real> Inhomogeneity<T> {
    pub fn new(location: Point2<T>, radius: T, permittivity: T, permeability: T) -> Result<Self> {
        Self::with_shape_area(location, radius, permittivity, permeability, T::PI())
    }

    pub fn with_shape_area(
        location: Point2<T>,
        radius: T,
        permittivity: T,
        permeability: T,
        shape_area: T,
    ) -> Result<Self> {
        if !location.is_finite() {
            return Err(Error::InvalidScene(format!(
                "inclusion location {location:?} is not finite"
            )));
        }
        for (name, value) in [
            ("radius", radius),
            ("permittivity", permittivity),
            ("permeability", permeability),
            ("shape_area", shape_area),
        ] {
            if !(value.is_finite() && value > T::zero()) {
                return Err(Error::InvalidScene(format!(
                    "inclusion {name} must be positive and finite, got {value}"
                )));
            }
        }
        Ok(Self {
            location,
            radius,
            permittivity,
            permeability,
            shape_area,
        })
    }
}

/// Ordered collection of inclusions embedded in a homogeneous background.
#[derive(Debug, Clone, PartialEq)]
pub struct SceneConfig<T> {
    inhomogeneities: Vec<Inhomogeneity<T>>,
    background_permittivity: T,
    background_permeability: T,
}

impl<T: Real> SceneConfig<T> {
    pub fn new(
        inhomogeneities: Vec<Inhomogeneity<T>>,
        background_permittivity: T,
        background_permeability: T,
    ) -> Result<Self> {
        if inhomogeneities.is_empty() {
            return Err(Error::InvalidScene("scene has no inclusions".into()));
        }
        for (name, value) in [
            ("background permittivity", background_permittivity),
            ("background permeability", background_permeability),
        ] {
            if !(value.is_finite() && value > T::zero()) {
                return Err(Error::InvalidScene(format!(
                    "{name} must be positive and finite, got {value}"
                )));
            }
        }
        for (i, a) in inhomogeneities.iter().enumerate() {
            for (j, b) in inhomogeneities.iter().enumerate().skip(i + 1) {
                if a.location.distance(b.location) <= T::zero() {
                    return Err(Error::InvalidScene(format!(
                        "inclusions {} and {} share location {:?}",
                        i + 1,
                        j + 1,
                        a.location
                    )));
                }
            }
        }
        Ok(Self {
            inhomogeneities,
            background_permittivity,
            background_permeability,
        })
    }

    /// Scene in a unit background (`eps_0 = mu_0 = 1`).
    pub fn in_vacuum(inhomogeneities: Vec<Inhomogeneity<T>>) -> Result<Self> {
        Self::new(inhomogeneities, T::one(), T::one())
    }

    pub fn inhomogeneities(&self) -> &[Inhomogeneity<T>] {
        &self.inhomogeneities
    }

    pub fn len(&self) -> usize {
        self.inhomogeneities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inhomogeneities.is_empty()
    }

    pub fn background_permittivity(&self) -> T {
        self.background_permittivity
    }

    pub fn background_permeability(&self) -> T {
        self.background_permeability
    }

    pub fn locations(&self) -> impl Iterator<Item = Point2<T>> + '_ {
        self.inhomogeneities.iter().map(|h| h.location)
    }

    /// `true` when the inclusion differs from the background in at least one
    /// material parameter.
    pub fn has_contrast(&self, inclusion: &Inhomogeneity<T>) -> bool {
        inclusion.permittivity != self.background_permittivity
            || inclusion.permeability != self.background_permeability
    }

    /// Parses the TOML scene format.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: SceneFile = toml::from_str(text)?;
        let background = raw.background.unwrap_or_default();
        let inclusions = raw
            .inhomogeneity
            .into_iter()
            .map(|h| {
                let [x, y] = h.location;
                Inhomogeneity::with_shape_area(
                    Point2::new(T::lit(x), T::lit(y)),
                    T::lit(h.radius),
                    T::lit(h.permittivity),
                    T::lit(h.permeability),
                    h.shape_area.map(T::lit).unwrap_or_else(T::PI),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            inclusions,
            T::lit(background.permittivity),
            T::lit(background.permeability),
        )
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SceneFile {
    background: Option<BackgroundEntry>,
    #[serde(default)]
    inhomogeneity: Vec<InclusionEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BackgroundEntry {
    #[serde(default = "one")]
    permittivity: f64,
    #[serde(default = "one")]
    permeability: f64,
}

impl Default for BackgroundEntry {
    fn default() -> Self {
        Self {
            permittivity: 1.0,
            permeability: 1.0,
        }
    }
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InclusionEntry {
    location: [f64; 2],
    radius: f64,
    permittivity: f64,
    permeability: f64,
    shape_area: Option<f64>,
}

/// Angular frequency together with its wavelength.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencySpec<T> {
    omega: T,
    wavelength: T,
}

impl<T: Real> FrequencySpec<T> {
    pub fn from_omega(omega: T) -> Result<Self> {
        if !(omega.is_finite() && omega > T::zero()) {
            return Err(Error::InvalidArgument(format!(
                "angular frequency must be positive and finite, got {omega}"
            )));
        }
        Ok(Self {
            omega,
            wavelength: T::TAU() / omega,
        })
    }

    pub fn from_wavelength(wavelength: T) -> Result<Self> {
        if !(wavelength.is_finite() && wavelength > T::zero()) {
            return Err(Error::InvalidArgument(format!(
                "wavelength must be positive and finite, got {wavelength}"
            )));
        }
        Ok(Self {
            omega: T::TAU() / wavelength,
            wavelength,
        })
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    pub fn wavelength(&self) -> T {
        self.wavelength
    }
}

/// Illumination directions `theta_1..theta_N` on the unit circle. The
/// observation directions are their negatives.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionSet<T> {
    directions: Vec<Point2<T>>,
}

impl<T: Real> DirectionSet<T> {
    /// `N` equispaced directions `theta_l = (cos 2 pi l / N, sin 2 pi l / N)`,
    /// `l = 1..N`.
    pub fn equispaced(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!(
                "at least 3 directions are needed to span the circle, got {n}"
            )));
        }
        let directions = (1..=n).map(|l| turn_fraction(l % n, n)).collect();
        Ok(Self { directions })
    }

    /// Arbitrary directions; each must be a unit vector and all must differ.
    pub fn from_directions(directions: Vec<Point2<T>>) -> Result<Self> {
        if directions.len() < 3 {
            return Err(Error::InvalidArgument(format!(
                "at least 3 directions are needed, got {}",
                directions.len()
            )));
        }
        let tol = T::lit(1e-12);
        for (i, d) in directions.iter().enumerate() {
            if !d.is_finite() || (d.norm() - T::one()).abs() > tol {
                return Err(Error::InvalidArgument(format!(
                    "direction {} is not a unit vector: {d:?}",
                    i + 1
                )));
            }
            if directions[..i].iter().any(|e| e.distance(*d) <= tol) {
                return Err(Error::InvalidArgument(format!(
                    "direction {} duplicates an earlier direction",
                    i + 1
                )));
            }
        }
        Ok(Self { directions })
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn as_slice(&self) -> &[Point2<T>] {
        &self.directions
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point2<T>> {
        self.directions.iter()
    }
}

/// Unit vector at `k / n` of a full turn, exact at quarter turns.
fn turn_fraction<T: Real>(k: usize, n: usize) -> Point2<T> {
    if (4 * k).is_multiple_of(n) {
        let (x, y) = match 4 * k / n {
            0 => (1.0, 0.0),
            1 => (0.0, 1.0),
            2 => (-1.0, 0.0),
            _ => (0.0, -1.0),
        };
        return Point2::new(T::lit(x), T::lit(y));
    }
    let angle = T::TAU() * T::from_usize_lossy(k) / T::from_usize_lossy(n);
    Point2::from_angle(angle)
}

/// Advisory finding from [`validate_scene`].
#[derive(Debug, Clone, PartialEq)]
pub enum SceneWarning<T> {
    /// `omega * |z_first - z_second|` is not comfortably large.
    Separation {
        first: usize,
        second: usize,
        product: T,
    },
    /// Wavelength does not exceed the inclusion diameter.
    Resolution {
        index: usize,
        wavelength: T,
        diameter: T,
    },
}

impl<T: Real> fmt::Display for SceneWarning<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SceneWarning::Separation {
                first,
                second,
                product,
            } => write!(
                f,
                "inclusions {first} and {second} are close: omega*distance = {product} is not >> 0.75"
            ),
            SceneWarning::Resolution {
                index,
                wavelength,
                diameter,
            } => write!(
                f,
                "inclusion {index}: wavelength {wavelength} does not exceed diameter {diameter}"
            ),
        }
    }
}

/// Checks the well-separatedness and small-size conditions with the default
/// separation threshold.
pub fn validate_scene<T: Real>(scene: &SceneConfig<T>, freq: &FrequencySpec<T>) -> Vec<SceneWarning<T>> {
    validate_scene_with(scene, freq, T::lit(DEFAULT_SEPARATION_THRESHOLD))
}

/// Inclusion indices in the warnings are 1-based.
pub fn validate_scene_with<T: Real>(
    scene: &SceneConfig<T>,
    freq: &FrequencySpec<T>,
    separation_threshold: T,
) -> Vec<SceneWarning<T>> {
    let mut warnings = Vec::new();
    let inclusions = scene.inhomogeneities();
    for (i, a) in inclusions.iter().enumerate() {
        for (j, b) in inclusions.iter().enumerate().skip(i + 1) {
            let product = freq.omega() * a.location.distance(b.location);
            if product <= separation_threshold {
                warnings.push(SceneWarning::Separation {
                    first: i + 1,
                    second: j + 1,
                    product,
                });
            }
        }
    }
    for (i, h) in inclusions.iter().enumerate() {
        let diameter = T::lit(2.0) * h.radius;
        if freq.wavelength() <= diameter {
            warnings.push(SceneWarning::Resolution {
                index: i + 1,
                wavelength: freq.wavelength(),
                diameter,
            });
        }
    }
    warnings
}
