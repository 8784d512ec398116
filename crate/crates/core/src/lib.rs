//! Subspace-migration imaging of small electromagnetic inclusions from
//! far-field multistatic response data, with a closed-form Bessel-function
//! model of the image under a mismatched test frequency.
//!
//! The numerical core is generic over [`Real`] (`f32`, `f64`); the aliases
//! below fix it to `f64`, which is what the command-line tool uses.

pub mod analytic;
pub mod error;
pub mod forward;
pub mod imaging;
pub mod io;
pub mod point;
pub mod presets;
pub mod real;
pub mod scene;
pub mod spectral;

pub use analytic::{
    analytic_image_grid, analytic_image_value, analytic_image_value_simplified, bessel_j0,
    bessel_j1, predict_peaks, quadrature_identity_check, BesselEvaluator, QuadratureIdentity,
};
pub use error::{Error, Result};
pub use forward::{
    add_noise, assemble_msr, build_e_matrix, decomposition_reconstruction, empirical_snr_db,
    farfield_entry, MsrMatrix,
};
pub use imaging::{
    compare_images, extract_peaks, image_grid, imaging_value, test_vector, GridSpec,
    ImageComparison, ImageMap, ImageSource, Peak,
};
pub use point::Point2;
pub use presets::Preset;
pub use real::Real;
pub use scene::{
    validate_scene, validate_scene_with, DirectionSet, FrequencySpec, Inhomogeneity, SceneConfig,
    SceneWarning,
};
pub use spectral::{decompose, select_rank, RankMode, SpectralFactors};

pub type Point = Point2<f64>;
pub type Scene = SceneConfig<f64>;
pub type Inclusion = Inhomogeneity<f64>;
pub type Frequency = FrequencySpec<f64>;
pub type Directions = DirectionSet<f64>;
pub type Msr = MsrMatrix<f64>;
pub type Factors = SpectralFactors<f64>;
pub type Grid = GridSpec<f64>;
pub type Image = ImageMap<f64>;
