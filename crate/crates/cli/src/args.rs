use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "submig", version, about = "Subspace migration imaging of small inclusions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Synthesize a multistatic response matrix and write it to a file.
    Synthesize(SynthesizeArgs),
    /// Image an MSR file with the subspace migration functional.
    Image(ImageArgs),
    /// Evaluate the closed-form Bessel prediction of the image.
    Analytic(AnalyticArgs),
    /// Compare two image files defined on the same grid.
    Compare(CompareArgs),
    /// Extract local maxima from an image file.
    Peaks(PeaksArgs),
    /// Print where the peaks are expected to appear for a given test frequency.
    Predict(PredictArgs),
}

#[derive(Debug, Args)]
pub struct SceneArgs {
    /// TOML scene file.
    #[arg(long, value_name = "PATH", conflicts_with = "preset", required_unless_present = "preset")]
    pub scene: Option<PathBuf>,

    /// Built-in scene (fig2 or fig3).
    #[arg(long, value_name = "NAME")]
    pub preset: Option<String>,

    #[command(flatten)]
    pub frequency: FrequencyArgs,
}

#[derive(Debug, Args)]
pub struct FrequencyArgs {
    #[arg(long, value_name = "F", conflicts_with = "omega", allow_negative_numbers = true)]
    pub wavelength: Option<f64>,

    /// Angular frequency.
    #[arg(long, value_name = "F", allow_negative_numbers = true)]
    pub omega: Option<f64>,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Imaging window.
    #[arg(
        long,
        num_args = 4,
        value_names = ["XMIN", "XMAX", "YMIN", "YMAX"],
        allow_negative_numbers = true,
        default_values_t = [-1.0, 1.0, -1.0, 1.0]
    )]
    pub grid: Vec<f64>,

    /// Nodes per axis; a single value gives a square grid.
    #[arg(long, num_args = 1..=2, value_names = ["NX", "NY"], default_values_t = [128])]
    pub res: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct EtaArgs {
    /// Test frequency; repeat or list several to produce one output each.
    #[arg(long, num_args = 1.., required = true, value_name = "F", allow_negative_numbers = true)]
    pub eta: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct SynthesizeArgs {
    #[command(flatten)]
    pub scene: SceneArgs,

    #[arg(long, value_name = "N")]
    pub n_directions: Option<usize>,

    /// Add white Gaussian noise at this signal-to-noise ratio.
    #[arg(long, value_name = "DB", allow_negative_numbers = true)]
    pub snr_db: Option<f64>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ImageArgs {
    /// MSR file produced by `synthesize`.
    #[arg(long, value_name = "PATH")]
    pub msr: PathBuf,

    #[command(flatten)]
    pub eta: EtaArgs,

    #[command(flatten)]
    pub grid: GridArgs,

    /// Keep exactly this many singular triplets.
    #[arg(long, value_name = "K", conflicts_with = "rank_auto")]
    pub rank: Option<usize>,

    /// Keep singular values at or above TAU times the largest [default: 0.01].
    #[arg(long, value_name = "TAU", allow_negative_numbers = true)]
    pub rank_auto: Option<f64>,

    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,

    /// Also write a P2 grayscale rendering.
    #[arg(long, value_name = "PATH")]
    pub pgm: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyticArgs {
    #[command(flatten)]
    pub scene: SceneArgs,

    #[command(flatten)]
    pub eta: EtaArgs,

    #[command(flatten)]
    pub grid: GridArgs,

    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,

    #[arg(long, value_name = "PATH")]
    pub pgm: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    pub first: PathBuf,
    pub second: PathBuf,

    /// Write the report here instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PeaksArgs {
    pub image: PathBuf,

    /// Fraction of the global maximum a peak must reach.
    #[arg(long, default_value_t = 0.5)]
    pub threshold: f64,

    #[arg(long, default_value_t = 0.1)]
    pub min_separation: f64,

    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[command(flatten)]
    pub scene: SceneArgs,

    #[command(flatten)]
    pub eta: EtaArgs,

    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}
