mod args;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use submig::{io, presets, spectral, Directions, Frequency, Grid, Image, RankMode, Scene};

use args::{Cli, Command, FrequencyArgs, GridArgs, SceneArgs};

const DEFAULT_DIRECTIONS: usize = 16;

#[derive(Debug)]
enum Failure {
    Usage(String),
    Compute(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Compute(_) => 1,
            Failure::Usage(_) => 2,
        }
    }
}

impl From<submig::Error> for Failure {
    fn from(e: submig::Error) -> Self {
        use submig::Error::*;
        match e {
            RankNotSelected | SvdNonConvergence { .. } | Io(_) => Failure::Compute(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn input<T>(path: &Path, r: submig::Result<T>) -> CliResult<T> {
    r.map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Synthesize(a) => synthesize(a),
        Command::Image(a) => image(a),
        Command::Analytic(a) => analytic(a),
        Command::Compare(a) => compare(a),
        Command::Peaks(a) => peaks(a),
        Command::Predict(a) => predict(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Usage(msg) | Failure::Compute(msg)) = &f;
            eprintln!("error: {msg}");
            ExitCode::from(f.exit_code())
        }
    }
}

struct Setup {
    scene: Scene,
    frequency: Frequency,
    n_directions: Option<usize>,
}

fn load_setup(args: &SceneArgs) -> CliResult<Setup> {
    let (scene, wavelength, n_directions) = match (&args.scene, &args.preset) {
        (Some(path), _) => (input(path, Scene::load(path))?, None, None),
        (None, Some(name)) => {
            let p = presets::by_name::<f64>(name).ok_or_else(|| {
                Failure::Usage(format!(
                    "unknown preset {name:?}; expected one of {}",
                    presets::PRESET_NAMES.join(", ")
                ))
            })?;
            (p.scene, Some(p.wavelength), Some(p.n_directions))
        }
        (None, None) => return Err(Failure::Usage("one of --scene or --preset is required".into())),
    };
    let frequency = frequency(&args.frequency, wavelength)?;
    Ok(Setup {
        scene,
        frequency,
        n_directions,
    })
}

fn frequency(args: &FrequencyArgs, fallback_wavelength: Option<f64>) -> CliResult<Frequency> {
    let f = match (args.omega, args.wavelength.or(fallback_wavelength)) {
        (Some(omega), _) => Frequency::from_omega(omega),
        (None, Some(wavelength)) => Frequency::from_wavelength(wavelength),
        (None, None) => return Err(Failure::Usage("one of --wavelength or --omega is required".into())),
    };
    Ok(f?)
}

fn grid(args: &GridArgs) -> CliResult<Grid> {
    let (nx, ny) = match args.res[..] {
        [n] => (n, n),
        [nx, ny] => (nx, ny),
        _ => return Err(Failure::Usage("--res takes one or two values".into())),
    };
    let [x0, x1, y0, y1] = args.grid[..] else {
        return Err(Failure::Usage("--grid takes four values".into()));
    };
    Ok(Grid::new(x0, x1, y0, y1, nx, ny)?)
}

/// With several test frequencies each output gets an `_eta<value>` suffix.
fn output_path(base: &Path, eta: f64, many: bool) -> PathBuf {
    if !many {
        return base.to_path_buf();
    }
    let stem = base.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match base.extension() {
        Some(ext) => format!("{stem}_eta{eta}.{}", ext.to_string_lossy()),
        None => format!("{stem}_eta{eta}"),
    };
    base.with_file_name(name)
}

fn write_maps(maps: &[Image], out: &Path, pgm: Option<&Path>) -> CliResult<()> {
    let many = maps.len() > 1;
    for map in maps {
        let path = output_path(out, map.eta(), many);
        io::save_image(map, &path)?;
        eprintln!("wrote {}", path.display());
        if let Some(pgm) = pgm {
            let path = output_path(pgm, map.eta(), many);
            io::save_pgm(map, &path)?;
            eprintln!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Compute(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn synthesize(a: args::SynthesizeArgs) -> CliResult<()> {
    let setup = load_setup(&a.scene)?;
    let n = a.n_directions.or(setup.n_directions).unwrap_or(DEFAULT_DIRECTIONS);
    let dirs = Directions::equispaced(n)?;
    for w in submig::validate_scene(&setup.scene, &setup.frequency) {
        eprintln!("warning: {w}");
    }
    let mut msr = submig::assemble_msr(&setup.scene, &setup.frequency, &dirs);
    if let Some(snr) = a.snr_db {
        msr = submig::add_noise(&msr, snr, a.seed)?;
    }
    io::save_msr(&msr, &a.out)?;
    eprintln!("wrote {}", a.out.display());
    Ok(())
}

fn image(a: args::ImageArgs) -> CliResult<()> {
    let msr = input(&a.msr, io::load_msr::<f64>(&a.msr))?;
    let grid = grid(&a.grid)?;
    let dirs = input(&a.msr, Directions::equispaced(msr.size()))?;
    let mode = match (a.rank, a.rank_auto) {
        (Some(k), _) => RankMode::Fixed(k),
        (None, tau) => RankMode::Auto(tau.unwrap_or(spectral::DEFAULT_AUTO_THRESHOLD)),
    };
    let factors = submig::select_rank(submig::decompose(&msr)?, mode)?;
    let rank = factors.rank().ok_or(submig::Error::RankNotSelected)?;
    eprintln!("rank {rank} of {}", msr.size());
    let maps = a
        .eta
        .eta
        .iter()
        .map(|&eta| submig::image_grid(&grid, eta, &factors, &dirs))
        .collect::<submig::Result<Vec<_>>>()?;
    write_maps(&maps, &a.out, a.pgm.as_deref())
}

fn analytic(a: args::AnalyticArgs) -> CliResult<()> {
    let setup = load_setup(&a.scene)?;
    let grid = grid(&a.grid)?;
    let omega = setup.frequency.omega();
    let maps = a
        .eta
        .eta
        .iter()
        .map(|&eta| submig::analytic_image_grid(&grid, eta, &setup.scene, omega))
        .collect::<submig::Result<Vec<_>>>()?;
    write_maps(&maps, &a.out, a.pgm.as_deref())
}

fn compare(a: args::CompareArgs) -> CliResult<()> {
    let first = input(&a.first, io::load_image::<f64>(&a.first))?;
    let second = input(&a.second, io::load_image::<f64>(&a.second))?;
    let c = submig::compare_images(&first, &second)?;
    let fmt = io::fmt17::<f64>;
    let text = format!(
        "max_abs_diff {}\nrmse {}\nargmax_first {} {}\nargmax_second {} {}\n",
        fmt(c.max_abs_diff),
        fmt(c.rmse),
        fmt(c.argmax_a.x),
        fmt(c.argmax_a.y),
        fmt(c.argmax_b.x),
        fmt(c.argmax_b.y),
    );
    emit(a.out.as_deref(), &text)
}

fn peaks(a: args::PeaksArgs) -> CliResult<()> {
    let map = input(&a.image, io::load_image::<f64>(&a.image))?;
    let found = submig::extract_peaks(&map, a.threshold, a.min_separation)?;
    let mut buf = Vec::new();
    io::write_peaks(&found, &mut buf)?;
    emit(a.out.as_deref(), &String::from_utf8_lossy(&buf))
}

fn predict(a: args::PredictArgs) -> CliResult<()> {
    let setup = load_setup(&a.scene)?;
    let omega = setup.frequency.omega();
    let mut text = String::new();
    for &eta in &a.eta.eta {
        if !(eta.is_finite() && eta > 0.0) {
            return Err(Failure::Usage(format!("test frequency must be positive, got {eta}")));
        }
        let _ = writeln!(text, "# eta={}", io::fmt17(eta));
        for z in submig::predict_peaks(&setup.scene, omega, eta) {
            let _ = writeln!(text, "{} {}", io::fmt17(z.x), io::fmt17(z.y));
        }
    }
    emit(a.out.as_deref(), &text)
}
