//! Text formats for MSR matrices, image maps and peak lists, plus ASCII PGM
//! export. Floats are written with 17 significant digits.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::forward::MsrMatrix;
use crate::imaging::{GridSpec, ImageMap, ImageSource, Peak};
use crate::point::Point2;
use crate::real::Real;

/// Scientific notation with 17 significant digits.
pub fn fmt17<T: Real>(value: T) -> String {
    format!("{value:.16e}")
}

fn parse_float<T: Real>(kind: &'static str, line: usize, token: &str) -> Result<T> {
    let v: f64 = token
        .parse()
        .map_err(|_| Error::format(kind, line, format!("`{token}` is not a number")))?;
    Ok(T::lit(v))
}

fn parse_usize(kind: &'static str, line: usize, token: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| Error::format(kind, line, format!("`{token}` is not a count")))
}

/// Extracts `value` from a `key=value` header token.
fn keyed<'a>(kind: &'static str, line: usize, token: Option<&'a str>, key: &str) -> Result<&'a str> {
    token
        .and_then(|t| t.strip_prefix(key)?.strip_prefix('='))
        .ok_or_else(|| Error::format(kind, line, format!("expected `{key}=...`")))
}

fn data_lines<R: BufRead>(reader: R) -> impl Iterator<Item = (usize, std::io::Result<String>)> {
    reader.lines().enumerate().map(|(k, l)| (k + 1, l))
}

pub fn write_msr<T: Real, W: Write>(msr: &MsrMatrix<T>, mut out: W) -> Result<()> {
    let n = msr.size();
    writeln!(
        out,
        "# msr N={n} omega={} noisy={}",
        fmt17(msr.omega()),
        u8::from(msr.is_noisy())
    )?;
    let entries = msr.entries();
    for j in 0..n {
        let row: Vec<String> = (0..n)
            .flat_map(|l| {
                let z = entries[(j, l)];
                [fmt17(z.re), fmt17(z.im)]
            })
            .collect();
        writeln!(out, "{}", row.join(" "))?;
    }
    Ok(())
}

pub fn read_msr<T: Real, R: BufRead>(reader: R) -> Result<MsrMatrix<T>> {
    const KIND: &str = "MSR";
    let mut lines = data_lines(reader);
    let (_, header) = lines.next().ok_or_else(|| Error::format(KIND, 1, "empty file"))?;
    let header = header?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("#") || tokens.next() != Some("msr") {
        return Err(Error::format(KIND, 1, "header must start with `# msr`"));
    }
    let n = parse_usize(KIND, 1, keyed(KIND, 1, tokens.next(), "N")?)?;
    let omega: T = parse_float(KIND, 1, keyed(KIND, 1, tokens.next(), "omega")?)?;
    let noisy = match keyed(KIND, 1, tokens.next(), "noisy")? {
        "0" => false,
        "1" => true,
        other => return Err(Error::format(KIND, 1, format!("noisy flag must be 0 or 1, got `{other}`"))),
    };
    if tokens.next().is_some() {
        return Err(Error::format(KIND, 1, "trailing header fields"));
    }
    if n == 0 {
        return Err(Error::format(KIND, 1, "N must be positive"));
    }

    let mut entries = DMatrix::zeros(n, n);
    let mut rows = 0;
    for (line_no, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        if rows == n {
            return Err(Error::format(KIND, line_no, format!("more than N={n} data rows")));
        }
        let values = line
            .split_whitespace()
            .map(|t| parse_float::<T>(KIND, line_no, t))
            .collect::<Result<Vec<_>>>()?;
        if values.len() != 2 * n {
            return Err(Error::format(
                KIND,
                line_no,
                format!("expected {} values, found {}", 2 * n, values.len()),
            ));
        }
        for l in 0..n {
            entries[(rows, l)] = Complex::new(values[2 * l], values[2 * l + 1]);
        }
        rows += 1;
    }
    if rows != n {
        return Err(Error::format(KIND, rows + 2, format!("expected {n} data rows, found {rows}")));
    }
    MsrMatrix::from_entries(entries, omega, noisy)
}

pub fn write_image<T: Real, W: Write>(image: &ImageMap<T>, mut out: W) -> Result<()> {
    let g = image.grid();
    writeln!(
        out,
        "# image nx={} ny={} eta={} source={}",
        g.nx,
        g.ny,
        fmt17(image.eta()),
        image.source().as_str()
    )?;
    writeln!(
        out,
        "# bounds {} {} {} {}",
        fmt17(g.x_min),
        fmt17(g.x_max),
        fmt17(g.y_min),
        fmt17(g.y_max)
    )?;
    for j in 0..g.ny {
        let row: Vec<String> = image.row(j).iter().map(|v| fmt17(*v)).collect();
        writeln!(out, "{}", row.join(" "))?;
    }
    Ok(())
}

pub fn read_image<T: Real, R: BufRead>(reader: R) -> Result<ImageMap<T>> {
    const KIND: &str = "image";
    let mut lines = data_lines(reader);
    let header = lines.next().ok_or_else(|| Error::format(KIND, 1, "empty file"))?.1?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("#") || tokens.next() != Some("image") {
        return Err(Error::format(KIND, 1, "header must start with `# image`"));
    }
    let nx = parse_usize(KIND, 1, keyed(KIND, 1, tokens.next(), "nx")?)?;
    let ny = parse_usize(KIND, 1, keyed(KIND, 1, tokens.next(), "ny")?)?;
    let eta: T = parse_float(KIND, 1, keyed(KIND, 1, tokens.next(), "eta")?)?;
    let source: ImageSource = keyed(KIND, 1, tokens.next(), "source")?
        .parse()
        .map_err(|e: Error| Error::format(KIND, 1, e.to_string()))?;
    if tokens.next().is_some() {
        return Err(Error::format(KIND, 1, "trailing header fields"));
    }

    let bounds = lines
        .next()
        .ok_or_else(|| Error::format(KIND, 2, "missing bounds line"))?
        .1?;
    let mut tokens = bounds.split_whitespace();
    if tokens.next() != Some("#") || tokens.next() != Some("bounds") {
        return Err(Error::format(KIND, 2, "second line must start with `# bounds`"));
    }
    let b = tokens
        .map(|t| parse_float::<T>(KIND, 2, t))
        .collect::<Result<Vec<_>>>()?;
    let [x_min, x_max, y_min, y_max] = b[..] else {
        return Err(Error::format(KIND, 2, "bounds need exactly four values"));
    };
    let grid = GridSpec::new(x_min, x_max, y_min, y_max, nx, ny)
        .map_err(|e| Error::format(KIND, 2, e.to_string()))?;

    let mut values = Vec::with_capacity(grid.len());
    let mut rows = 0;
    for (line_no, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        if rows == ny {
            return Err(Error::format(KIND, line_no, format!("more than ny={ny} rows")));
        }
        let before = values.len();
        for t in line.split_whitespace() {
            values.push(parse_float::<T>(KIND, line_no, t)?);
        }
        if values.len() - before != nx {
            return Err(Error::format(
                KIND,
                line_no,
                format!("expected {nx} values, found {}", values.len() - before),
            ));
        }
        rows += 1;
    }
    if rows != ny {
        return Err(Error::format(KIND, rows + 3, format!("expected {ny} rows, found {rows}")));
    }
    ImageMap::new(grid, values, eta, source).map_err(|e| Error::format(KIND, 3, e.to_string()))
}

/// One `x y value` line per peak.
pub fn write_peaks<T: Real, W: Write>(peaks: &[Peak<T>], mut out: W) -> Result<()> {
    for p in peaks {
        writeln!(out, "{} {} {}", fmt17(p.location.x), fmt17(p.location.y), fmt17(p.value))?;
    }
    Ok(())
}

pub fn read_peaks<T: Real, R: BufRead>(reader: R) -> Result<Vec<(Point2<T>, T)>> {
    const KIND: &str = "peaks";
    let mut out = Vec::new();
    for (line_no, line) in data_lines(reader) {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let v = line
            .split_whitespace()
            .map(|t| parse_float::<T>(KIND, line_no, t))
            .collect::<Result<Vec<_>>>()?;
        let [x, y, value] = v[..] else {
            return Err(Error::format(KIND, line_no, "expected `x y value`"));
        };
        out.push((Point2::new(x, y), value));
    }
    Ok(out)
}

/// ASCII P2 grayscale map scaled by the global maximum. The first raster
/// row is the top of the window (largest `y`).
pub fn write_pgm<T: Real, W: Write>(image: &ImageMap<T>, mut out: W) -> Result<()> {
    let g = image.grid();
    let max = image.max_value();
    writeln!(out, "P2")?;
    writeln!(out, "{} {}", g.nx, g.ny)?;
    writeln!(out, "255")?;
    for j in (0..g.ny).rev() {
        let row: Vec<String> = image
            .row(j)
            .iter()
            .map(|v| {
                let level = if max > T::zero() {
                    (*v / max * T::lit(255.0)).round().to_f64_lossy().clamp(0.0, 255.0)
                } else {
                    0.0
                };
                format!("{}", level as u8)
            })
            .collect();
        writeln!(out, "{}", row.join(" "))?;
    }
    Ok(())
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn open(path: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(File::open(path)?))
}

pub fn save_msr<T: Real>(msr: &MsrMatrix<T>, path: impl AsRef<Path>) -> Result<()> {
    let mut w = create(path.as_ref())?;
    write_msr(msr, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn load_msr<T: Real>(path: impl AsRef<Path>) -> Result<MsrMatrix<T>> {
    read_msr(open(path.as_ref())?)
}

pub fn save_image<T: Real>(image: &ImageMap<T>, path: impl AsRef<Path>) -> Result<()> {
    let mut w = create(path.as_ref())?;
    write_image(image, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn load_image<T: Real>(path: impl AsRef<Path>) -> Result<ImageMap<T>> {
    read_image(open(path.as_ref())?)
}

pub fn save_peaks<T: Real>(peaks: &[Peak<T>], path: impl AsRef<Path>) -> Result<()> {
    let mut w = create(path.as_ref())?;
    write_peaks(peaks, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn save_pgm<T: Real>(image: &ImageMap<T>, path: impl AsRef<Path>) -> Result<()> {
    let mut w = create(path.as_ref())?;
    write_pgm(image, &mut w)?;
    w.flush()?;
    Ok(())
}
