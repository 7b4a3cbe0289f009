//! Turning flags into grids, plans, fields and kernel specs.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use hyperconv::approach_a::{KernelSpecA, PresetId, DEFAULT_K_MAX};
use hyperconv::gft::{read_clff, write_clff};
use hyperconv::qft_image::{encode_rgb, read_ppm, ColorBasis, RgbImage};
use hyperconv::{AlgebraDim, Error, Field64, GridMode, Grid64, Plan64, Result, Root64};

use crate::GridArgs;

pub fn parse_mode(text: &str) -> Result<GridMode> {
    match text {
        "periodic" => Ok(GridMode::Periodic),
        "calibrated" => Ok(GridMode::Calibrated),
        other => Err(Error::Parse(format!("unknown grid mode {other:?} (periodic | calibrated)"))),
    }
}

pub fn grid(args: &GridArgs, m: usize) -> Result<Grid64> {
    Grid64::cube(m, args.n, parse_mode(&args.mode)?, args.delta)
}

/// Comma-separated root expressions, each validated to square to -1.
pub fn parse_roots(dim: AlgebraDim, text: &str) -> Result<Vec<Root64>> {
    text.split(',').map(|s| Root64::parse(dim, s.trim())).collect()
}

/// Default roots per algebra: `e1, e2` for the quaternion case, the three
/// basis bivectors for `m = 3`, the generators otherwise.
pub fn default_roots(dim: AlgebraDim) -> Vec<Root64> {
    match dim.m() {
        3 => parse_roots(dim, "e12,e23,e13").expect("bivectors square to -1"),
        m => (0..m).map(|k| Root64::generator(dim, k)).collect(),
    }
}

pub fn default_split(m: usize) -> usize {
    m.div_ceil(2)
}

/// Plan from `--plan`, `--roots` and `--split` on `grid`.
pub fn plan(args: &GridArgs, grid: Grid64) -> Result<Plan64> {
    let m = grid.ndim();
    let dim = AlgebraDim::new(m)?;
    let roots = match &args.roots {
        Some(text) => parse_roots(dim, text)?,
        None => default_roots(dim),
    };
    if roots.len() != m {
        return Err(Error::DimensionMismatch(format!("{} roots for m = {m}", roots.len())));
    }
    let split = match args.plan.as_str() {
        "qft" => {
            if m != 2 {
                return Err(Error::DimensionMismatch("--plan qft needs m = 2".into()));
            }
            if args.split.is_some_and(|s| s != 1) {
                return Err(Error::Parse("--plan qft has split 1".into()));
            }
            1
        }
        "gft" => args.split.unwrap_or_else(|| default_split(m)),
        other => return Err(Error::Parse(format!("unknown plan {other:?} (qft | gft)"))),
    };
    if split > m {
        return Err(Error::DimensionMismatch(format!("split {split} exceeds m = {m}")));
    }
    Plan64::new(grid, roots[..split].to_vec(), roots[split..].to_vec())
}

/// Algebra dimension from the flags: the root count when roots are given.
pub fn dimension(args: &GridArgs) -> Result<usize> {
    match (&args.roots, args.plan.as_str()) {
        (_, "qft") if args.m != 2 => Err(Error::DimensionMismatch("--plan qft needs m = 2".into())),
        (_, "qft") => Ok(2),
        (Some(text), _) => Ok(text.split(',').count()),
        (None, _) => Ok(args.m),
    }
}

fn is_ppm(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("ppm"))
}

pub fn read_image(path: &Path) -> Result<RgbImage> {
    read_ppm(BufReader::new(File::open(path)?))
}

/// Reads a CLFF field, or a PPM image encoded as pure quaternions.
pub fn read_field(path: &Path) -> Result<Field64> {
    if is_ppm(path) {
        return Ok(encode_rgb(&read_image(path)?, &ColorBasis::canonical())?.into_field());
    }
    read_clff(BufReader::new(File::open(path)?))
}

pub fn write_field(path: &Path, field: &Field64) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_clff(field, &mut w)?;
    w.flush()?;
    Ok(())
}

/// The `index`-th input field, or a seeded random one on `grid`.
pub fn input_field(inputs: &[std::path::PathBuf], index: usize, grid: &Grid64, seed: u64) -> Result<Field64> {
    match inputs.get(index) {
        Some(path) => read_field(path),
        None => Ok(Field64::random(grid.clone(), AlgebraDim::new(grid.ndim())?, seed + index as u64)),
    }
}

/// Comma-separated coordinates.
pub fn parse_vector(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad coordinate {s:?}")))
        })
        .collect()
}

pub fn kernel_spec(m: usize, preset: &str, alpha: Option<f64>, kmax: Option<usize>) -> Result<KernelSpecA<f64>> {
    KernelSpecA::preset(m, PresetId::parse(preset, alpha)?, kmax.unwrap_or(DEFAULT_K_MAX))
}

/// Writes `text` to `out` or standard output.
pub fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
