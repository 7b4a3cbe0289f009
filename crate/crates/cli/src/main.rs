//! `hyperconv` command line: transforms, convolutions, translations, image
//! filtering, identity checks and benchmarks.
//!
//! Exit status: 0 on success, 1 on invalid input, 2 when `verify` finds a
//! gap outside its tolerance.

mod bench;
mod setup;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hyperconv::approach_a::{convolve_radial, translate_radial, ConvRoute, ConvVariant, Harmonic, PresetId};
use hyperconv::mustard::{mustard_convolve_spectral, tau_convolve};
use hyperconv::qft_image::{
    directional_phase, filter_image, gaussian_lowpass, write_ppm, ColorBasis,
};
use hyperconv::special::{laguerre, RadialProfile};
use hyperconv::{AlgebraDim, Error, Field64, Result};
use num_complex::Complex;

#[derive(Parser, Debug)]
#[command(name = "hyperconv", version, about = "Clifford-valued Fourier transforms and convolutions")]
struct Cli {
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GridArgs {
    /// qft (m = 2, roots mu, nu) or gft (any roots).
    #[arg(long, default_value = "gft")]
    plan: String,
    /// Comma-separated roots of -1, e.g. `e12,0.6e1+0.8e2`.
    #[arg(long)]
    roots: Option<String>,
    /// Number of roots multiplied from the left.
    #[arg(long)]
    split: Option<usize>,
    /// periodic or calibrated.
    #[arg(long, default_value = "periodic")]
    mode: String,
    /// Points per axis.
    #[arg(long, default_value_t = 16)]
    n: usize,
    /// Spacing of calibrated grids.
    #[arg(long, default_value_t = 0.25)]
    delta: f64,
    /// Algebra dimension when no roots are given.
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Seed of generated input fields.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug, Clone)]
struct KernelArgs {
    /// Radial kernel preset: classical, clifford_minus or fractional_cft[:beta].
    #[arg(long)]
    preset: Option<String>,
    /// Kernel angle (fractional presets).
    #[arg(long)]
    alpha: Option<f64>,
    /// Series truncation of the radial kernel.
    #[arg(long)]
    kmax: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Forward (or inverse) transform of a CLFF field or PPM image.
    Transform {
        #[command(flatten)]
        grid: GridArgs,
        /// Input field (.clff) or image (.ppm); a random field when absent.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        inverse: bool,
    },
    /// Convolution of two fields or two radial profiles.
    Convolve {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        kernel: KernelArgs,
        /// mustard, tau, or a radial variant cl, cr, l, r.
        #[arg(long, default_value = "mustard")]
        variant: String,
        /// Input fields, given twice; random fields when absent.
        #[arg(long = "in")]
        inputs: Vec<PathBuf>,
        /// Second radial profile: gaussian or laguerre.
        #[arg(long, default_value = "gaussian")]
        profile: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generalized translation of a field, or of a radial Gaussian with --preset.
    Translate {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        kernel: KernelArgs,
        /// Comma-separated shift in coordinate units.
        #[arg(long)]
        shift: String,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Frequency-domain filter of a PPM image through the quaternion transform.
    Filter {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// lowpass:SIGMA, highpass:SIGMA, phase, or a CLFF multiplier file.
        #[arg(long, default_value = "lowpass:2")]
        filter: String,
        /// Roots mu, nu as pure quaternions in e1, e2, e12.
        #[arg(long, default_value = "e1,e2")]
        roots: String,
    },
    /// Checks identities and prints one CSV line per identity.
    Verify {
        /// mustard, translation, eigen, qft, approach-a, roundtrip or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Replaces every upper tolerance.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Times the FFT path against the direct sum.
    Bench {
        /// gft (full transform) or axis (one axis).
        #[arg(long, default_value = "gft")]
        op: String,
        #[arg(long, default_value_t = 256)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Comma-separated paths; speedups are relative to the slowest.
        #[arg(long, default_value = "fast,naive")]
        mode: String,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lists radial kernel presets, or prints one preset's coefficients.
    Presets {
        #[command(flatten)]
        kernel: KernelArgs,
        #[arg(long, default_value_t = 4)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Outcome {
    Done,
    Breach,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli.command) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Breach) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Transform {
            grid,
            input,
            out,
            inverse,
        } => transform(&grid, input, &out, inverse),
        Command::Convolve {
            grid,
            kernel,
            variant,
            inputs,
            profile,
            out,
        } => convolve(&grid, &kernel, &variant, &inputs, &profile, out.as_deref()),
        Command::Translate {
            grid,
            kernel,
            shift,
            input,
            out,
        } => translate(&grid, &kernel, &shift, input, out.as_deref()),
        Command::Filter {
            input,
            out,
            filter,
            roots,
        } => run_filter(&input, &out, &filter, &roots),
        Command::Verify {
            suite,
            m,
            n,
            seed,
            tol,
            out,
        } => run_verify(&suite, m, n, seed, tol, out.as_deref()),
        Command::Bench {
            op,
            n,
            m,
            mode,
            reps,
            seed,
            out,
        } => {
            let rows = bench::run(&op, m, n, &bench::parse_paths(&mode)?, reps, seed)?;
            let mut text = format!("{}\n", bench::CSV_HEADER);
            for row in rows {
                text.push_str(&row.csv_line());
                text.push('\n');
            }
            setup::emit(out.as_deref(), &text)?;
            Ok(Outcome::Done)
        }
        Command::Presets { kernel, m, out } => presets(&kernel, m, out.as_deref()),
    }
}

fn transform(args: &GridArgs, input: Option<PathBuf>, out: &std::path::Path, inverse: bool) -> Result<Outcome> {
    let m = setup::dimension(args)?;
    let field = match &input {
        Some(path) => setup::read_field(path)?,
        None => Field64::random(setup::grid(args, m)?, AlgebraDim::new(m)?, args.seed),
    };
    // An inverse takes a spectrum, which lives on the dual of the plan's grid.
    let grid = if inverse { field.grid().dual() } else { field.grid().clone() };
    let plan = setup::plan(args, grid)?;
    let result = if inverse { plan.inverse(&field)? } else { plan.forward(&field)? };
    setup::write_field(out, &result)?;
    Ok(Outcome::Done)
}

fn radial_csv(radii: &[f64], values: &[Complex<f64>]) -> String {
    let mut text = String::from("r,re,im\n");
    for (r, v) in radii.iter().zip(values) {
        text.push_str(&format!("{r},{:.15e},{:.15e}\n", v.re, v.im));
    }
    text
}

fn convolve(
    args: &GridArgs,
    kernel: &KernelArgs,
    variant: &str,
    inputs: &[PathBuf],
    profile: &str,
    out: Option<&std::path::Path>,
) -> Result<Outcome> {
    match variant {
        "mustard" | "tau" => {
            if inputs.len() > 2 {
                return Err(Error::Parse("convolve takes at most two --in fields".into()));
            }
            let m = setup::dimension(args)?;
            let grid = match inputs.first() {
                Some(path) => setup::read_field(path)?.grid().clone(),
                None => setup::grid(args, m)?,
            };
            let f = setup::input_field(inputs, 0, &grid, args.seed)?;
            let g = setup::input_field(inputs, 1, &grid, args.seed)?;
            let plan = setup::plan(args, grid)?;
            let h = if variant == "mustard" {
                mustard_convolve_spectral(&plan, &f, &g)?
            } else {
                tau_convolve(&plan, &f, &g)?
            };
            match out {
                Some(path) => setup::write_field(path, &h)?,
                None => println!("points,norm\n{},{:.15e}", h.len(), h.norm()),
            }
        }
        radial => {
            let v: ConvVariant = radial.parse()?;
            let route = match v {
                ConvVariant::CL | ConvVariant::CR => ConvRoute::Spectral,
                ConvVariant::L | ConvVariant::R => ConvRoute::Direct,
            };
            let spec = setup::kernel_spec(4, kernel.preset.as_deref().unwrap_or("classical"), kernel.alpha, kernel.kmax)?;
            let f = RadialProfile::real_fn(|r: f64| (-r * r / 2.0).exp());
            let g = match profile {
                "gaussian" => RadialProfile::real_fn(|r: f64| (-r * r / 2.0).exp()),
                "laguerre" => RadialProfile::real_fn(|r: f64| laguerre(2, 1.0, r * r) * (-r * r / 2.0).exp()),
                other => return Err(Error::Parse(format!("unknown profile {other:?} (gaussian | laguerre)"))),
            };
            let radii: Vec<f64> = (0..=8).map(|i| 0.5 * i as f64).collect();
            let h = convolve_radial(&spec, &f, &g, Harmonic::M0, v, route, &radii)?;
            setup::emit(out, &radial_csv(&radii, &h))?;
        }
    }
    Ok(Outcome::Done)
}

fn translate(
    args: &GridArgs,
    kernel: &KernelArgs,
    shift: &str,
    input: Option<PathBuf>,
    out: Option<&std::path::Path>,
) -> Result<Outcome> {
    let y = setup::parse_vector(shift)?;
    if let Some(preset) = &kernel.preset {
        let spec = setup::kernel_spec(y.len(), preset, kernel.alpha, kernel.kmax)?;
        let f = RadialProfile::real_fn(|r: f64| (-r * r / 2.0).exp());
        // Points along the shift direction through the origin.
        let ny = y.iter().map(|c| c * c).sum::<f64>().sqrt();
        let dir: Vec<f64> = if ny > 0.0 {
            y.iter().map(|c| c / ny).collect()
        } else {
            (0..y.len()).map(|k| if k == 0 { 1.0 } else { 0.0 }).collect()
        };
        let ts: Vec<f64> = (-8..=8).map(|i| 0.5 * i as f64).collect();
        let xs: Vec<Vec<f64>> = ts.iter().map(|&t| dir.iter().map(|d| d * t).collect()).collect();
        let values = translate_radial(&spec, &f, &y, &xs)?;
        let mut text = String::from("t,re,im\n");
        for (t, v) in ts.iter().zip(&values) {
            text.push_str(&format!("{t},{:.15e},{:.15e}\n", v.re, v.im));
        }
        setup::emit(out, &text)?;
        return Ok(Outcome::Done);
    }
    let m = y.len();
    let field = match &input {
        Some(path) => setup::read_field(path)?,
        None => Field64::random(setup::grid(args, m)?, AlgebraDim::new(m)?, args.seed),
    };
    let plan = setup::plan(args, field.grid().clone())?;
    let moved = plan.translate(&field, &y)?;
    match out {
        Some(path) => setup::write_field(path, &moved)?,
        None => println!("points,norm\n{},{:.15e}", moved.len(), moved.norm()),
    }
    Ok(Outcome::Done)
}

fn run_filter(input: &std::path::Path, out: &std::path::Path, filter: &str, roots: &str) -> Result<Outcome> {
    let img = setup::read_image(input)?;
    let dim = AlgebraDim::new(2)?;
    let parsed = setup::parse_roots(dim, roots)?;
    let [mu, nu] = <[_; 2]>::try_from(parsed).map_err(|_| Error::Parse("--roots needs mu,nu".into()))?;
    let grid = hyperconv::Grid64::periodic(&[img.height, img.width])?;
    let multiplier = match filter.split_once(':') {
        Some(("lowpass", s)) => gaussian_lowpass(&grid, parse_sigma(s)?),
        Some(("highpass", s)) => {
            let low = gaussian_lowpass(&grid, parse_sigma(s)?);
            let one = Field64::from_index_fn(grid.dual(), dim, |_| hyperconv::Multivector64::one(dim));
            one.sub(&low)?
        }
        None if filter == "phase" => directional_phase(&grid, &mu),
        _ => setup::read_field(std::path::Path::new(filter))?,
    };
    let (result, report) = filter_image(&img, &multiplier, &mu, &nu, &ColorBasis::canonical())?;
    let mut w = std::io::BufWriter::new(std::fs::File::create(out)?);
    write_ppm(&result, &mut w)?;
    println!(
        "scalar_residue,complex_residue,clamped\n{:.3e},{:.3e},{}",
        report.scalar_residue, report.complex_residue, report.clamped
    );
    Ok(Outcome::Done)
}

fn parse_sigma(text: &str) -> Result<f64> {
    match text.parse::<f64>() {
        Ok(s) if s > 0.0 => Ok(s),
        _ => Err(Error::Parse(format!("filter width {text:?} must be a positive number"))),
    }
}

fn run_verify(
    suite: &str,
    m: usize,
    n: Option<usize>,
    seed: u64,
    tol: Option<f64>,
    out: Option<&std::path::Path>,
) -> Result<Outcome> {
    let mut checks = verify::run_suite(suite, &verify::Options { m, n, seed })?;
    if let Some(t) = tol {
        for c in checks.iter_mut().filter(|c| c.bound == verify::Bound::Below) {
            c.tol = t;
        }
    }
    let mut text = format!("{}\n", verify::CSV_HEADER);
    for c in &checks {
        text.push_str(&c.csv_line());
        text.push('\n');
    }
    setup::emit(out, &text)?;
    if checks.iter().all(verify::Check::passed) {
        Ok(Outcome::Done)
    } else {
        Ok(Outcome::Breach)
    }
}

fn presets(kernel: &KernelArgs, m: usize, out: Option<&std::path::Path>) -> Result<Outcome> {
    let text = match &kernel.preset {
        Some(name) => setup::kernel_spec(m, name, kernel.alpha, kernel.kmax)?.coefficients_csv(),
        None => {
            let mut text = String::from("preset,angle\n");
            for id in [
                PresetId::Classical,
                PresetId::CliffordMinus,
                PresetId::FractionalCft {
                    alpha: kernel.alpha.unwrap_or(std::f64::consts::FRAC_PI_2),
                    beta: 0.0,
                },
            ] {
                text.push_str(&format!("{},{}\n", id.name(), id.angle()));
            }
            text
        }
    };
    setup::emit(out, &text)?;
    Ok(Outcome::Done)
}
