//! Identity checks behind `verify`: each one measures a gap between two
//! routes to the same quantity and compares it with a tolerance.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};

use hyperconv::approach_a::{
    convolve_radial, eigen_check, sphere_integral_check, translate_radial, translation_constant, ConvRoute,
    ConvVariant, Harmonic, KernelSpecA, Parity, PresetId,
};
use hyperconv::gft::{hermite_eigen_gap, multi_indices};
use hyperconv::mustard::{
    classical_convolve, mustard_convolve_direct, mustard_convolve_spectral, tau_convolve_by_summation,
    tau_convolve_expansion, translate_by_expansion, ExpansionRoute, TauSide,
};
use hyperconv::qft_image::{
    decode_rgb, encode_rgb, mustard_q, qft, qft_conv_theorem_rhs, qft_naive_product, quaternion_root, read_ppm,
    write_ppm, ColorBasis, RgbImage,
};
use hyperconv::special::{laguerre, RadialProfile};
use hyperconv::{AlgebraDim, Error, Field64, GridMode, Grid64, Multivector64, Plan64, Result, Root64};
use num_complex::Complex;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::setup::{default_roots, default_split};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    /// Passes when the gap is below the tolerance.
    Below,
    /// Passes when the gap exceeds the tolerance (counterexamples).
    Above,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub suite: &'static str,
    pub identity: String,
    pub gap: f64,
    pub tol: f64,
    pub bound: Bound,
}

impl Check {
    fn below(suite: &'static str, identity: impl Into<String>, gap: f64, tol: f64) -> Self {
        Self {
            suite,
            identity: identity.into(),
            gap,
            tol,
            bound: Bound::Below,
        }
    }

    fn above(suite: &'static str, identity: impl Into<String>, gap: f64, tol: f64) -> Self {
        Self {
            bound: Bound::Above,
            ..Self::below(suite, identity, gap, tol)
        }
    }

    pub fn passed(&self) -> bool {
        match self.bound {
            Bound::Below => self.gap < self.tol,
            Bound::Above => self.gap > self.tol,
        }
    }

    pub fn csv_line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        format!("{},{},{:.3e},{:.1e},{status}", self.suite, self.identity, self.gap, self.tol)
    }
}

pub const CSV_HEADER: &str = "suite,identity,gap,tol,status";

pub const SUITES: [&str; 6] = ["mustard", "translation", "eigen", "qft", "approach-a", "roundtrip"];

pub struct Options {
    pub m: usize,
    pub n: Option<usize>,
    pub seed: u64,
}

pub fn run_suite(name: &str, opts: &Options) -> Result<Vec<Check>> {
    match name {
        "mustard" => mustard(opts),
        "translation" => translation(opts),
        "eigen" => eigen(opts),
        "qft" => qft_suite(opts),
        "approach-a" => approach_a(),
        "roundtrip" => roundtrip(opts),
        "all" => {
            let mut out = Vec::new();
            for s in SUITES {
                out.extend(run_suite(s, opts)?);
            }
            Ok(out)
        }
        other => Err(Error::Parse(format!(
            "unknown suite {other:?} (one of {} or all)",
            SUITES.join(", ")
        ))),
    }
}

fn default_plan(m: usize, grid: Grid64) -> Result<Plan64> {
    let roots = default_roots(AlgebraDim::new(m)?);
    let split = default_split(m);
    Plan64::new(grid, roots[..split].to_vec(), roots[split..].to_vec())
}

fn random_pair(grid: &Grid64, seed: u64) -> Result<(Field64, Field64)> {
    let dim = AlgebraDim::new(grid.ndim())?;
    Ok((Field64::random(grid.clone(), dim, seed), Field64::random(grid.clone(), dim, seed + 1)))
}

fn mustard(opts: &Options) -> Result<Vec<Check>> {
    let grid = Grid64::cube(opts.m, opts.n.unwrap_or(16), GridMode::Periodic, 1.0)?;
    let plan = default_plan(opts.m, grid.clone())?;
    let (f, g) = random_pair(&grid, opts.seed)?;
    let spectral = mustard_convolve_spectral(&plan, &f, &g)?;
    let mut out = vec![Check::below(
        "mustard",
        "direct_vs_spectral",
        mustard_convolve_direct(&plan, &f, &g)?.rel_gap(&spectral),
        1e-10,
    )];
    let lhs = plan.forward(&spectral)?;
    let rhs = plan
        .forward(&f)?
        .pointwise_product(&plan.forward(&g)?)?
        .scale(Complex::new(plan.convolution_prefactor(), 0.0));
    out.push(Check::below("mustard", "convolution_theorem", lhs.rel_gap(&rhs), 1e-10));
    if opts.m == 2 {
        let (mu, nu) = (plan.root(0), plan.root(1));
        let q = mustard_q(mu, nu, &f, &g)?;
        out.push(Check::below("mustard", "sixteen_term_vs_spectral", q.rel_gap(&spectral), 1e-10));
    }
    // The summation route costs one transform per grid point.
    if grid.len() <= 1024 {
        for (side, name) in [
            (TauSide::TranslateSecond, "tau_right_expansion_vs_summation"),
            (TauSide::TranslateFirst, "tau_left_expansion_vs_summation"),
        ] {
            let closed = tau_convolve_expansion(&plan, &f, &g, side)?;
            let summed = tau_convolve_by_summation(&plan, &f, &g, side)?;
            out.push(Check::below("mustard", name, closed.rel_gap(&summed), 1e-10));
        }
    }
    Ok(out)
}

fn translation(opts: &Options) -> Result<Vec<Check>> {
    let n = opts.n.unwrap_or(16);
    let grid = Grid64::cube(opts.m, n, GridMode::Periodic, 1.0)?;
    let plan = default_plan(opts.m, grid.clone())?;
    let (f, _) = random_pair(&grid, opts.seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let y: Vec<f64> = (0..opts.m).map(|_| rng.random_range(0..n) as f64).collect();
    let spectral = plan.translate(&f, &y)?;
    let expanded = translate_by_expansion(&plan, &f, &y, ExpansionRoute::Grouped)?;
    let mut out = vec![Check::below(
        "translation",
        "closed_form_vs_spectral",
        expanded.rel_gap(&spectral),
        1e-10,
    )];
    if opts.m == 2 {
        let steps: Vec<isize> = y.iter().map(|&v| v as isize).collect();
        out.push(Check::below(
            "translation",
            "qft_is_circular_shift",
            spectral.max_gap(&f.shift(&steps)),
            1e-12,
        ));
    }
    Ok(out)
}

fn eigen(opts: &Options) -> Result<Vec<Check>> {
    let grid = Grid64::cube(opts.m, opts.n.unwrap_or(64), GridMode::Calibrated, 0.25)?;
    let plan = default_plan(opts.m, grid)?;
    let mut worst = 0.0f64;
    for j in multi_indices(opts.m, 6) {
        worst = worst.max(hermite_eigen_gap(&plan, &j)?);
    }
    Ok(vec![Check::below("eigen", "hermite_eigenvalues_order_6", worst, 1e-6)])
}

/// Field `a(x) root` with a seeded random scalar amplitude.
fn root_valued(grid: &Grid64, root: &Root64, seed: u64) -> Result<Field64> {
    let dim = root.dim();
    let amp = Field64::random(grid.clone(), dim, seed).planes()[0].clone();
    Ok(Field64::scalar(grid.clone(), dim, amp)?.left_mul(root.value()))
}

fn qft_suite(opts: &Options) -> Result<Vec<Check>> {
    let grid = Grid64::cube(2, opts.n.unwrap_or(16), GridMode::Periodic, 1.0)?;
    let dim = AlgebraDim::new(2)?;
    let s = 1.0 / 3f64.sqrt();
    let pairs = [
        ("orthogonal", Root64::generator(dim, 0), Root64::generator(dim, 1)),
        ("skew", quaternion_root(0.6, 0.8, 0.0)?, quaternion_root(s, -s, s)?),
    ];
    let (f, g) = random_pair(&grid, opts.seed)?;
    let mut out = Vec::new();
    for (name, mu, nu) in &pairs {
        let lhs = qft(mu, nu, &classical_convolve(&f, &g)?)?;
        let rhs = qft_conv_theorem_rhs(mu, nu, &f, &g)?;
        out.push(Check::below("qft", format!("convolution_theorem_{name}"), rhs.rel_gap(&lhs), 1e-10));
    }
    let (_, mu, nu) = &pairs[0];
    let fm = root_valued(&grid, mu, opts.seed + 2)?;
    let gn = root_valued(&grid, nu, opts.seed + 3)?;
    let lhs = qft(mu, nu, &classical_convolve(&fm, &gn)?)?;
    out.push(Check::below(
        "qft",
        "root_valued_full_sum",
        qft_conv_theorem_rhs(mu, nu, &fm, &gn)?.rel_gap(&lhs),
        1e-10,
    ));
    out.push(Check::above(
        "qft",
        "root_valued_naive_product_fails",
        qft_naive_product(mu, nu, &fm, &gn)?.rel_gap(&lhs),
        1e-2,
    ));
    Ok(out)
}

fn gaussian() -> RadialProfile<f64> {
    RadialProfile::real_fn(|r: f64| (-r * r / 2.0).exp())
}

pub fn approach_a_presets() -> Vec<(&'static str, KernelSpecA<f64>)> {
    [
        PresetId::Classical,
        PresetId::CliffordMinus,
        PresetId::FractionalCft {
            alpha: FRAC_PI_2,
            beta: FRAC_PI_4,
        },
    ]
    .into_iter()
    .map(|id| (id.name(), KernelSpecA::preset(4, id, 64).expect("valid preset")))
    .collect()
}

fn approach_a() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let radii: Vec<f64> = (1..=16).map(|i| 0.25 * i as f64).collect();
    for (name, spec) in approach_a_presets() {
        let mut worst = 0.0f64;
        for parity in [Parity::Even, Parity::Odd] {
            for j in 0..=3 {
                for k in 0..=1 {
                    worst = worst.max(eigen_check(&spec, parity, j, k, &radii)?.gap);
                }
            }
        }
        out.push(Check::below("approach-a", format!("eigenvalues_{name}"), worst, 1e-6));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(40);
    let point = |rng: &mut ChaCha8Rng| -> Vec<f64> {
        let v: Vec<f64> = (0..4).map(|_| rng.random_range(-1.0..1.0)).collect();
        let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        let radius = rng.random_range(0.0..2.0);
        v.iter().map(|c| c / norm * radius).collect()
    };
    for (angle, name) in [(FRAC_PI_2, "pi/2"), (FRAC_PI_3, "pi/3")] {
        let spec = KernelSpecA::preset(4, PresetId::FractionalCft { alpha: angle, beta: 0.6 }, 40)?;
        let (mut gap, mut wedge) = (0.0f64, 0.0f64);
        for _ in 0..10 {
            let (x, y) = (point(&mut rng), point(&mut rng));
            let r = rng.random_range(0.0..2.0);
            let c = sphere_integral_check(&spec, r, &x, &y, 40)?;
            gap = gap.max(c.gap);
            wedge = wedge.max(c.wedge);
        }
        out.push(Check::below("approach-a", format!("sphere_identity_{name}"), gap, 1e-6));
        out.push(Check::below("approach-a", format!("sphere_wedge_{name}"), wedge, 1e-8));
    }

    let classical = KernelSpecA::preset(4, PresetId::Classical, 64)?;
    let y = [0.8, -0.5, 0.3, 0.2];
    let mut xs = Vec::new();
    for i in 0..=8 {
        for t in 0..16 {
            let (rad, th) = (0.5 * i as f64, t as f64 * std::f64::consts::PI / 8.0);
            xs.push(vec![rad * th.cos(), rad * th.sin(), 0.0, 0.0]);
        }
    }
    let moved = translate_radial(&classical, &gaussian(), &y, &xs)?;
    let gap = xs.iter().zip(&moved).fold(0.0f64, |acc, (x, v)| {
        let d2: f64 = x.iter().zip(&y).map(|(a, b)| (a - b) * (a - b)).sum();
        acc.max((v - Complex::new((-d2 / 2.0).exp(), 0.0)).norm())
    });
    out.push(Check::below("approach-a", "translation_collapse", gap, 1e-6));
    out.push(Check::below(
        "approach-a",
        "translation_constant",
        (translation_constant(&classical) - Complex::new(1.0, 0.0)).norm(),
        1e-10,
    ));

    let laguerre_g = RadialProfile::real_fn(|r: f64| laguerre(2, 1.0, r * r) * (-r * r / 2.0).exp());
    let conv_radii: Vec<f64> = (0..7).map(|i| 0.5 * i as f64).collect();
    let variants = [
        (ConvVariant::CL, ConvRoute::Spectral),
        (ConvVariant::CR, ConvRoute::Spectral),
        (ConvVariant::L, ConvRoute::Direct),
        (ConvVariant::R, ConvRoute::Direct),
    ];
    for (g, gname) in [(gaussian(), "gaussian"), (laguerre_g, "laguerre")] {
        let mut worst = 0.0f64;
        for spec in [&classical, &approach_a_presets()[2].1] {
            let results: Vec<Vec<Complex<f64>>> = variants
                .iter()
                .map(|&(v, r)| convolve_radial(spec, &gaussian(), &g, Harmonic::M0, v, r, &conv_radii))
                .collect::<Result<_>>()?;
            for a in 0..results.len() {
                for b in a + 1..results.len() {
                    for (p, q) in results[a].iter().zip(&results[b]) {
                        worst = worst.max((p - q).norm());
                    }
                }
            }
        }
        out.push(Check::below("approach-a", format!("four_convolutions_{gname}"), worst, 1e-8));
    }
    Ok(out)
}

fn roundtrip(opts: &Options) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for m in [2, 3] {
        let grid = Grid64::cube(m, 16, GridMode::Periodic, 1.0)?;
        let plan = default_plan(m, grid.clone())?;
        let (f, _) = random_pair(&grid, opts.seed)?;
        let back = plan.inverse(&plan.forward(&f)?)?;
        out.push(Check::below("roundtrip", format!("periodic_m{m}"), back.rel_gap(&f), 1e-12));
    }
    let grid = Grid64::cube(2, 64, GridMode::Calibrated, 0.25)?;
    let plan = default_plan(2, grid.clone())?;
    let dim = AlgebraDim::new(2)?;
    let gauss = Field64::from_coord_fn(grid, dim, |x| {
        Multivector64::real(dim, (-(x[0] * x[0] + x[1] * x[1]) / 2.0).exp())
    });
    let back = plan.inverse(&plan.forward(&gauss)?)?;
    out.push(Check::below("roundtrip", "calibrated_gaussian", back.rel_gap(&gauss), 1e-8));

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (w, h) = (13, 9);
    let img = RgbImage::new(w, h, (0..3 * w * h).map(|_| rng.random_range(0..=255u8)).collect())?;
    let mut bytes = Vec::new();
    write_ppm(&img, &mut bytes)?;
    let read = read_ppm(&bytes[..])?;
    let basis = ColorBasis::canonical();
    let (decoded, _) = decode_rgb(&encode_rgb::<f64>(&read, &basis)?, &basis);
    let differing = decoded.data.iter().zip(&img.data).filter(|(a, b)| a != b).count();
    out.push(Check::below("roundtrip", "ppm_encode_decode_bytes", differing as f64, 0.5));
    Ok(out)
}
