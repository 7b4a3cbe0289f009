//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit when a
//! counted criterion fails. Built with `harness = false` so the report is
//! printed by `cargo test` without `--nocapture`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};
use std::process::{Command, ExitCode};
use std::time::Instant;

use hyperconv::approach_a::{
    convolve_radial, eigen_check, sphere_integral_check, translate_radial, translation_constant, ConvRoute,
    ConvVariant, Harmonic, KernelSpecA, Parity, PresetId,
};
use hyperconv::gft::{hermite_eigen_gap, multi_indices};
use hyperconv::mustard::{
    classical_convolve, mustard_convolve_direct, mustard_convolve_spectral, translate_by_expansion, ExpansionRoute,
};
use hyperconv::qft_image::{
    decode_rgb, encode_rgb, qft, qft_conv_theorem_rhs, qft_naive_product, quaternion_root, read_ppm, write_ppm,
    ColorBasis, RgbImage,
};
use hyperconv::special::{laguerre, RadialProfile};
use hyperconv::{AlgebraDim, Field64, Grid64, GridMode, Multivector64, Plan64, Root64};
use num_complex::Complex;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEEDS: u64 = 20;

struct Line {
    id: &'static str,
    what: String,
    pass: bool,
    /// Reported but excluded from the exit status.
    waived: bool,
}

struct Report(Vec<Line>);

impl Report {
    fn below(&mut self, id: &'static str, what: &str, gap: f64, tol: f64) {
        self.push(id, format!("{what}: gap {gap:.3e} < {tol:.0e}"), gap < tol, false);
    }

    fn above(&mut self, id: &'static str, what: &str, gap: f64, tol: f64) {
        self.push(id, format!("{what}: gap {gap:.3e} > {tol:.0e}"), gap > tol, false);
    }

    fn push(&mut self, id: &'static str, what: String, pass: bool, waived: bool) {
        let status = if pass { "PASS" } else { "FAIL" };
        let note = if waived { " (not counted, see below)" } else { "" };
        println!("[{status}] {id:<3} {what}{note}");
        self.0.push(Line { id, what, pass, waived });
    }
}

fn plan(m: usize, grid: Grid64) -> Plan64 {
    let dim = AlgebraDim::new(m).unwrap();
    let roots: Vec<Root64> = match m {
        2 => vec![Root64::generator(dim, 0), Root64::generator(dim, 1)],
        _ => ["e12", "e23", "e13"].iter().map(|s| Root64::parse(dim, s).unwrap()).collect(),
    };
    // Quaternion plan: mu on the left, nu on the right. m = 3: two left roots.
    let split = m - 1;
    Plan64::new(grid, roots[..split].to_vec(), roots[split..].to_vec()).unwrap()
}

fn criterion_1(r: &mut Report) {
    let start = Instant::now();
    for m in [2, 3] {
        let grid = Grid64::cube(m, 16, GridMode::Periodic, 1.0).unwrap();
        let plan = plan(m, grid.clone());
        let dim = plan.dim();
        let mut worst = 0.0f64;
        for seed in 0..SEEDS {
            let f = Field64::random(grid.clone(), dim, 2 * seed);
            let g = Field64::random(grid.clone(), dim, 2 * seed + 1);
            let direct = mustard_convolve_direct(&plan, &f, &g).unwrap();
            let spectral = mustard_convolve_spectral(&plan, &f, &g).unwrap();
            worst = worst.max(direct.rel_gap(&spectral));
        }
        r.below("1", &format!("direct vs spectral convolution, m = {m}, {SEEDS} seeds, 16^{m}"), worst, 1e-10);
    }
    let secs = start.elapsed().as_secs_f64();
    r.push("1", format!("runtime {secs:.1} s < 60 s"), secs < 60.0, false);
}

fn criterion_2(r: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for m in [2, 3] {
        let grid = Grid64::cube(m, 16, GridMode::Periodic, 1.0).unwrap();
        let plan = plan(m, grid.clone());
        let (mut worst, mut shift_gap) = (0.0f64, 0.0f64);
        for seed in 0..SEEDS {
            let f = Field64::random(grid.clone(), plan.dim(), 100 + seed);
            let y: Vec<f64> = (0..m).map(|_| rng.random_range(0..16) as f64).collect();
            let spectral = plan.translate(&f, &y).unwrap();
            let closed = translate_by_expansion(&plan, &f, &y, ExpansionRoute::Grouped).unwrap();
            worst = worst.max(closed.rel_gap(&spectral));
            if m == 2 {
                let steps: Vec<isize> = y.iter().map(|&v| v as isize).collect();
                shift_gap = shift_gap.max(spectral.rel_gap(&f.shift(&steps)));
            }
        }
        r.below("2", &format!("translation closed form vs spectral, m = {m}"), worst, 1e-10);
        if m == 2 {
            r.below("2", "quaternion translation vs circular shift", shift_gap, 1e-12);
        }
    }
}

fn criterion_3(r: &mut Report) {
    for m in [2, 3] {
        let grid = Grid64::cube(m, 64, GridMode::Calibrated, 0.25).unwrap();
        let plan = plan(m, grid);
        let worst = multi_indices(m, 6)
            .iter()
            .map(|j| hermite_eigen_gap(&plan, j).unwrap())
            .fold(0.0f64, f64::max);
        r.below("3", &format!("Hermite eigenvalues, m = {m}, N = 64, order <= 6"), worst, 1e-6);
    }
}

/// `a(x) root` with a random scalar amplitude.
fn root_valued(grid: &Grid64, root: &Root64, seed: u64) -> Field64 {
    let amp = Field64::random(grid.clone(), root.dim(), seed).planes()[0].clone();
    Field64::scalar(grid.clone(), root.dim(), amp).unwrap().left_mul(root.value())
}

fn criterion_4(r: &mut Report) {
    let grid = Grid64::cube(2, 16, GridMode::Periodic, 1.0).unwrap();
    let dim = AlgebraDim::new(2).unwrap();
    let s = 1.0 / 3f64.sqrt();
    let pairs = [
        (Root64::generator(dim, 0), Root64::generator(dim, 1)),
        (quaternion_root(0.6, 0.8, 0.0).unwrap(), quaternion_root(s, -s, s).unwrap()),
    ];
    let mut worst = 0.0f64;
    for (mu, nu) in &pairs {
        for seed in 0..SEEDS {
            let f = Field64::random(grid.clone(), dim, 200 + 2 * seed);
            let g = Field64::random(grid.clone(), dim, 201 + 2 * seed);
            let lhs = qft(mu, nu, &classical_convolve(&f, &g).unwrap()).unwrap();
            worst = worst.max(qft_conv_theorem_rhs(mu, nu, &f, &g).unwrap().rel_gap(&lhs));
        }
    }
    r.below("4", "quaternion convolution theorem on random fields", worst, 1e-10);

    let (mu, nu) = &pairs[0];
    let naive_gap = |f: &Field64, g: &Field64| {
        let lhs = qft(mu, nu, &classical_convolve(f, g).unwrap()).unwrap();
        qft_naive_product(mu, nu, f, g).unwrap().rel_gap(&lhs)
    };
    let constant = |root: &Root64| Field64::from_index_fn(grid.clone(), dim, |_| root.value().clone());
    let literal = naive_gap(&constant(mu), &constant(nu));
    r.push(
        "4",
        format!("naive product fails on constant f = mu, g = nu: gap {literal:.3e} > 1e-2"),
        literal > 1e-2,
        true,
    );
    let f = root_valued(&grid, mu, 300);
    let g = root_valued(&grid, nu, 301);
    r.above("4", "naive product fails on f = a(x) mu, g = b(x) nu", naive_gap(&f, &g), 1e-2);
}

fn criterion_5(r: &mut Report) {
    let start = Instant::now();
    let radii: Vec<f64> = (1..=16).map(|i| 0.25 * i as f64).collect();
    for id in [
        PresetId::Classical,
        PresetId::CliffordMinus,
        PresetId::FractionalCft {
            alpha: FRAC_PI_2,
            beta: FRAC_PI_4,
        },
    ] {
        let spec = KernelSpecA::preset(4, id, 64).unwrap();
        let mut worst = 0.0f64;
        for parity in [Parity::Even, Parity::Odd] {
            for j in 0..=3 {
                for k in 0..=1 {
                    worst = worst.max(eigen_check(&spec, parity, j, k, &radii).unwrap().gap);
                }
            }
        }
        r.below("5", &format!("radial eigenvalues, {}, m = 4", id.name()), worst, 1e-6);
    }
    let secs = start.elapsed().as_secs_f64();
    r.push("5", format!("runtime {secs:.1} s < 30 s"), secs < 30.0, false);
}

fn criterion_6(r: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let point = |rng: &mut ChaCha8Rng| -> Vec<f64> {
        let v: Vec<f64> = (0..4).map(|_| rng.random_range(-1.0..1.0)).collect();
        let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        let radius = rng.random_range(0.0..=2.0);
        v.iter().map(|c| c / norm * radius).collect()
    };
    for (alpha, name) in [(FRAC_PI_2, "pi/2"), (FRAC_PI_3, "pi/3")] {
        let spec = KernelSpecA::preset(4, PresetId::FractionalCft { alpha, beta: 0.6 }, 40).unwrap();
        let (mut gap, mut wedge) = (0.0f64, 0.0f64);
        for _ in 0..SEEDS {
            let (x, y) = (point(&mut rng), point(&mut rng));
            let c = sphere_integral_check(&spec, rng.random_range(0.0..=2.0), &x, &y, 40).unwrap();
            gap = gap.max(c.gap);
            wedge = wedge.max(c.wedge);
        }
        r.below("6", &format!("sphere identity, alpha = {name}, K = 40"), gap, 1e-6);
        r.below("6", &format!("wedge part, alpha = {name}"), wedge, 1e-8);
    }
}

fn gaussian() -> RadialProfile<f64> {
    RadialProfile::real_fn(|r: f64| (-r * r / 2.0).exp())
}

fn criterion_7(r: &mut Report) {
    let spec = KernelSpecA::preset(4, PresetId::Classical, 64).unwrap();
    let y = [0.8, -0.5, 0.3, 0.2];
    let mut xs = Vec::new();
    for i in 0..=16 {
        for t in 0..24 {
            let (rad, th) = (0.25 * i as f64, t as f64 * PI / 12.0);
            xs.push(vec![rad * th.cos(), rad * th.sin(), 0.0, 0.0]);
        }
    }
    let moved = translate_radial(&spec, &gaussian(), &y, &xs).unwrap();
    let gap = xs.iter().zip(&moved).fold(0.0f64, |acc, (x, v)| {
        let d2: f64 = x.iter().zip(&y).map(|(a, b)| (a - b) * (a - b)).sum();
        acc.max((v - Complex::new((-d2 / 2.0).exp(), 0.0)).norm())
    });
    r.below("7", "classical translation of a Gaussian over a radius-4 disk", gap, 1e-6);
    let c = (translation_constant(&spec) - Complex::new(1.0, 0.0)).norm();
    r.below("7", "leading constant equals 1", c, 1e-10);
}

fn criterion_8(r: &mut Report) {
    let laguerre_g = RadialProfile::real_fn(|x: f64| laguerre(2, 1.0, x * x) * (-x * x / 2.0).exp());
    let radii: Vec<f64> = (0..7).map(|i| 0.5 * i as f64).collect();
    let variants = [
        (ConvVariant::CL, ConvRoute::Spectral),
        (ConvVariant::CR, ConvRoute::Spectral),
        (ConvVariant::L, ConvRoute::Direct),
        (ConvVariant::R, ConvRoute::Direct),
    ];
    let spec = KernelSpecA::preset(4, PresetId::Classical, 64).unwrap();
    for (g, name) in [(gaussian(), "Gaussian"), (laguerre_g, "Laguerre-weighted Gaussian")] {
        let results: Vec<Vec<Complex<f64>>> = variants
            .iter()
            .map(|&(v, route)| convolve_radial(&spec, &gaussian(), &g, Harmonic::M0, v, route, &radii).unwrap())
            .collect();
        let mut worst = 0.0f64;
        for a in 0..4 {
            for b in a + 1..4 {
                for (p, q) in results[a].iter().zip(&results[b]) {
                    worst = worst.max((p - q).norm());
                }
            }
        }
        r.below("8", &format!("four radial convolutions pairwise, Gaussian x {name}"), worst, 1e-8);
    }
}

fn criterion_9(r: &mut Report) {
    let mut worst = 0.0f64;
    for m in [2, 3] {
        let grid = Grid64::cube(m, 16, GridMode::Periodic, 1.0).unwrap();
        let plan = plan(m, grid.clone());
        for seed in 0..SEEDS {
            let f = Field64::random(grid.clone(), plan.dim(), 900 + seed);
            worst = worst.max(plan.inverse(&plan.forward(&f).unwrap()).unwrap().rel_gap(&f));
        }
    }
    r.below("9", "periodic round trip, m = 2, 3", worst, 1e-12);

    let grid = Grid64::cube(2, 64, GridMode::Calibrated, 0.25).unwrap();
    let plan = plan(2, grid.clone());
    let dim = plan.dim();
    let sample = Field64::from_coord_fn(grid, dim, |x| {
        let e = (-(x[0] * x[0] + x[1] * x[1]) / 2.0).exp();
        let mut v = Multivector64::real(dim, e);
        v.coeffs_mut()[3] = Complex::new(x[0] * e, x[1] * e);
        v
    });
    let back = plan.inverse(&plan.forward(&sample).unwrap()).unwrap();
    r.below("9", "calibrated round trip on Schwartz samples", back.rel_gap(&sample), 1e-8);

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (w, h) = (17, 11);
    let img = RgbImage::new(w, h, (0..3 * w * h).map(|_| rng.random_range(0..=255u8)).collect()).unwrap();
    let mut bytes = Vec::new();
    write_ppm(&img, &mut bytes).unwrap();
    let basis = ColorBasis::canonical();
    let (decoded, _) = decode_rgb(&encode_rgb::<f64>(&read_ppm(&bytes[..]).unwrap(), &basis).unwrap(), &basis);
    let differing = decoded.data.iter().zip(&img.data).filter(|(a, b)| a != b).count();
    r.push("9", format!("PPM encode/decode: {differing} bytes differ"), differing == 0, false);
}

fn criterion_10(r: &mut Report) {
    let out = Command::new(env!("CARGO_BIN_EXE_hyperconv"))
        .args(["bench", "--op", "axis", "--n", "1024", "--m", "2", "--mode", "fast,naive", "--reps", "1"])
        .output()
        .expect("bench runs");
    assert!(out.status.success(), "bench failed: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let row = |path: &str| -> Vec<String> {
        text.lines()
            .map(|l| l.split(',').map(str::to_string).collect::<Vec<_>>())
            .find(|c| c.get(3).map(String::as_str) == Some(path))
            .expect("bench row")
    };
    let (fast, naive) = (row("fast"), row("naive"));
    let speedup: f64 = fast[5].parse().unwrap();
    let gap: f64 = naive[6].parse().unwrap();
    r.push(
        "10",
        format!("fast axis path {speedup:.0}x faster than direct sum (fast {} ms, naive {} ms), >= 20x", fast[4], naive[4]),
        speedup >= 20.0,
        false,
    );
    r.below("10", "fast and direct results agree", gap, 1e-10);
}

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let mut report = Report(Vec::new());
    let criteria: [fn(&mut Report); 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    for c in criteria {
        c(&mut report);
    }
    let waived: Vec<_> = report.0.iter().filter(|l| l.waived && !l.pass).collect();
    for l in &waived {
        println!(
            "note: criterion {} line '{}' is reported but not counted: constant fields have \
             only a zero-frequency component, where every kernel factor is 1, so the naive \
             product holds exactly for them. The root-valued line above is the working counterexample.",
            l.id, l.what
        );
    }
    let failed: Vec<_> = report.0.iter().filter(|l| !l.pass && !l.waived).collect();
    println!(
        "acceptance: {} lines, {} failed, {} reported but not counted",
        report.0.len(),
        failed.len(),
        waived.len()
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
