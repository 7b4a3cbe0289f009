use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;
use std::process::{Command, Output};

use hyperconv::gft::read_clff;
use hyperconv::qft_image::{read_ppm, write_ppm, RgbImage};
use hyperconv::Field64;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperconv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Fresh scratch directory per test.
fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hyperconv-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_test_image(path: &PathBuf, w: usize, h: usize) -> RgbImage {
    let data = (0..3 * w * h).map(|i| ((i * 37 + 11) % 256) as u8).collect();
    let img = RgbImage::new(w, h, data).unwrap();
    write_ppm(&img, File::create(path).unwrap()).unwrap();
    img
}

#[test]
fn verify_mustard_reports_every_identity() {
    let out = run(&["verify", "--suite", "mustard", "--m", "2", "--n", "16", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("suite,identity,gap,tol,status"));
    let rows: Vec<_> = lines.collect();
    assert!(rows.len() >= 4);
    assert!(rows.iter().all(|r| r.starts_with("mustard,") && r.ends_with(",PASS")));
}

#[test]
fn verify_exits_two_when_a_tolerance_is_breached() {
    let out = run(&["verify", "--suite", "translation", "--n", "8", "--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains(",FAIL"));
}

#[test]
fn transform_writes_a_clff_spectrum_that_inverts() {
    let dir = scratch("transform");
    let img = dir.join("img.ppm");
    write_test_image(&img, 6, 4);
    let spec = dir.join("spec.clff");
    let back = dir.join("back.clff");
    let out = run(&["transform", "--plan", "qft", "--in", img.to_str().unwrap(), "--out", spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let spectrum: Field64 = read_clff(BufReader::new(File::open(&spec).unwrap())).unwrap();
    assert_eq!(spectrum.grid().sizes(), &[4, 6]);

    let out = run(&["transform", "--plan", "qft", "--inverse", "--in", spec.to_str().unwrap(), "--out", back.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let restored: Field64 = read_clff(BufReader::new(File::open(&back).unwrap())).unwrap();
    let original = hyperconv::qft_image::encode_rgb::<f64>(
        &read_ppm(BufReader::new(File::open(&img).unwrap())).unwrap(),
        &hyperconv::qft_image::ColorBasis::canonical(),
    )
    .unwrap()
    .into_field();
    assert!(restored.rel_gap(&original) < 1e-12);
}

#[test]
fn seeded_outputs_are_bit_identical() {
    let dir = scratch("determinism");
    let files: Vec<PathBuf> = (0..2).map(|i| dir.join(format!("conv{i}.clff"))).collect();
    for f in &files {
        let out = run(&[
            "convolve", "--variant", "mustard", "--m", "3", "--n", "6", "--seed", "42", "--out",
            f.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(std::fs::read(&files[0]).unwrap(), std::fs::read(&files[1]).unwrap());

    let other = dir.join("other.clff");
    run(&["convolve", "--m", "3", "--n", "6", "--seed", "43", "--out", other.to_str().unwrap()]);
    assert_ne!(std::fs::read(&files[0]).unwrap(), std::fs::read(&other).unwrap());
}

#[test]
fn bench_prints_a_timing_table() {
    let out = run(&["bench", "--op", "gft", "--n", "32", "--mode", "fast,naive", "--reps", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(text.lines().next(), Some("op,m,n,path,ms,speedup,max_gap"));
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][3], "fast");
    assert_eq!(rows[1][3], "naive");
    assert_eq!(rows[1][5], "1.00");
    assert!(rows[1][6].parse::<f64>().unwrap() < 1e-10);
}

#[test]
fn filter_keeps_the_image_shape() {
    let dir = scratch("filter");
    let img = dir.join("in.ppm");
    write_test_image(&img, 8, 5);
    for spec in ["lowpass:1.5", "highpass:1.5", "phase"] {
        let result = dir.join("out.ppm");
        let out = run(&["filter", "--in", img.to_str().unwrap(), "--out", result.to_str().unwrap(), "--filter", spec]);
        assert_eq!(out.status.code(), Some(0), "{spec}: {}", String::from_utf8_lossy(&out.stderr));
        let filtered = read_ppm(BufReader::new(File::open(&result).unwrap())).unwrap();
        assert_eq!((filtered.width, filtered.height), (8, 5));
    }
}

#[test]
fn radial_convolution_variants_agree() {
    let tables: Vec<String> = ["cl", "cr", "l", "r"]
        .iter()
        .map(|v| {
            let out = run(&["convolve", "--variant", v, "--preset", "classical", "--profile", "laguerre"]);
            assert_eq!(out.status.code(), Some(0), "{v}: {}", String::from_utf8_lossy(&out.stderr));
            stdout(&out)
        })
        .collect();
    let values = |t: &str| -> Vec<f64> {
        t.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect()
    };
    let reference = values(&tables[0]);
    for t in &tables[1..] {
        for (a, b) in values(t).iter().zip(&reference) {
            assert!((a - b).abs() < 1e-8);
        }
    }
}

#[test]
fn presets_lists_and_prints_coefficients() {
    let list = stdout(&run(&["presets"]));
    for name in ["classical", "clifford_minus", "fractional_cft"] {
        assert!(list.contains(name));
    }
    let table = stdout(&run(&["presets", "--preset", "fractional_cft:0.3", "--alpha", "1.0", "--kmax", "4"]));
    assert_eq!(table.lines().count(), 6);
}

#[test]
fn invalid_input_exits_one() {
    for args in [
        vec!["transform", "--bogus"],
        vec!["transform", "--plan", "qft", "--m", "3", "--out", "/dev/null"],
        vec!["transform", "--roots", "e1,e1e1", "--out", "/dev/null"],
        vec!["verify", "--suite", "nonsense"],
        vec!["filter", "--in", "/nonexistent.ppm", "--out", "/dev/null"],
        vec!["translate", "--shift", "1,x"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "--help"]).status.code(), Some(0));
}
