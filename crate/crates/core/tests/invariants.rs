//! Randomized invariants over the algebra, the transforms and the I/O formats.

use hyperconv::clifford::{comm_split, exp_root};
use hyperconv::gft::{read_clff, write_clff, AxisPath};
use hyperconv::mustard::mustard_convolve_spectral;
use hyperconv::qft_image::{mustard_q, quaternion_root, read_ppm, write_ppm, RgbImage};
use hyperconv::{AlgebraDim, Field64, Grid64, GridMode, Multivector64, Plan64, Root64};
use num_complex::Complex;
use proptest::prelude::*;

fn multivector(m: usize) -> impl Strategy<Value = Multivector64> {
    let dim = AlgebraDim::new(m).unwrap();
    prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), dim.blades()).prop_map(move |c| {
        Multivector64::from_coeffs(dim, c.into_iter().map(|(re, im)| Complex::new(re, im)).collect()).unwrap()
    })
}

/// Unit vector roots `sum a_k e_k` with `|a| = 1`.
fn vector_root(m: usize) -> impl Strategy<Value = Root64> {
    prop::collection::vec(-1.0..1.0f64, m)
        .prop_filter("non-degenerate direction", |v| v.iter().map(|c| c * c).sum::<f64>() > 1e-2)
        .prop_map(move |v| {
            let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            let coords: Vec<f64> = v.iter().map(|c| c / n).collect();
            Root64::new(Multivector64::vector(AlgebraDim::new(m).unwrap(), &coords).unwrap()).unwrap()
        })
}

fn pure_quaternion_root() -> impl Strategy<Value = Root64> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
        .prop_filter("non-degenerate direction", |(a, b, c)| a * a + b * b + c * c > 1e-2)
        .prop_map(|(a, b, c)| {
            let n = (a * a + b * b + c * c).sqrt();
            quaternion_root(a / n, b / n, c / n).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn geometric_product_is_associative(
        (a, b, c) in (1usize..=4).prop_flat_map(|m| (multivector(m), multivector(m), multivector(m)))
    ) {
        let left = a.gp(&b).gp(&c);
        let right = a.gp(&b.gp(&c));
        prop_assert!(left.approx_eq(&right, 1e-12 * (1.0 + left.norm())));
    }

    #[test]
    fn root_exponentials_are_inverse(root in vector_root(3), theta in -10.0..10.0f64) {
        let d = root.dim();
        let p = exp_root(&root, theta).gp(&exp_root(&root, -theta));
        prop_assert!(p.approx_eq(&Multivector64::one(d), 1e-13));
    }

    #[test]
    fn commutation_split_reassembles(a in multivector(3), root in vector_root(3)) {
        let (even, odd) = comm_split(&a, root.value()).unwrap();
        let b = root.value();
        prop_assert!((&even + &odd).approx_eq(&a, 1e-13));
        prop_assert!(even.gp(b).approx_eq(&b.gp(&even), 1e-12));
        prop_assert!(odd.gp(b).approx_eq(&(-&b.gp(&odd)), 1e-12));
    }

    #[test]
    fn multivector_json_round_trip(a in multivector(3)) {
        prop_assert_eq!(Multivector64::from_json(&a.to_json().unwrap()).unwrap(), a);
    }

    #[test]
    fn periodic_transform_round_trip_and_isometry(
        sizes in prop::collection::vec(2usize..=9, 2..=3),
        split_seed in any::<u8>(),
        seed in any::<u64>(),
    ) {
        let m = sizes.len();
        let grid = Grid64::periodic(&sizes).unwrap();
        let plan = Plan64::generators(grid.clone(), split_seed as usize % (m + 1)).unwrap();
        let f = Field64::random(grid, plan.dim(), seed);
        let spectrum = plan.forward(&f).unwrap();
        prop_assert!(plan.inverse(&spectrum).unwrap().rel_gap(&f) < 1e-12);
        prop_assert!((spectrum.norm() / f.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fast_and_naive_paths_agree(n in 2usize..=12, seed in any::<u64>()) {
        let grid = Grid64::periodic(&[n, 5]).unwrap();
        let plan = Plan64::generators(grid.clone(), 1).unwrap();
        let f = Field64::random(grid, plan.dim(), seed);
        let fast = plan.clone().with_path(AxisPath::Fast).forward(&f).unwrap();
        let naive = plan.with_path(AxisPath::Naive).forward(&f).unwrap();
        prop_assert!(fast.rel_gap(&naive) < 1e-12);
    }

    #[test]
    fn integer_quaternion_translation_is_a_shift(
        mu in pure_quaternion_root(),
        nu in pure_quaternion_root(),
        y in (0isize..8, 0isize..6),
        seed in any::<u64>(),
    ) {
        let grid = Grid64::periodic(&[8, 6]).unwrap();
        let plan = Plan64::qft(grid.clone(), mu, nu).unwrap();
        let f = Field64::random(grid, plan.dim(), seed);
        let moved = plan.translate(&f, &[y.0 as f64, y.1 as f64]).unwrap();
        prop_assert!(moved.rel_gap(&f.shift(&[y.0, y.1])) < 1e-12);
    }

    #[test]
    fn sixteen_term_formula_matches_spectral_route(
        mu in pure_quaternion_root(),
        nu in pure_quaternion_root(),
        seed in any::<u64>(),
    ) {
        let grid = Grid64::periodic(&[6, 8]).unwrap();
        let plan = Plan64::qft(grid.clone(), mu.clone(), nu.clone()).unwrap();
        let f = Field64::random(grid.clone(), plan.dim(), seed);
        let g = Field64::random(grid, plan.dim(), seed.wrapping_add(1));
        let spectral = mustard_convolve_spectral(&plan, &f, &g).unwrap();
        prop_assert!(mustard_q(&mu, &nu, &f, &g).unwrap().rel_gap(&spectral) < 1e-11);
    }

    #[test]
    fn clff_round_trip_is_exact(sizes in prop::collection::vec(2usize..=5, 1..=3), seed in any::<u64>()) {
        let grid = Grid64::periodic(&sizes).unwrap();
        let f = Field64::random(grid, AlgebraDim::new(sizes.len()).unwrap(), seed);
        let mut bytes = Vec::new();
        write_clff(&f, &mut bytes).unwrap();
        let back: Field64 = read_clff(&bytes[..]).unwrap();
        prop_assert_eq!(back.max_gap(&f), 0.0);
        prop_assert_eq!(back.grid(), f.grid());
    }

    #[test]
    fn ppm_round_trip_is_exact(w in 1usize..=9, h in 1usize..=9, seed in any::<u8>()) {
        let data: Vec<u8> = (0..3 * w * h).map(|i| (i as u8).wrapping_mul(31).wrapping_add(seed)).collect();
        let img = RgbImage::new(w, h, data).unwrap();
        let mut bytes = Vec::new();
        write_ppm(&img, &mut bytes).unwrap();
        prop_assert_eq!(read_ppm(&bytes[..]).unwrap(), img);
    }
}

#[test]
fn calibrated_grids_round_trip_gaussians() {
    let grid = Grid64::cube(2, 48, GridMode::Calibrated, 0.3).unwrap();
    let plan = Plan64::generators(grid.clone(), 1).unwrap();
    let dim = plan.dim();
    let f = Field64::from_coord_fn(grid, dim, |x| Multivector64::real(dim, (-(x[0] * x[0] + x[1] * x[1])).exp()));
    assert!(plan.inverse(&plan.forward(&f).unwrap()).unwrap().rel_gap(&f) < 1e-10);
}
