//! Convolutions attached to a two-sided transform: the Mustard product
//! `f * g = c F^-1(F(f) F(g))`, its expansion into classical convolutions of
//! reflected and root-multiplied fields, and the translation-based product
//! `int f(y) tau_y g(x) dy` in both of its evaluation routes.
//!
//! The expansions sum over admissible multi-indices `j` (a 4 x m bit array,
//! per axis one of the triples 000, 110, 101, 011 and a zero fourth row) and
//! reflection masks `phi`, `gamma`. The sign `c(j, phi, gamma)` is a product
//! of per-axis factors, so for each `j` it splits as `a_j(phi) b_j(gamma)`;
//! the grouped evaluators use that to form one classical convolution per `j`.

mod classical;

use num_complex::Complex;
use rayon::prelude::*;

pub use classical::classical_convolve;
use classical::{dft_planes, finish_convolution};

use crate::clifford::Multivector;
use crate::gft::{pointwise_product_into, GftPlan, GridMode, MultivectorField};
use crate::{Error, Result, Scalar};

/// Admissible multi-index, stored as one bitmask per row (bit `k` is axis `k`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndexJ {
    m: usize,
    rows: [usize; 4],
}

const TRIPLES: [[usize; 3]; 4] = [[0, 0, 0], [1, 1, 0], [1, 0, 1], [0, 1, 1]];

impl MultiIndexJ {
    /// Builds `j` from its four rows; fails unless every axis carries an
    /// admissible triple and the fourth row is zero.
    pub fn new(m: usize, rows: [usize; 4]) -> Result<Self> {
        let j = Self { m, rows };
        if rows[3] != 0 {
            return Err(Error::InvalidIndex("fourth row must vanish".into()));
        }
        for k in 0..m {
            let s = j.bit(0, k) + j.bit(1, k) + j.bit(2, k);
            if s != 0 && s != 2 {
                return Err(Error::InvalidIndex(format!("axis {k} has row sum {s}")));
            }
        }
        if rows.iter().any(|r| r >> m != 0) {
            return Err(Error::InvalidIndex(format!("bits beyond axis {m}")));
        }
        Ok(j)
    }

    /// All `4^m` admissible indices.
    pub fn all(m: usize) -> Vec<Self> {
        (0..1usize << (2 * m))
            .map(|code| {
                let mut rows = [0usize; 4];
                for k in 0..m {
                    let t = TRIPLES[(code >> (2 * k)) & 3];
                    for r in 0..3 {
                        rows[r] |= t[r] << k;
                    }
                }
                Self { m, rows }
            })
            .collect()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Bit of row `row` (0-based, rows 0..4) at axis `k`.
    pub fn bit(&self, row: usize, k: usize) -> usize {
        (self.rows[row] >> k) & 1
    }

    pub fn row(&self, row: usize) -> usize {
        self.rows[row]
    }
}

/// Reflection masks `phi` and `gamma`: bit `k` set negates coordinate `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ReflectionIndex {
    pub phi: usize,
    pub gamma: usize,
}

impl ReflectionIndex {
    /// All `4^m` pairs.
    pub fn all(m: usize) -> Vec<Self> {
        let n = 1usize << m;
        (0..n)
            .flat_map(|phi| (0..n).map(move |gamma| Self { phi, gamma }))
            .collect()
    }
}

/// `prod_k (-1)^((j[2 phi_k + gamma_k + 1, k] + 1)(delta(j1k + j2k + j3k) - 1))`
/// with the row selector counted from 1 and `delta(0) = 1`, `delta(s) = 0` otherwise.
pub fn sign_c(j: &MultiIndexJ, r: ReflectionIndex) -> Result<i32> {
    MultiIndexJ::new(j.m, j.rows)?;
    let mut exponent = 0i32;
    for k in 0..j.m {
        let sel = 2 * ((r.phi >> k) & 1) + ((r.gamma >> k) & 1);
        let picked = j.bit(sel, k) as i32;
        let sum = j.bit(0, k) + j.bit(1, k) + j.bit(2, k);
        let delta = i32::from(sum == 0);
        exponent += (picked + 1) * (delta - 1);
    }
    Ok(if exponent.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// Every `(j, phi, gamma, c)` term of the expansion, `16^m` in total.
pub fn expansion_terms(m: usize) -> Vec<(MultiIndexJ, ReflectionIndex, i32)> {
    let pairs = ReflectionIndex::all(m);
    MultiIndexJ::all(m)
        .into_iter()
        .flat_map(|j| {
            pairs
                .iter()
                .map(move |&r| (j, r, sign_c(&j, r).expect("enumerated indices are admissible")))
        })
        .collect()
}

/// Splits `c(j, ., .)` as `a(phi) b(gamma)` with `a(phi) = c(j, phi, 0) c(j, 0, 0)`
/// and `b(gamma) = c(j, 0, gamma)`, checking the split on every pair.
#[allow(clippy::needless_range_loop)]
pub fn sign_factors(j: &MultiIndexJ) -> (Vec<i32>, Vec<i32>) {
    let n = 1usize << j.m;
    let c = |phi, gamma| sign_c(j, ReflectionIndex { phi, gamma }).expect("admissible");
    let a: Vec<i32> = (0..n).map(|phi| c(phi, 0) * c(0, 0)).collect();
    let b: Vec<i32> = (0..n).map(|gamma| c(0, gamma)).collect();
    for phi in 0..n {
        for gamma in 0..n {
            assert_eq!(c(phi, gamma), a[phi] * b[gamma], "sign does not factor");
        }
    }
    (a, b)
}

/// Ordered product of `(+/- i_k)^bit` over the listed axes.
fn root_power_product<T: Scalar>(plan: &GftPlan<T>, axes: impl Iterator<Item = usize>, bits: usize, negate: bool) -> Multivector<T> {
    let mut acc = Multivector::one(plan.dim());
    for k in axes {
        if (bits >> k) & 1 == 1 {
            let r = plan.root(k).value();
            acc = if negate { acc.gp(&-r) } else { acc.gp(r) };
        }
    }
    acc
}

/// Constant factors around `f^phi` and `g^gamma` in the Mustard expansion:
/// `(A f^phi B) * (C g^gamma D)`.
pub fn mustard_operands<T: Scalar>(plan: &GftPlan<T>, j: &MultiIndexJ) -> [Multivector<T>; 4] {
    let (mu, m) = (plan.split(), plan.dim().m());
    let a = root_power_product(plan, (0..mu).rev(), j.row(0), false)
        .gp(&root_power_product(plan, 0..mu, j.row(1), true));
    let b = root_power_product(plan, mu..m, j.row(1), true);
    let c = root_power_product(plan, 0..mu, j.row(2), true);
    let d = root_power_product(plan, mu..m, j.row(2), true)
        .gp(&root_power_product(plan, (mu..m).rev(), j.row(0), false));
    [a, b, c, d]
}

/// Left and right constants `P_j`, `Q_j` of the translation expansion.
pub fn translation_operands<T: Scalar>(plan: &GftPlan<T>, j: &MultiIndexJ) -> [Multivector<T>; 2] {
    let (mu, m) = (plan.split(), plan.dim().m());
    let p = root_power_product(plan, (0..mu).rev(), j.row(0), false)
        .gp(&root_power_product(plan, 0..mu, j.row(1), true))
        .gp(&root_power_product(plan, 0..mu, j.row(2), true));
    let q = root_power_product(plan, mu..m, j.row(2), true)
        .gp(&root_power_product(plan, mu..m, j.row(1), true))
        .gp(&root_power_product(plan, (mu..m).rev(), j.row(0), false));
    [p, q]
}

fn check_pair<T: Scalar>(plan: &GftPlan<T>, f: &MultivectorField<T>, g: &MultivectorField<T>) -> Result<()> {
    f.grid().ensure_matches(plan.grid(), "first operand")?;
    g.grid().ensure_matches(plan.grid(), "second operand")?;
    if f.dim() != plan.dim() || g.dim() != plan.dim() {
        return Err(Error::DimensionMismatch("operand algebra differs from the plan".into()));
    }
    Ok(())
}

fn require_periodic<T: Scalar>(plan: &GftPlan<T>, what: &str) -> Result<()> {
    if plan.grid().mode() != GridMode::Periodic {
        return Err(Error::Unsupported(format!(
            "{what} is exact only on periodic grids"
        )));
    }
    Ok(())
}

/// `c F^-1(F(f) F(g))` with `c = (2 pi)^(m/2)` on calibrated grids and
/// `prod sqrt(N_k)` on periodic ones.
pub fn mustard_convolve_spectral<T: Scalar>(
    plan: &GftPlan<T>,
    f: &MultivectorField<T>,
    g: &MultivectorField<T>,
) -> Result<MultivectorField<T>> {
    check_pair(plan, f, g)?;
    let ff = plan.forward(f)?;
    let fg = plan.forward(g)?;
    let prod = ff.pointwise_product(&fg)?;
    let mut out = plan.inverse(&prod)?;
    out.scale_in_place(Complex::new(plan.convolution_prefactor(), T::zero()));
    Ok(out)
}

/// The product with the operands swapped, `mustard_convolve_spectral(g, f)`.
pub fn mustard_convolve_reversed<T: Scalar>(
    plan: &GftPlan<T>,
    f: &MultivectorField<T>,
    g: &MultivectorField<T>,
) -> Result<MultivectorField<T>> {
    mustard_convolve_spectral(plan, g, f)
}

/// How the classical-convolution expansions are summed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExpansionRoute {
    /// One classical convolution per `j` after summing the signed reflections.
    #[default]
    Grouped,
    /// One classical convolution per `(j, phi, gamma)` term.
    TermByTerm,
}

/// Weighted sum of reflected copies, `sum_mask w[mask] f^mask`.
fn signed_reflection_sum<T: Scalar>(copies: &[MultivectorField<T>], weights: &[i32]) -> MultivectorField<T> {
    let mut acc = MultivectorField::zeros(copies[0].grid().clone(), copies[0].dim());
    for (copy, &w) in copies.iter().zip(weights) {
        acc.axpy(T::of(w as f64), copy);
    }
    acc
}

fn reflections<T: Scalar>(f: &MultivectorField<T>) -> Vec<MultivectorField<T>> {
    let n = 1usize << f.grid().ndim();
    (0..n).map(|mask| f.reflect(mask)).collect()
}

fn raw_dft<T: Scalar>(f: &MultivectorField<T>) -> Vec<Vec<Complex<T>>> {
    let mut planes = f.planes().to_vec();
    dft_planes(&mut planes, f.grid().sizes(), false);
    planes
}

/// `4^-m sum_j (L_j) * (R_j)` for per-`j` operand pairs, all in the DFT domain.
fn sum_of_convolutions<T: Scalar>(
    plan: &GftPlan<T>,
    operands: impl Fn(&MultiIndexJ) -> (MultivectorField<T>, MultivectorField<T>) + Sync,
) -> Result<MultivectorField<T>> {
    let m = plan.dim().m();
    let blades = plan.dim().blades();
    let len = plan.grid().len();
    let zero = || vec![vec![Complex::new(T::zero(), T::zero()); len]; blades];
    let acc = MultiIndexJ::all(m)
        .par_iter()
        .fold(zero, |mut acc, j| {
            let (l, r) = operands(j);
            pointwise_product_into(&raw_dft(&l), &raw_dft(&r), &mut acc);
            acc
        })
        .reduce(zero, |mut a, b| {
            for (pa, pb) in a.iter_mut().zip(&b) {
                for (x, y) in pa.iter_mut().zip(pb) {
                    *x += y;
                }
            }
            a
        });
    let planes = finish_convolution(acc, plan.grid());
    let mut out = MultivectorField::from_planes(plan.grid().clone(), plan.dim(), planes)?;
    out.scale_in_place(Complex::new(T::one() / T::of_usize(1 << (2 * m)), T::zero()));
    Ok(out)
}

/// Expansion of the Mustard product into classical circular convolutions
/// (periodic grids only).
pub fn mustard_convolve_direct<T: Scalar>(
    plan: &GftPlan<T>,
    f: &MultivectorField<T>,
    g: &MultivectorField<T>,
) -> Result<MultivectorField<T>> {
    mustard_convolve_direct_with(plan, f, g, ExpansionRoute::Grouped)
}

pub fn mustard_convolve_direct_with<T: Scalar>(
    plan: &GftPlan<T>,
    f: &MultivectorField<T>,
    g: &MultivectorField<T>,
    route: ExpansionRoute,
) -> Result<MultivectorField<T>> {
    check_pair(plan, f, g)?;
    require_periodic(plan, "the Mustard expansion")?;
    mustard_expansion(plan, f, g, route)
}

/// Expansion without the periodic-grid guard; on calibrated grids each
/// classical convolution is the centered Riemann sum.
pub(crate) fn mustard_expansion<T: Scalar>(
    plan: &GftPlan<T>,
    f: &MultivectorField<T>,
    g: &MultivectorField<T>,
    route: ExpansionRoute,
) -> Result<MultivectorField<T>> {
    let fr = reflections(f);
    let gr = reflections(g);
    match route {
        ExpansionRoute::Grouped => sum_of_convolutions(plan, |j| {
            let (a, b) = sign_factors(j);
            let [ca, cb, cc, cd] = mustard_operands(plan, j);
            let l = signed_reflection_sum(&fr, &a).sandwich(&ca, &cb);
            let r = signed_reflection_sum(&gr, &b).sandwich(&cc, &cd);
            (l, r)
        }),
        ExpansionRoute::TermByTerm => {
            let mut acc = MultivectorField::zeros(plan.grid().clone(), plan.dim());
            for (j, r, c) in expansion_terms(plan.dim().m()) {
                let [ca, cb, cc, cd] = mustard_operands(plan, &j);
                let l = fr[r.phi].sandwich(&ca, &cb);
                let rr = gr[r.gamma].sandwich(&cc, &cd);
                acc.axpy(T::of(c as f64), &classical_convolve(&l, &rr)?);
            }
            let m = plan.dim().m();
            acc.scale_in_place(Complex::new(T::one() / T::of_usize(1 << (2 * m)), T::zero()));
            Ok(acc)
        }
    }
}

/// Generalized translation through its expansion into classical shifts,
/// `4^-m sum_j P_j (sum_{phi,gamma} c f^gamma(x - y^phi)) Q_j`.
pub fn translate_by_expansion<T: Scalar>(
    plan: &GftPlan<T>,
    f: &MultivectorField<T>,
    y: &[T],
    route: ExpansionRoute,
) -> Result<MultivectorField<T>> {
    f.grid().ensure_matches(plan.grid(), "translated field")?;
    let steps = plan.grid().shift_steps(y)?;
    let m = plan.dim().m();
    let fr = reflections(f);
    let shifted = |mask: usize, field: &MultivectorField<T>| {
        let s: Vec<isize> = (0..m)
            .map(|k| if (mask >> k) & 1 == 1 { -steps[k] } else { steps[k] })
            .collect();
        field.shift(&s)
    };
    let mut acc = MultivectorField::zeros(plan.grid().clone(), plan.dim());
    for j in MultiIndexJ::all(m) {
        let [p, q] = translation_operands(plan, &j);
        let inner = match route {
            ExpansionRoute::Grouped => {
                let (a, b) = sign_factors(&j);
                let fb = signed_reflection_sum(&fr, &b);
                let mut s = MultivectorField::zeros(plan.grid().clone(), plan.dim());
                for (phi, &w) in a.iter().enumerate() {
                    s.axpy(T::of(w as f64), &shifted(phi, &fb));
                }
                s
            }
            ExpansionRoute::TermByTerm => {
                let mut s = MultivectorField::zeros(plan.grid().clone(), plan.dim());
                for r in ReflectionIndex::all(m) {
                    let c = sign_c(&j, r)?;
                    s.axpy(T::of(c as f64), &shifted(r.phi, &fr[r.gamma]));
                }
                s
            }
        };
        acc.add_assign(&inner.sandwich(&p, &q));
    }
    acc.scale_in_place(Complex::new(T::one() / T::of_usize(1 << (2 * m)), T::zero()));
    Ok(acc)
}

/// Which operand is translated in a translation-based convolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauSide {
    /// `int f(y) tau_y g(x) dy`.
    TranslateSecond,
    /// `int tau_y f(x) g(y) dy`.
    TranslateFirst,
}

/// Translation-based convolution `int f(y) tau_y g(x) dy` through its
/// closed-form expansion (periodic grids only).
pub fn tau_convolve<T: Scalar>(
    plan: &GftPlan<T>,
    f: &MultivectorField<T>,
    g: &MultivectorField<T>,
) -> Result<MultivectorField<T>> {
    tau_convolve_expansion(plan, f, g, TauSide::TranslateSecond)
}

/// `int tau_y f(x) g(y) dy` through its closed-form expansion.
pub fn tau_convolve_left<T: Scalar>(
    plan: &GftPlan<T>,
    f: &MultivectorField<T>,
    g: &MultivectorField<T>,
) -> Result<MultivectorField<T>> {
    tau_convolve_expansion(plan, f, g, TauSide::TranslateFirst)
}

pub fn tau_convolve_expansion<T: Scalar>(
    plan: &GftPlan<T>,
    f: &MultivectorField<T>,
    g: &MultivectorField<T>,
    side: TauSide,
) -> Result<MultivectorField<T>> {
    check_pair(plan, f, g)?;
    require_periodic(plan, "the translation convolution expansion")?;
    let fr = reflections(f);
    let gr = reflections(g);
    sum_of_convolutions(plan, |j| {
        let (a, b) = sign_factors(j);
        let [p, q] = translation_operands(plan, j);
        let one = Multivector::one(plan.dim());
        match side {
            // (f^phi P_j) * (g^gamma Q_j)
            TauSide::TranslateSecond => (
                signed_reflection_sum(&fr, &a).right_mul(&p),
                signed_reflection_sum(&gr, &b).right_mul(&q),
            ),
            // (P_j f^gamma Q_j) * g^phi
            TauSide::TranslateFirst => (
                signed_reflection_sum(&fr, &b).sandwich(&p, &q),
                signed_reflection_sum(&gr, &a).sandwich(&one, &one),
            ),
        }
    })
}

/// The same products by summing generalized translates over the grid.
pub fn tau_convolve_by_summation<T: Scalar>(
    plan: &GftPlan<T>,
    f: &MultivectorField<T>,
    g: &MultivectorField<T>,
    side: TauSide,
) -> Result<MultivectorField<T>> {
    check_pair(plan, f, g)?;
    let grid = plan.grid();
    let (moving, weights) = match side {
        TauSide::TranslateSecond => (g, f),
        TauSide::TranslateFirst => (f, g),
    };
    let spectrum = plan.forward(moving)?;
    let zero = || MultivectorField::zeros(grid.clone(), plan.dim());
    let acc = (0..grid.len())
        .into_par_iter()
        .map(|flat| -> Result<MultivectorField<T>> {
            let idx = grid.unravel(flat);
            let steps: Vec<isize> = idx
                .iter()
                .zip(grid.sizes())
                .map(|(&i, &n)| {
                    // Signed representative of the shift on the torus or centered grid.
                    match grid.mode() {
                        GridMode::Periodic => i as isize,
                        GridMode::Calibrated => i as isize - (n / 2) as isize,
                    }
                })
                .collect();
            let translated = plan.inverse(&plan.apply_phases(&spectrum, &steps))?;
            let w = weights.get(flat);
            Ok(match side {
                TauSide::TranslateSecond => translated.left_mul(&w),
                TauSide::TranslateFirst => translated.right_mul(&w),
            })
        })
        .try_fold(zero, |mut acc, term| {
            acc.add_assign(&term?);
            Ok::<_, Error>(acc)
        })
        .try_reduce(zero, |mut a, b| {
            a.add_assign(&b);
            Ok(a)
        })?;
    Ok(acc.scale(Complex::new(grid.cell_volume(), T::zero())))
}
