//! Dense complexified Clifford algebra with generators squaring to -1.
//!
//! A multivector stores one complex coefficient per basis blade. Blades are
//! indexed by bitmask: bit `k` set means the generator `e_{k+1}` is a factor,
//! and factors are kept in increasing order.

mod parse;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::{Error, Result, Scalar};

pub use parse::parse_multivector;

/// Number of generators `m` of the algebra, between 1 and 8.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraDim(u8);

impl AlgebraDim {
    pub const MAX: usize = 8;

    pub fn new(m: usize) -> Result<Self> {
        if (1..=Self::MAX).contains(&m) {
            Ok(Self(m as u8))
        } else {
            Err(Error::BadDimension(m))
        }
    }

    pub fn m(self) -> usize {
        self.0 as usize
    }

    /// Number of basis blades, `2^m`.
    pub fn blades(self) -> usize {
        1 << self.0
    }
}

/// Product of two basis blades: returns the resulting blade and its sign.
///
/// The sign collects one factor -1 per transposition needed to sort the
/// generators and one per generator that squares out.
#[inline]
pub fn blade_product(a: usize, b: usize) -> (usize, bool) {
    let mut swaps = 0u32;
    let mut x = a >> 1;
    while x != 0 {
        swaps += (x & b).count_ones();
        x >>= 1;
    }
    swaps += (a & b).count_ones();
    (a ^ b, swaps & 1 == 1)
}

pub fn blade_grade(b: usize) -> usize {
    b.count_ones() as usize
}

/// Name of a blade in the `e123` notation; the scalar blade is `1`.
pub fn blade_name(b: usize) -> String {
    if b == 0 {
        return "1".to_string();
    }
    let mut s = String::from("e");
    for k in 0..usize::BITS as usize {
        if b >> k & 1 == 1 {
            s.push_str(&(k + 1).to_string());
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq)]
pub struct Multivector<T: Scalar> {
    dim: AlgebraDim,
    coeffs: Vec<Complex<T>>,
}

impl<T: Scalar> Multivector<T> {
    pub fn zero(dim: AlgebraDim) -> Self {
        Self {
            dim,
            coeffs: vec![Complex::new(T::zero(), T::zero()); dim.blades()],
        }
    }

    pub fn scalar(dim: AlgebraDim, c: Complex<T>) -> Self {
        let mut mv = Self::zero(dim);
        mv.coeffs[0] = c;
        mv
    }

    pub fn real(dim: AlgebraDim, x: T) -> Self {
        Self::scalar(dim, Complex::new(x, T::zero()))
    }

    pub fn one(dim: AlgebraDim) -> Self {
        Self::real(dim, T::one())
    }

    /// Unit basis blade with bitmask `b`.
    pub fn blade(dim: AlgebraDim, b: usize) -> Self {
        assert!(b < dim.blades(), "blade {b} outside Cl(0,{})", dim.m());
        let mut mv = Self::zero(dim);
        mv.coeffs[b] = Complex::new(T::one(), T::zero());
        mv
    }

    /// Generator `e_{k+1}` (zero-based `k`).
    pub fn generator(dim: AlgebraDim, k: usize) -> Self {
        Self::blade(dim, 1 << k)
    }

    /// Grade-1 multivector with real coordinates.
    pub fn vector(dim: AlgebraDim, coords: &[T]) -> Result<Self> {
        if coords.len() != dim.m() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for Cl(0,{})",
                coords.len(),
                dim.m()
            )));
        }
        let mut mv = Self::zero(dim);
        for (k, &x) in coords.iter().enumerate() {
            mv.coeffs[1 << k] = Complex::new(x, T::zero());
        }
        Ok(mv)
    }

    pub fn from_coeffs(dim: AlgebraDim, coeffs: Vec<Complex<T>>) -> Result<Self> {
        if coeffs.len() != dim.blades() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} blades",
                coeffs.len(),
                dim.blades()
            )));
        }
        Ok(Self { dim, coeffs })
    }

    pub fn dim(&self) -> AlgebraDim {
        self.dim
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex<T>> {
        self.coeffs
    }

    pub fn coeff(&self, b: usize) -> Complex<T> {
        self.coeffs[b]
    }

    pub fn scalar_part(&self) -> Complex<T> {
        self.coeffs[0]
    }

    /// Projection onto grade `k`.
    pub fn grade_part(&self, k: usize) -> Self {
        let mut out = Self::zero(self.dim);
        for (b, c) in self.coeffs.iter().enumerate() {
            if blade_grade(b) == k {
                out.coeffs[b] = *c;
            }
        }
        out
    }

    /// Largest coefficient magnitude outside grade `k`.
    pub fn off_grade(&self, k: usize) -> T {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(b, _)| blade_grade(*b) != k)
            .fold(T::zero(), |acc, (_, c)| acc.max(c.norm()))
    }

    /// Coordinates of a grade-1 multivector. Fails if other grades carry
    /// weight above rounding level.
    pub fn vector_coords(&self) -> Result<Vec<Complex<T>>> {
        let scale = self.max_abs().max(T::one());
        if self.off_grade(1) > T::structural_tol() * scale {
            return Err(Error::NotAVector(self.to_string()));
        }
        Ok((0..self.dim.m()).map(|k| self.coeffs[1 << k]).collect())
    }

    pub fn max_abs(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, c| acc.max(c.norm()))
    }

    pub fn norm(&self) -> T {
        self.coeffs
            .iter()
            .fold(T::zero(), |acc, c| acc + c.norm_sqr())
            .sqrt()
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn scale_real(&self, x: T) -> Self {
        Self {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c * x).collect(),
        }
    }

    /// Geometric product `self * rhs`.
    pub fn gp(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "geometric product across algebras");
        let mut out = Self::zero(self.dim);
        gp_into(&self.coeffs, &rhs.coeffs, &mut out.coeffs);
        out
    }

    /// Matrix of `x -> self * x` in the blade basis, row-major.
    pub fn left_matrix(&self) -> Vec<Complex<T>> {
        let n = self.dim.blades();
        let mut mat = vec![Complex::new(T::zero(), T::zero()); n * n];
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.re == T::zero() && ca.im == T::zero() {
                continue;
            }
            for b in 0..n {
                let (c, neg) = blade_product(a, b);
                let v = if neg { -*ca } else { *ca };
                mat[c * n + b] += v;
            }
        }
        mat
    }

    /// Two-sided inverse, found by solving `self * x = 1`.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.dim.blades();
        let mut mat = self.left_matrix();
        let mut rhs = vec![Complex::new(T::zero(), T::zero()); n];
        rhs[0] = Complex::new(T::one(), T::zero());
        let scale = self.max_abs();
        if scale == T::zero() {
            return Err(Error::Singular(self.to_string()));
        }
        let tiny = scale * T::epsilon() * T::of(64.0);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| {
                    mat[i * n + col]
                        .norm()
                        .partial_cmp(&mat[j * n + col].norm())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .unwrap();
            if mat[pivot * n + col].norm() <= tiny {
                return Err(Error::Singular(self.to_string()));
            }
            if pivot != col {
                for k in 0..n {
                    mat.swap(pivot * n + k, col * n + k);
                }
                rhs.swap(pivot, col);
            }
            let inv = Complex::new(T::one(), T::zero()) / mat[col * n + col];
            for row in 0..n {
                if row == col {
                    continue;
                }
                let f = mat[row * n + col] * inv;
                if f.re == T::zero() && f.im == T::zero() {
                    continue;
                }
                for k in col..n {
                    let v = mat[col * n + k];
                    mat[row * n + k] -= f * v;
                }
                let v = rhs[col];
                rhs[row] -= f * v;
            }
        }
        let coeffs = (0..n).map(|i| rhs[i] / mat[i * n + i]).collect();
        Ok(Self {
            dim: self.dim,
            coeffs,
        })
    }

    /// Coefficient-wise closeness in max norm.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.dim == other.dim && (self - other).max_abs() <= tol
    }

    pub fn parse(dim: AlgebraDim, text: &str) -> Result<Self> {
        parse_multivector(dim, text)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&MultivectorJson::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: MultivectorJson = serde_json::from_str(text)?;
        raw.try_into()
    }
}

/// Accumulates `a * b` into `out` (all slices of length `2^m`).
#[inline]
pub(crate) fn gp_into<T: Scalar>(a: &[Complex<T>], b: &[Complex<T>], out: &mut [Complex<T>]) {
    for (i, ca) in a.iter().enumerate() {
        if ca.re == T::zero() && ca.im == T::zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            let (k, neg) = blade_product(i, j);
            let p = ca * cb;
            if neg {
                out[k] -= p;
            } else {
                out[k] += p;
            }
        }
    }
}

/// On-disk and wire form: `{"m": 2, "coeffs": [[re, im], ...]}` in blade order.
#[derive(Serialize, Deserialize)]
struct MultivectorJson {
    m: usize,
    coeffs: Vec<[f64; 2]>,
}

impl<T: Scalar> From<&Multivector<T>> for MultivectorJson {
    fn from(mv: &Multivector<T>) -> Self {
        Self {
            m: mv.dim.m(),
            coeffs: mv
                .coeffs
                .iter()
                .map(|c| [c.re.as_f64(), c.im.as_f64()])
                .collect(),
        }
    }
}

impl<T: Scalar> TryFrom<MultivectorJson> for Multivector<T> {
    type Error = Error;

    fn try_from(raw: MultivectorJson) -> Result<Self> {
        let dim = AlgebraDim::new(raw.m)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|[re, im]| Complex::new(T::of(*re), T::of(*im)))
            .collect();
        Multivector::from_coeffs(dim, coeffs)
    }
}

impl<T: Scalar> fmt::Display for Multivector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (b, c) in self.coeffs.iter().enumerate() {
            if c.re == T::zero() && c.im == T::zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.im == T::zero() {
                write!(f, "{}", c.re)?;
            } else {
                write!(f, "({}{:+}i)", c.re, c.im)?;
            }
            if b != 0 {
                write!(f, "{}", blade_name(b))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<T: Scalar> Add for &Multivector<T> {
    type Output = Multivector<T>;
    fn add(self, rhs: Self) -> Multivector<T> {
        assert_eq!(self.dim, rhs.dim);
        Multivector {
            dim: self.dim,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<T: Scalar> Sub for &Multivector<T> {
    type Output = Multivector<T>;
    fn sub(self, rhs: Self) -> Multivector<T> {
        assert_eq!(self.dim, rhs.dim);
        Multivector {
            dim: self.dim,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<T: Scalar> Mul for &Multivector<T> {
    type Output = Multivector<T>;
    fn mul(self, rhs: Self) -> Multivector<T> {
        self.gp(rhs)
    }
}

impl<T: Scalar> Add for Multivector<T> {
    type Output = Multivector<T>;
    fn add(self, rhs: Self) -> Multivector<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for Multivector<T> {
    type Output = Multivector<T>;
    fn sub(self, rhs: Self) -> Multivector<T> {
        &self - &rhs
    }
}

impl<T: Scalar> Mul for Multivector<T> {
    type Output = Multivector<T>;
    fn mul(self, rhs: Self) -> Multivector<T> {
        self.gp(&rhs)
    }
}

impl<T: Scalar> Neg for &Multivector<T> {
    type Output = Multivector<T>;
    fn neg(self) -> Multivector<T> {
        self.scale_real(-T::one())
    }
}

impl<T: Scalar> Neg for Multivector<T> {
    type Output = Multivector<T>;
    fn neg(self) -> Multivector<T> {
        -&self
    }
}

impl<T: Scalar> AddAssign<&Multivector<T>> for Multivector<T> {
    fn add_assign(&mut self, rhs: &Multivector<T>) {
        assert_eq!(self.dim, rhs.dim);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl<T: Scalar> SubAssign<&Multivector<T>> for Multivector<T> {
    fn sub_assign(&mut self, rhs: &Multivector<T>) {
        assert_eq!(self.dim, rhs.dim);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

/// A multivector whose square is -1, used as the imaginary unit of one axis.
#[derive(Clone, Debug, PartialEq)]
pub struct RootOfMinusOne<T: Scalar> {
    value: Multivector<T>,
}

impl<T: Scalar> RootOfMinusOne<T> {
    pub fn new(value: Multivector<T>) -> Result<Self> {
        let sq = value.gp(&value);
        let residual = (&sq + &Multivector::one(value.dim)).max_abs();
        let scale = T::one() + value.norm() * value.norm();
        if residual > T::structural_tol() * scale {
            return Err(Error::NotARoot {
                value: value.to_string(),
                residual: residual.as_f64(),
            });
        }
        Ok(Self { value })
    }

    /// The generator `e_{k+1}` as a root.
    pub fn generator(dim: AlgebraDim, k: usize) -> Self {
        Self {
            value: Multivector::generator(dim, k),
        }
    }

    pub fn parse(dim: AlgebraDim, text: &str) -> Result<Self> {
        Self::new(parse_multivector(dim, text)?)
    }

    pub fn value(&self) -> &Multivector<T> {
        &self.value
    }

    pub fn dim(&self) -> AlgebraDim {
        self.value.dim
    }

    pub fn negated(&self) -> Self {
        Self {
            value: -&self.value,
        }
    }
}

impl<T: Scalar> fmt::Display for RootOfMinusOne<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

pub fn geometric_product<T: Scalar>(a: &Multivector<T>, b: &Multivector<T>) -> Multivector<T> {
    a.gp(b)
}

/// Outer product of two grade-1 multivectors.
pub fn wedge<T: Scalar>(x: &Multivector<T>, y: &Multivector<T>) -> Result<Multivector<T>> {
    if x.dim != y.dim {
        return Err(Error::DimensionMismatch("wedge across algebras".into()));
    }
    let xs = x.vector_coords()?;
    let ys = y.vector_coords()?;
    let mut out = Multivector::zero(x.dim);
    for j in 0..xs.len() {
        for k in j + 1..xs.len() {
            out.coeffs[(1 << j) | (1 << k)] = xs[j] * ys[k] - xs[k] * ys[j];
        }
    }
    Ok(out)
}

/// Euclidean inner product of coordinate vectors (bilinear, no conjugation).
pub fn inner<T: Scalar>(x: &[Complex<T>], y: &[Complex<T>]) -> Result<Complex<T>> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(format!(
            "inner product of lengths {} and {}",
            x.len(),
            y.len()
        )));
    }
    Ok(x.iter()
        .zip(y)
        .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a * b))
}

/// `cos(theta) + i sin(theta)` for a root `i`.
pub fn exp_root<T: Scalar>(root: &RootOfMinusOne<T>, theta: T) -> Multivector<T> {
    let mut out = root.value.scale_real(theta.sin());
    out.coeffs[0] += Complex::new(theta.cos(), T::zero());
    out
}

/// Splits `a` into the parts commuting and anticommuting with `b`:
/// `a0 = (a + b^-1 a b)/2`, `a1 = (a - b^-1 a b)/2`.
pub fn comm_split<T: Scalar>(
    a: &Multivector<T>,
    b: &Multivector<T>,
) -> Result<(Multivector<T>, Multivector<T>)> {
    let conj = b.inverse()?.gp(a).gp(b);
    let half = T::of(0.5);
    Ok(((a + &conj).scale_real(half), (a - &conj).scale_real(half)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(m: usize) -> AlgebraDim {
        AlgebraDim::new(m).unwrap()
    }

    #[test]
    fn generators_anticommute_and_square_to_minus_one() {
        let d = dim(3);
        for j in 0..3 {
            let ej = Multivector::<f64>::generator(d, j);
            assert!(ej.gp(&ej).approx_eq(&Multivector::real(d, -1.0), 0.0));
            for k in j + 1..3 {
                let ek = Multivector::generator(d, k);
                assert!(ej.gp(&ek).approx_eq(&-ek.gp(&ej), 0.0));
            }
        }
    }

    #[test]
    fn bivector_e12_squares_to_minus_one() {
        let d = dim(2);
        let e12 = Multivector::<f64>::blade(d, 0b11);
        assert!(e12.gp(&e12).approx_eq(&Multivector::real(d, -1.0), 0.0));
    }

    #[test]
    fn pseudoscalar_of_cl03_commutes_and_squares_to_plus_one() {
        let d = dim(3);
        let e123 = Multivector::<f64>::blade(d, 0b111);
        assert!(e123.gp(&e123).approx_eq(&Multivector::one(d), 0.0));
        for k in 0..3 {
            let ek = Multivector::generator(d, k);
            assert!(e123.gp(&ek).approx_eq(&ek.gp(&e123), 0.0));
        }
    }

    #[test]
    fn product_of_vectors_is_wedge_minus_inner() {
        let d = dim(3);
        let x = Multivector::vector(d, &[1.0, -2.0, 0.5]).unwrap();
        let y = Multivector::vector(d, &[0.25, 3.0, -1.0]).unwrap();
        let xc = x.vector_coords().unwrap();
        let yc = y.vector_coords().unwrap();
        let expect = &wedge(&x, &y).unwrap() - &Multivector::scalar(d, inner(&xc, &yc).unwrap());
        assert!(x.gp(&y).approx_eq(&expect, 1e-15));
    }

    #[test]
    fn inverse_of_unit_vector() {
        let d = dim(2);
        let x = Multivector::<f64>::vector(d, &[0.6, 0.8]).unwrap();
        assert!(x.inverse().unwrap().approx_eq(&-&x, 1e-15));
    }

    #[test]
    fn idempotent_is_singular() {
        let d = dim(3);
        let p = (&Multivector::<f64>::one(d) + &Multivector::blade(d, 0b111)).scale_real(0.5);
        match p.inverse() {
            Err(Error::Singular(name)) => assert!(name.contains("e123")),
            other => panic!("expected singular, got {other:?}"),
        }
    }

    #[test]
    fn exp_root_quarter_turn() {
        let d = dim(2);
        let r = RootOfMinusOne::<f64>::parse(d, "e12").unwrap();
        let e = exp_root(&r, std::f64::consts::FRAC_PI_2);
        assert!(e.approx_eq(&Multivector::blade(d, 0b11), 1e-15));
    }

    #[test]
    fn comm_split_of_generator_against_e1() {
        let d = dim(2);
        let e1 = Multivector::<f64>::generator(d, 0);
        let e2 = Multivector::<f64>::generator(d, 1);
        let (c, a) = comm_split(&e1, &e1).unwrap();
        assert!(c.approx_eq(&e1, 1e-15) && a.max_abs() < 1e-15);
        let (c, a) = comm_split(&e2, &e1).unwrap();
        assert!(c.max_abs() < 1e-15 && a.approx_eq(&e2, 1e-15));
    }

    #[test]
    fn rejects_non_root() {
        let d = dim(2);
        assert!(RootOfMinusOne::<f64>::parse(d, "e1+e2").is_err());
        assert!(RootOfMinusOne::<f64>::parse(d, "0.6e1+0.8e2").is_ok());
    }

    #[test]
    fn wedge_rejects_bivector() {
        let d = dim(3);
        let b = Multivector::<f64>::blade(d, 0b11);
        let v = Multivector::generator(d, 0);
        assert!(matches!(wedge(&b, &v), Err(Error::NotAVector(_))));
    }

    #[test]
    fn json_round_trip() {
        let d = dim(2);
        let mut mv = Multivector::<f64>::parse(d, "1.5 - 2e12").unwrap();
        mv.coeffs_mut()[1] = Complex::new(0.25, -0.75);
        let text = mv.to_json().unwrap();
        assert_eq!(Multivector::<f64>::from_json(&text).unwrap(), mv);
        assert!(text.starts_with("{\"m\":2"));
    }

    #[test]
    fn works_in_single_precision() {
        let d = dim(3);
        let r = RootOfMinusOne::<f32>::parse(d, "0.6e12+0.8e13").unwrap();
        let sq = r.value().gp(r.value());
        assert!(sq.approx_eq(&Multivector::real(d, -1.0f32), 1e-6));
    }
}
