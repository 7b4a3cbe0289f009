//! Special functions and radial quadrature.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;

use crate::{Error, Result, Scalar};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function (Lanczos, reflection below 1/2).
pub fn gamma<T: Scalar>(x: T) -> T {
    let half = T::of(0.5);
    if x < half {
        let pi = T::PI();
        return pi / ((pi * x).sin() * gamma(T::one() - x));
    }
    let x = x - T::one();
    let mut acc = T::of(LANCZOS[0]);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += T::of(*c) / (x + T::of_usize(i));
    }
    let t = x + T::of(LANCZOS_G) + half;
    (T::of(2.0) * T::PI()).sqrt() * t.powf(x + half) * (-t).exp() * acc
}

/// Bessel function of the first kind `J_nu(z)` for `nu >= 0`, `z >= 0`.
pub fn bessel_j<T: Scalar>(nu: T, z: T) -> T {
    assert!(nu >= T::zero(), "negative Bessel order");
    assert!(z >= T::zero(), "negative Bessel argument");
    if z == T::zero() {
        return if nu == T::zero() { T::one() } else { T::zero() };
    }
    if use_series(nu, z) {
        return scaled_series(nu, z) * z.powf(nu);
    }
    miller(nu, z)
}

/// `S_nu(z) = z^-nu J_nu(z)`, an entire even function of `z` with
/// `S_nu(0) = 2^-nu / Gamma(nu + 1)`.
pub fn scaled_bessel<T: Scalar>(nu: T, z: T) -> T {
    let z = z.abs();
    if use_series(nu, z) {
        return scaled_series(nu, z);
    }
    miller(nu, z) / z.powf(nu)
}

fn use_series<T: Scalar>(nu: T, z: T) -> bool {
    let q = z * z / T::of(4.0);
    z <= T::of(2.0) || q <= nu + T::one()
}

/// `2^-nu sum_k (-q)^k / (k! Gamma(k + nu + 1))` with `q = z^2/4`.
fn scaled_series<T: Scalar>(nu: T, z: T) -> T {
    let q = z * z / T::of(4.0);
    let mut term = T::one() / gamma(nu + T::one());
    let mut sum = term;
    for k in 1..500 {
        let kk = T::of_usize(k);
        term = -term * q / (kk * (kk + nu));
        sum += term;
        if term.abs() <= T::epsilon() * sum.abs() * T::of(0.25) {
            break;
        }
    }
    sum * T::of(2.0).powf(-nu)
}

/// Backward recurrence from well above the requested order, normalized with
/// `(z/2)^nu0 = sum_k (nu0 + 2k) Gamma(nu0 + k)/k! J_{nu0+2k}(z)`.
fn miller<T: Scalar>(nu: T, z: T) -> T {
    miller_range(nu, 1, z)[0]
}

/// `J_{nu}, .., J_{nu+count-1}` at `z > 0` from one backward sweep.
fn miller_range<T: Scalar>(nu: T, count: usize, z: T) -> Vec<T> {
    let nu0 = nu - nu.floor();
    let n = (nu - nu0).round().to_usize().unwrap_or(0);
    let last = n + count - 1;
    let zf = z.as_f64();
    let top = (last as f64).max(zf);
    let start = (top + 20.0 + (40.0 * top).sqrt()).ceil() as usize + 2;
    let big = T::max_value().sqrt();
    let tiny = T::one() / big;

    // Normalization weights c_k for even offsets 2k.
    let weight = |k: usize, g: T| -> T { (nu0 + T::of_usize(2 * k)) * g };

    let mut j_next = T::zero();
    let mut j_cur = tiny;
    let mut wanted = vec![T::zero(); count];
    if (n..=last).contains(&start) {
        wanted[start - n] = j_cur;
    }
    let mut norm_terms: Vec<(usize, T)> = Vec::new();
    if start.is_multiple_of(2) {
        norm_terms.push((start / 2, j_cur));
    }
    let mut idx = start;
    while idx > 0 {
        let mu = nu0 + T::of_usize(idx);
        let j_prev = T::of(2.0) * mu / z * j_cur - j_next;
        j_next = j_cur;
        j_cur = j_prev;
        idx -= 1;
        if (n..=last).contains(&idx) {
            wanted[idx - n] = j_cur;
        }
        if idx.is_multiple_of(2) {
            norm_terms.push((idx / 2, j_cur));
        }
        if j_cur.abs() > big {
            j_cur *= tiny;
            j_next *= tiny;
            wanted.iter_mut().for_each(|w| *w *= tiny);
            for t in norm_terms.iter_mut() {
                t.1 *= tiny;
            }
        }
    }
    // sum over k of c_k J_{nu0+2k}; terms are stored from high k to low k.
    let kmax = norm_terms.iter().map(|t| t.0).max().unwrap_or(0);
    let mut g = vec![T::zero(); kmax + 1];
    if kmax >= 1 {
        g[1] = gamma(nu0 + T::one());
        for k in 2..=kmax {
            g[k] = g[k - 1] * (nu0 + T::of_usize(k - 1)) / T::of_usize(k);
        }
    }
    let mut sum = T::zero();
    for &(k, v) in norm_terms.iter() {
        let c = if k == 0 {
            gamma(nu0 + T::one())
        } else {
            weight(k, g[k])
        };
        sum += c * v;
    }
    let scale = (z / T::of(2.0)).powf(nu0) / sum;
    wanted.into_iter().map(|w| w * scale).collect()
}

/// `z^-nu J_{nu+k}(z) = z^k S_{nu+k}(z)` for `k = 0..=kmax`; valid for any
/// real `z` (odd `k` flip sign with `z`).
pub fn scaled_bessel_sequence<T: Scalar>(nu: T, kmax: usize, z: T) -> Vec<T> {
    let a = z.abs();
    let mut out = if a <= T::of(2.0) {
        (0..=kmax)
            .map(|k| scaled_series(nu + T::of_usize(k), a) * a.powi(k as i32))
            .collect()
    } else {
        let inv = a.powf(-nu);
        miller_range(nu, kmax + 1, a).into_iter().map(|j| j * inv).collect::<Vec<_>>()
    };
    if z < T::zero() {
        out.iter_mut().skip(1).step_by(2).for_each(|v| *v = -*v);
    }
    out
}

/// Gegenbauer polynomials `C_0^lambda .. C_kmax^lambda` at `w`.
pub fn gegenbauer_all<T: Scalar>(kmax: usize, lambda: T, w: T) -> Vec<T> {
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(T::one());
    if kmax == 0 {
        return out;
    }
    out.push(T::of(2.0) * lambda * w);
    for n in 1..kmax {
        let nn = T::of_usize(n);
        let next = (T::of(2.0) * (nn + lambda) * w * out[n]
            - (nn + T::of(2.0) * lambda - T::one()) * out[n - 1])
            / (nn + T::one());
        out.push(next);
    }
    out
}

pub fn gegenbauer<T: Scalar>(k: usize, lambda: T, w: T) -> T {
    gegenbauer_all(k, lambda, w)[k]
}

/// Generalized Laguerre polynomial `L_j^a(x)`.
pub fn laguerre<T: Scalar>(j: usize, a: T, x: T) -> T {
    let mut prev = T::one();
    if j == 0 {
        return prev;
    }
    let mut cur = T::one() + a - x;
    for n in 1..j {
        let nn = T::of_usize(n);
        let next = ((T::of(2.0) * nn + T::one() + a - x) * cur - (nn + a) * prev) / (nn + T::one());
        prev = cur;
        cur = next;
    }
    cur
}

/// Hermite function `H_k(x) exp(-x^2/2)` with the physicists' `H_k`.
pub fn hermite_function<T: Scalar>(k: usize, x: T) -> T {
    let mut prev = (-x * x / T::of(2.0)).exp();
    if k == 0 {
        return prev;
    }
    let mut cur = T::of(2.0) * x * prev;
    for n in 1..k {
        let next = T::of(2.0) * x * cur - T::of(2.0) * T::of_usize(n) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Gauss-Legendre nodes and weights on `[a, b]`.
pub fn gauss_legendre<T: Scalar>(n: usize, a: T, b: T) -> (Vec<T>, Vec<T>) {
    assert!(n >= 1);
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let half = (b - a) / T::of(2.0);
    let mid = (b + a) / T::of(2.0);
    // Newton in f64 regardless of T, then convert.
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                let (_, d) = legendre_with_derivative(n, x);
                dp = d;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = mid - half * T::of(x);
        nodes[n - 1 - i] = mid + half * T::of(x);
        weights[i] = half * T::of(w);
        weights[n - 1 - i] = half * T::of(w);
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Quadrature grid on `[0, r_max]`.
#[derive(Clone, Debug)]
pub struct RadialGrid<T: Scalar> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
    pub r_max: T,
}

impl<T: Scalar> RadialGrid<T> {
    pub fn gauss_legendre(n: usize, r_max: T) -> Self {
        let (nodes, weights) = gauss_legendre(n, T::zero(), r_max);
        Self {
            nodes,
            weights,
            r_max,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

type RadialFn<T> = Arc<dyn Fn(T) -> Complex<T> + Send + Sync>;

/// A complex function of the radius, either closed form or tabulated.
#[derive(Clone)]
pub enum RadialProfile<T: Scalar> {
    Closure(RadialFn<T>),
    /// Samples at increasing radii; evaluated by local cubic interpolation and
    /// taken as zero past the last radius.
    Sampled { radii: Vec<T>, values: Vec<Complex<T>> },
}

impl<T: Scalar> fmt::Debug for RadialProfile<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Closure(_) => write!(f, "RadialProfile::Closure"),
            Self::Sampled { radii, .. } => write!(f, "RadialProfile::Sampled({} points)", radii.len()),
        }
    }
}

impl<T: Scalar> RadialProfile<T> {
    pub fn from_fn(f: impl Fn(T) -> Complex<T> + Send + Sync + 'static) -> Self {
        Self::Closure(Arc::new(f))
    }

    pub fn real_fn(f: impl Fn(T) -> T + Send + Sync + 'static) -> Self {
        Self::Closure(Arc::new(move |r| Complex::new(f(r), T::zero())))
    }

    pub fn sampled(radii: Vec<T>, values: Vec<Complex<T>>) -> Result<Self> {
        if radii.len() != values.len() || radii.len() < 4 {
            return Err(Error::DimensionMismatch(
                "sampled profile needs at least 4 radii matching its values".into(),
            ));
        }
        if radii.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Unsupported("sample radii must increase".into()));
        }
        Ok(Self::Sampled { radii, values })
    }

    pub fn eval(&self, r: T) -> Complex<T> {
        match self {
            Self::Closure(f) => f(r),
            Self::Sampled { radii, values } => interpolate(radii, values, r),
        }
    }

    pub fn sample(&self, radii: &[T]) -> Vec<Complex<T>> {
        radii.iter().map(|&r| self.eval(r)).collect()
    }
}

fn interpolate<T: Scalar>(radii: &[T], values: &[Complex<T>], r: T) -> Complex<T> {
    let n = radii.len();
    if r > radii[n - 1] {
        return Complex::new(T::zero(), T::zero());
    }
    let hi = radii.partition_point(|&x| x < r).clamp(2, n - 2);
    let lo = hi - 2;
    let mut acc = Complex::new(T::zero(), T::zero());
    for i in lo..lo + 4 {
        let mut w = T::one();
        for j in lo..lo + 4 {
            if j != i {
                w = w * (r - radii[j]) / (radii[i] - radii[j]);
            }
        }
        acc += values[i] * w;
    }
    acc
}

/// Radial Fourier transform in `R^(2 lambda + 2)`:
/// `H[f](s) = int_0^inf f(r) r^(2 lambda + 1) S_lambda(r s) dr`.
///
/// Fails with [`Error::NonDecaying`] if `|f(r) r^(2 lambda + 1)|` near the end of
/// the grid is not below `tol` relative to its peak.
pub fn hankel_transform<T: Scalar>(
    f: &RadialProfile<T>,
    lambda: T,
    grid: &RadialGrid<T>,
    out: &[T],
    tol: T,
) -> Result<Vec<Complex<T>>> {
    let power = T::of(2.0) * lambda + T::one();
    let weighted: Vec<Complex<T>> = grid
        .nodes
        .iter()
        .zip(&grid.weights)
        .map(|(&r, &w)| f.eval(r) * (r.powf(power) * w))
        .collect();
    check_decay(f, power, grid, tol)?;
    Ok(out
        .iter()
        .map(|&s| {
            grid.nodes
                .iter()
                .zip(&weighted)
                .fold(Complex::new(T::zero(), T::zero()), |acc, (&r, &v)| {
                    acc + v * scaled_bessel(lambda, r * s)
                })
        })
        .collect())
}

/// Compares the integrand envelope at the end of the grid with its peak.
pub(crate) fn check_decay<T: Scalar>(
    f: &RadialProfile<T>,
    power: T,
    grid: &RadialGrid<T>,
    tol: T,
) -> Result<()> {
    let probe = 64;
    let mut peak = T::zero();
    for i in 0..=probe {
        let r = grid.r_max * T::of_usize(i) / T::of_usize(probe);
        peak = peak.max(f.eval(r).norm() * r.powf(power));
    }
    let r_end = grid.r_max;
    let tail = f.eval(r_end).norm() * r_end.powf(power);
    let scale = peak.max(T::min_positive_value());
    if tail > tol * scale {
        return Err(Error::NonDecaying {
            tail: (tail / scale).as_f64(),
            tol: tol.as_f64(),
        });
    }
    Ok(())
}
