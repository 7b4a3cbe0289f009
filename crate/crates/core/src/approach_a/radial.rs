use std::sync::Arc;

use num_complex::Complex;
use rayon::prelude::*;

use super::{eigenvalue_a, inverse_spec, rho, sphere_integral_check, KernelSpecA, Parity, PresetId};
use crate::clifford::Multivector;
use crate::special::{check_decay, gamma, gauss_legendre, laguerre, scaled_bessel, RadialGrid, RadialProfile};
use crate::{Error, Result, Scalar};

/// Relative size the weighted integrand may keep at the end of the radial grid.
const DECAY_TOL: f64 = 1e-9;

/// Angular factor of a radial term `f0(|x|) P(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Harmonic {
    /// `P = 1`.
    M0,
    /// `P = x_1 - x_2 e_1 e_2`, a degree-one spherical monogenic.
    M1,
}

impl Harmonic {
    pub fn degree(self) -> usize {
        match self {
            Self::M0 => 0,
            Self::M1 => 1,
        }
    }

    /// `P(x)` as a multivector of `Cl(0, x.len())`.
    pub fn eval<T: Scalar>(self, x: &[T]) -> Result<Multivector<T>> {
        let dim = crate::AlgebraDim::new(x.len())?;
        Ok(match self {
            Self::M0 => Multivector::one(dim),
            Self::M1 => {
                let mut p = Multivector::real(dim, x[0]);
                p.coeffs_mut()[0b11] = Complex::new(-x[1], T::zero());
                p
            }
        })
    }
}

fn radial_grid<T: Scalar>(spec: &KernelSpecA<T>) -> RadialGrid<T> {
    let (n, r_max) = spec.quadrature();
    RadialGrid::gauss_legendre(n, r_max)
}

/// `c_m = 2 / (Gamma(m/2) (1 - exp(-2 i alpha))^(m/2))`.
fn radial_constant<T: Scalar>(m: usize, angle: T) -> Complex<T> {
    let base = Complex::new(T::one(), T::zero()) - Complex::from_polar(T::one(), -T::of(2.0) * angle);
    let half_m = T::of_usize(m) / T::of(2.0);
    base.powf(-half_m) * (T::of(2.0) / gamma(half_m))
}

/// Radial profile `g0` of the transform of `f0(|x|) M_k(x)` (even parity,
/// `F = g0(|y|) M_k(y)`) or of `f0(|x|) x M_k(x)` (odd parity,
/// `F = g0(|y|) y M_k(y)`), for `k` in `{0, 1}`.
///
/// The one-dimensional integral is done once per output radius on the
/// spec's Gauss-Legendre grid.
pub fn radial_transform<T: Scalar>(
    spec: &KernelSpecA<T>,
    f0: &RadialProfile<T>,
    k: usize,
    parity: Parity,
) -> Result<RadialProfile<T>> {
    if k >= 2 {
        return Err(Error::Unsupported(format!("radial transforms cover k = 0, 1 (got {k})")));
    }
    let m = spec.m();
    let (factor, power, kp) = match parity {
        Parity::Even => (spec.even_factor(k)?, m + k - 1, k),
        Parity::Odd => (spec.odd_factor(k)?, m + k, k + 1),
    };
    let grid = radial_grid(spec);
    check_decay(f0, T::of_usize(power), &grid, T::of(DECAY_TOL))?;
    let samples: Vec<Complex<T>> = grid.nodes.iter().map(|&r| f0.eval(r)).collect();
    Ok(transform_samples(spec, &grid, &samples, factor, power, kp))
}

/// The radial integral on samples of `f0` at the grid nodes.
fn transform_samples<T: Scalar>(
    spec: &KernelSpecA<T>,
    grid: &RadialGrid<T>,
    samples: &[Complex<T>],
    factor: Complex<T>,
    power: usize,
    kp: usize,
) -> RadialProfile<T> {
    let nu = spec.lambda() + T::of_usize(kp);
    let sin = spec.angle().sin();
    let half_cot = spec.angle().cos() / sin / T::of(2.0);
    let weighted: Vec<(T, Complex<T>)> = grid
        .nodes
        .iter()
        .zip(&grid.weights)
        .zip(samples)
        .map(|((&r, &w), &f)| {
            let chirp = Complex::from_polar(T::one(), half_cot * r * r);
            let v = f * chirp * (w * r.powi(power as i32) * (r / sin).powi(kp as i32));
            (r / sin, v)
        })
        .collect();
    let constant = radial_constant(spec.m(), spec.angle()) * factor;
    let weighted = Arc::new(weighted);
    RadialProfile::from_fn(move |s| {
        let sum = weighted
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, &(q, v)| acc + v * scaled_bessel(nu, q * s));
        sum * constant * Complex::from_polar(T::one(), half_cot * s * s)
    })
}

/// Radial part of `psi_{2j,k}` (`L_j^{k+lambda}(r^2) e^{-r^2/2}`) or of
/// `psi_{2j+1,k}` (`L_j^{k+lambda+1}(r^2) e^{-r^2/2}`, paired with `x M_k`).
pub fn eigen_profile<T: Scalar>(lambda: T, parity: Parity, j: usize, k: usize) -> RadialProfile<T> {
    let a = lambda
        + T::of_usize(k)
        + match parity {
            Parity::Even => T::zero(),
            Parity::Odd => T::one(),
        };
    RadialProfile::real_fn(move |r: T| laguerre(j, a, r * r) * (-r * r / T::of(2.0)).exp())
}

/// Quadrature against closed form on one Clifford-Hermite function.
#[derive(Clone, Debug)]
pub struct EigenCheck<T: Scalar> {
    pub closed: Complex<T>,
    /// Least-squares ratio between the transformed and the original profile.
    pub quadrature: Complex<T>,
    /// `max |F(f0) - closed f0| / max |closed f0|` over the sample radii.
    pub gap: T,
}

pub fn eigen_check<T: Scalar>(
    spec: &KernelSpecA<T>,
    parity: Parity,
    j: usize,
    k: usize,
    radii: &[T],
) -> Result<EigenCheck<T>> {
    let closed = eigenvalue_a(spec, parity, j, k)?;
    let f0 = eigen_profile(spec.lambda(), parity, j, k);
    let g0 = radial_transform(spec, &f0, k, parity)?;
    let (mut num, mut den, mut gap, mut peak) = (Complex::new(T::zero(), T::zero()), T::zero(), T::zero(), T::zero());
    for &s in radii {
        let (f, g) = (f0.eval(s).re, g0.eval(s));
        num += g * f;
        den += f * f;
        gap = gap.max((g - closed * f).norm());
        peak = peak.max((closed * f).norm());
    }
    Ok(EigenCheck {
        closed,
        quadrature: num / den,
        gap: gap / peak,
    })
}

fn ensure_real<T: Scalar>(f0: &RadialProfile<T>, grid: &RadialGrid<T>, what: &str) -> Result<()> {
    let peak = grid.nodes.iter().fold(T::zero(), |acc, &r| acc.max(f0.eval(r).norm()));
    let imag = grid.nodes.iter().fold(T::zero(), |acc, &r| acc.max(f0.eval(r).im.abs()));
    if imag > T::structural_tol() * peak.max(T::min_positive_value()) {
        return Err(Error::Unsupported(format!("{what} needs a real-valued radial profile")));
    }
    Ok(())
}

/// `tau_y f(x) = C exp(-i/2 cot(alpha)(|x|^2 - |y|^2)) H_lambda[F_alpha f](|x - y| / sin(alpha))`
/// pieces that do not depend on the evaluation points.
struct Translator<T: Scalar> {
    lambda: T,
    half_cot: T,
    sin: T,
    constant: Complex<T>,
    /// `(r, w r^(2 lambda + 1) F_alpha f(r))` on the radial grid.
    weighted: Vec<(T, Complex<T>)>,
}

impl<T: Scalar> Translator<T> {
    fn new(spec: &KernelSpecA<T>, f0: &RadialProfile<T>) -> Result<Self> {
        let grid = radial_grid(spec);
        ensure_real(f0, &grid, "generalized translation")?;
        let (n, r_max) = spec.quadrature();
        let fractional = KernelSpecA::preset(
            spec.m(),
            PresetId::FractionalCft {
                alpha: spec.angle(),
                beta: T::zero(),
            },
            0,
        )?
        .with_quadrature(n, r_max)?;
        let f_alpha = radial_transform(&fractional, f0, 0, Parity::Even)?;
        let lambda = spec.lambda();
        let power = T::of(2.0) * lambda + T::one();
        check_decay(&f_alpha, power, &grid, T::of(DECAY_TOL))?;
        let weighted = grid
            .nodes
            .par_iter()
            .zip(&grid.weights)
            .map(|(&r, &w)| (r, f_alpha.eval(r) * (w * r.powf(power))))
            .collect();
        let sin = spec.angle().sin();
        Ok(Self {
            lambda,
            half_cot: spec.angle().cos() / sin / T::of(2.0),
            sin,
            constant: translation_constant(spec),
            weighted,
        })
    }

    /// `H_lambda[F_alpha f](d)`.
    fn hankel(&self, d: T) -> Complex<T> {
        self.weighted
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, &(r, v)| acc + v * scaled_bessel(self.lambda, r * d))
    }

    /// `H_lambda[F_alpha f]` at Chebyshev points on `[0, d_max]`, for
    /// evaluation at many distances.
    fn tabulate(&self, d_max: T) -> ChebyshevTable<T> {
        ChebyshevTable::new(d_max, CHEBYSHEV_POINTS, |d| self.hankel(d))
    }

    fn phase(&self, nx: T, ny: T) -> Complex<T> {
        Complex::from_polar(T::one(), -self.half_cot * (nx * nx - ny * ny)) * self.constant
    }
}

const CHEBYSHEV_POINTS: usize = 256;

/// Barycentric interpolation at Chebyshev points of the second kind.
struct ChebyshevTable<T: Scalar> {
    nodes: Vec<T>,
    values: Vec<Complex<T>>,
}

impl<T: Scalar> ChebyshevTable<T> {
    fn new(d_max: T, n: usize, f: impl Fn(T) -> Complex<T> + Sync) -> Self {
        let half = d_max / T::of(2.0);
        let nodes: Vec<T> = (0..=n)
            .map(|j| half * (T::one() - (T::PI() * T::of_usize(j) / T::of_usize(n)).cos()))
            .collect();
        let values = nodes.par_iter().map(|&d| f(d)).collect();
        Self { nodes, values }
    }

    fn eval(&self, d: T) -> Complex<T> {
        let n = self.nodes.len() - 1;
        let mut num = Complex::new(T::zero(), T::zero());
        let mut den = T::zero();
        for (j, (&x, &v)) in self.nodes.iter().zip(&self.values).enumerate() {
            let diff = d - x;
            if diff == T::zero() {
                return v;
            }
            let mut w = if j % 2 == 0 { T::one() } else { -T::one() };
            if j == 0 || j == n {
                w /= T::of(2.0);
            }
            let c = w / diff;
            num += v * c;
            den += c;
        }
        num / den
    }
}

/// Leading constant `2 alpha_0 / Gamma(lambda+1) (1 - exp(2 i alpha))^(-m/2)`
/// of the radial translation formula; at `alpha = pi/2` it reduces to
/// `2^-lambda alpha_0 / Gamma(lambda+1)`.
pub fn translation_constant<T: Scalar>(spec: &KernelSpecA<T>) -> Complex<T> {
    let lam = spec.lambda();
    let base = Complex::new(T::one(), T::zero()) - Complex::from_polar(T::one(), T::of(2.0) * spec.angle());
    base.powf(-T::of_usize(spec.m()) / T::of(2.0)) * spec.alpha_k()[0] * (T::of(2.0) / gamma(lam + T::one()))
}

/// Generalized translation of a real radial `f0` by `y`, at each point of
/// `x_eval`, through the Hankel transform of its fractional Fourier transform.
pub fn translate_radial<T: Scalar>(
    spec: &KernelSpecA<T>,
    f0: &RadialProfile<T>,
    y: &[T],
    x_eval: &[Vec<T>],
) -> Result<Vec<Complex<T>>> {
    let m = spec.m();
    if y.len() != m || x_eval.iter().any(|x| x.len() != m) {
        return Err(Error::DimensionMismatch(format!("translation points need {m} coordinates")));
    }
    let tr = Translator::new(spec, f0)?;
    let ny = super::kernel::norm(y);
    Ok(x_eval
        .par_iter()
        .map(|x| {
            let diff: Vec<T> = x.iter().zip(y).map(|(&a, &b)| a - b).collect();
            let d = super::kernel::norm(&diff) / tr.sin;
            tr.phase(super::kernel::norm(x), ny) * tr.hankel(d)
        })
        .collect())
}

/// The same translation evaluated from its definition,
/// `tau_y f(x) = rho(-alpha) int K~(xi, x) K(y, xi) F_K f(|xi|) d(xi)`, in polar
/// form: the transform of `f` from [`radial_transform`] against the
/// truncated spherical mean of the kernel product (series up to `k_max`).
/// Returns full multivectors; their bivector parts vanish.
pub fn translate_radial_spectral<T: Scalar>(
    spec: &KernelSpecA<T>,
    f0: &RadialProfile<T>,
    y: &[T],
    x_eval: &[Vec<T>],
) -> Result<Vec<Multivector<T>>> {
    let m = spec.m();
    if y.len() != m || x_eval.iter().any(|x| x.len() != m) {
        return Err(Error::DimensionMismatch(format!("translation points need {m} coordinates")));
    }
    let grid = radial_grid(spec);
    ensure_real(f0, &grid, "generalized translation")?;
    let transformed = radial_transform(spec, f0, 0, Parity::Even)?;
    // rho(-alpha) times the sphere area 2 pi^(m/2) / Gamma(m/2).
    let half_m = T::of_usize(m) / T::of(2.0);
    let outer = rho(m, -spec.angle()) * (T::of(2.0) * T::PI().powf(half_m) / gamma(half_m));
    let weighted: Vec<(T, Complex<T>)> = grid
        .nodes
        .par_iter()
        .zip(&grid.weights)
        .map(|(&r, &w)| (r, transformed.eval(r) * (w * r.powi(m as i32 - 1))))
        .collect();
    x_eval
        .par_iter()
        .map(|x| {
            let dim = crate::AlgebraDim::new(m)?;
            let mut acc = Multivector::zero(dim);
            for &(r, v) in &weighted {
                let mean = sphere_integral_check(spec, r, x, y, spec.k_max())?.lhs;
                acc += &mean.scale(v);
            }
            Ok(acc.scale(outer))
        })
        .collect()
}

/// Convolution products of a real radial `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvVariant {
    /// `rho^-1 F^-1(F(f) F(g))`.
    CL,
    /// `rho^-1 F^-1(F(g) F(f))`.
    CR,
    /// `int tau_y f(x) g(y) dy`.
    L,
    /// `int f(y) tau_y g(x) dy`.
    R,
}

impl std::str::FromStr for ConvVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cl" => Ok(Self::CL),
            "cr" => Ok(Self::CR),
            "l" => Ok(Self::L),
            "r" => Ok(Self::R),
            other => Err(Error::Parse(format!("unknown radial convolution variant {other:?}"))),
        }
    }
}

/// How a convolution is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvRoute {
    /// Through the transform: products of radial transforms, then the inverse.
    Spectral,
    /// From the variant's own definition; for `L` and `R` this integrates the
    /// generalized translation over `y` in polar coordinates.
    Direct,
}

/// Angular and radial quadrature for the translation integrals.
const CONV_RADIAL_NODES: usize = 128;
const CONV_ANGULAR_NODES: usize = 48;

/// Convolution of a real radial `f0` with `g0(|x|) P(x)`; returns `h0` at
/// `radii`, where the result is `h0(|x|) P(x)`.
///
/// The spectral route supports every variant. The direct route integrates
/// the translation definition for `L` and `R` (`R` needs a real radial `g`);
/// for `CL` and `CR` it multiplies the transforms in the variant's order,
/// which for these shapes is the spectral route.
pub fn convolve_radial<T: Scalar>(
    spec: &KernelSpecA<T>,
    f0: &RadialProfile<T>,
    g0: &RadialProfile<T>,
    harmonic: Harmonic,
    variant: ConvVariant,
    route: ConvRoute,
    radii: &[T],
) -> Result<Vec<Complex<T>>> {
    let grid = radial_grid(spec);
    ensure_real(f0, &grid, "radial convolution")?;
    match (route, variant) {
        (ConvRoute::Spectral, _) | (ConvRoute::Direct, ConvVariant::CL | ConvVariant::CR) => {
            convolve_spectral(spec, f0, g0, harmonic, variant, radii)
        }
        (ConvRoute::Direct, ConvVariant::L) => convolve_by_translation(spec, f0, g0, harmonic, radii),
        (ConvRoute::Direct, ConvVariant::R) => {
            if harmonic != Harmonic::M0 {
                return Err(Error::Unsupported(
                    "the direct right convolution translates g, which must be radial".into(),
                ));
            }
            ensure_real(g0, &grid, "direct right convolution")?;
            convolve_by_translation(spec, g0, f0, Harmonic::M0, radii)
        }
    }
}

fn convolve_spectral<T: Scalar>(
    spec: &KernelSpecA<T>,
    f0: &RadialProfile<T>,
    g0: &RadialProfile<T>,
    harmonic: Harmonic,
    variant: ConvVariant,
    radii: &[T],
) -> Result<Vec<Complex<T>>> {
    let k = harmonic.degree();
    let ff = radial_transform(spec, f0, 0, Parity::Even)?;
    let fg = radial_transform(spec, g0, k, Parity::Even)?;
    // F(f) is a complex scalar profile, so both orders give the same product
    // for these shapes; the order follows the definition anyway.
    let product = match variant {
        ConvVariant::CR => RadialProfile::from_fn(move |s| fg.eval(s) * ff.eval(s)),
        _ => RadialProfile::from_fn(move |s| ff.eval(s) * fg.eval(s)),
    };
    let grid = radial_grid(spec);
    let samples: Vec<Complex<T>> = grid.nodes.par_iter().map(|&s| product.eval(s)).collect();
    let power = spec.m() - 1 + k;
    let peak = grid
        .nodes
        .iter()
        .zip(&samples)
        .fold(T::zero(), |acc, (&r, v)| acc.max(v.norm() * r.powi(power as i32)));
    let (r_end, v_end) = (grid.nodes[grid.len() - 1], samples[grid.len() - 1]);
    let tail = v_end.norm() * r_end.powi(power as i32);
    if tail > T::of(DECAY_TOL) * peak.max(T::min_positive_value()) {
        return Err(Error::NonDecaying {
            tail: (tail / peak).as_f64(),
            tol: DECAY_TOL,
        });
    }
    let inv = inverse_spec(spec)?;
    let h = transform_samples(&inv, &grid, &samples, inv.even_factor(k)?, power, k);
    let scale = rho(spec.m(), spec.angle()).inv();
    Ok(radii.par_iter().map(|&s| h.eval(s) * scale).collect())
}

/// `h(x) = int tau_y a(x) b(|y|) P(y) dy` with `x = s e_1`. The spherical mean
/// over `y = rho eta` reduces to an integral over the angle `theta` between
/// `eta` and `e_1` with weight `(2/pi) sin^2(theta)` (for `m = 4`) and, for
/// `P = M_1`, the factor `rho cos(theta)`.
fn convolve_by_translation<T: Scalar>(
    spec: &KernelSpecA<T>,
    a0: &RadialProfile<T>,
    b0: &RadialProfile<T>,
    harmonic: Harmonic,
    radii: &[T],
) -> Result<Vec<Complex<T>>> {
    let m = spec.m();
    if m != 4 {
        return Err(Error::Unsupported("direct translation convolution is implemented for m = 4".into()));
    }
    if harmonic == Harmonic::M1 && radii.iter().any(|&s| s <= T::zero()) {
        return Err(Error::Unsupported("M1 profiles are read off at positive radii".into()));
    }
    let tr = Translator::new(spec, a0)?;
    let (_, r_max) = spec.quadrature();
    let (rs, rw) = gauss_legendre(CONV_RADIAL_NODES, T::zero(), r_max);
    let (ts, tw) = gauss_legendre(CONV_ANGULAR_NODES, T::zero(), T::PI());
    let sphere_area = T::of(2.0) * T::PI() * T::PI();
    let angular = T::of(2.0) / T::PI();
    let b_vals: Vec<Complex<T>> = rs.iter().map(|&r| b0.eval(r)).collect();
    let s_max = radii.iter().fold(T::zero(), |acc, &s| acc.max(s));
    let table = tr.tabulate((s_max + r_max) / tr.sin.abs());
    check_decay(b0, T::of_usize(m - 1 + harmonic.degree()), &RadialGrid::gauss_legendre(8, r_max), T::of(DECAY_TOL))?;
    Ok(radii
        .par_iter()
        .map(|&s| {
            let mut total = Complex::new(T::zero(), T::zero());
            for (ir, &r) in rs.iter().enumerate() {
                let mut inner = Complex::new(T::zero(), T::zero());
                for (it, &t) in ts.iter().enumerate() {
                    let (st, ct) = (t.sin(), t.cos());
                    let d2 = (s * s + r * r - T::of(2.0) * s * r * ct).max(T::zero());
                    let mut v = table.eval(d2.sqrt() / tr.sin.abs()) * (tw[it] * st * st);
                    if harmonic == Harmonic::M1 {
                        v *= r * ct ;
                    }
                    inner += v;
                }
                total += inner * tr.phase(s, r) * b_vals[ir] * (rw[ir] * r.powi(m as i32 - 1));
            }
            let h = total * (sphere_area * angular);
            match harmonic {
                Harmonic::M0 => h,
                Harmonic::M1 => h / s,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

    fn gaussian() -> RadialProfile<f64> {
        RadialProfile::real_fn(|r: f64| (-r * r / 2.0).exp())
    }

    fn radii(n: usize, top: f64) -> Vec<f64> {
        (0..n).map(|i| top * i as f64 / (n - 1) as f64).collect()
    }

    fn specs() -> Vec<KernelSpecA<f64>> {
        vec![
            KernelSpecA::preset(4, PresetId::Classical, 64).unwrap(),
            KernelSpecA::preset(4, PresetId::CliffordMinus, 64).unwrap(),
            KernelSpecA::preset(4, PresetId::FractionalCft { alpha: FRAC_PI_2, beta: FRAC_PI_4 }, 64).unwrap(),
            KernelSpecA::preset(4, PresetId::FractionalCft { alpha: FRAC_PI_3, beta: 0.4 }, 64).unwrap(),
        ]
    }

    #[test]
    fn gaussian_is_fixed_by_classical_transform() {
        let spec = KernelSpecA::preset(4, PresetId::Classical, 64).unwrap();
        let g = radial_transform(&spec, &gaussian(), 0, Parity::Even).unwrap();
        for s in radii(21, 5.0) {
            assert!((g.eval(s) - Complex::new((-s * s / 2.0).exp(), 0.0)).norm() < 1e-12);
        }
        let zero = radial_transform(&spec, &RadialProfile::real_fn(|_| 0.0), 1, Parity::Odd).unwrap();
        assert_eq!(zero.eval(1.3), Complex::new(0.0, 0.0));
        assert!(radial_transform(&spec, &gaussian(), 2, Parity::Even).is_err());
    }

    #[test]
    fn eigenvalues_match_quadrature() {
        for spec in specs() {
            for parity in [Parity::Even, Parity::Odd] {
                for j in 0..4 {
                    for k in 0..2 {
                        let c = eigen_check(&spec, parity, j, k, &radii(41, 5.0)).unwrap();
                        assert!(c.gap < 1e-9, "{parity:?} j {j} k {k}: {}", c.gap);
                        assert!((c.quadrature - c.closed).norm() < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn non_decaying_input_is_rejected() {
        let spec = KernelSpecA::preset(4, PresetId::Classical, 8).unwrap();
        let flat = RadialProfile::real_fn(|_| 1.0);
        assert!(matches!(
            radial_transform(&spec, &flat, 0, Parity::Even),
            Err(Error::NonDecaying { .. })
        ));
    }

    #[test]
    fn right_angle_translation_is_a_shift() {
        let spec = KernelSpecA::preset(4, PresetId::<f64>::Classical, 64).unwrap();
        assert!((translation_constant(&spec) - Complex::new(1.0, 0.0)).norm() < 1e-12);
        let y = [0.6, -0.3, 1.1, 0.2];
        let xs: Vec<Vec<f64>> = (0..30)
            .map(|i| {
                let t = i as f64 * 0.37;
                vec![3.0 * t.cos() * (t * 0.3).sin(), 2.0 * t.sin(), 1.5 * (t * 0.7).cos(), -0.5 * t.sin()]
            })
            .collect();
        let got = translate_radial(&spec, &gaussian(), &y, &xs).unwrap();
        for (x, v) in xs.iter().zip(&got) {
            let d2: f64 = x.iter().zip(&y).map(|(a, b)| (a - b) * (a - b)).sum();
            assert!((v - Complex::new((-d2 / 2.0).exp(), 0.0)).norm() < 1e-10);
        }
        let at_origin = translate_radial(&spec, &gaussian(), &[0.0; 4], &[vec![0.4, 0.5, 0.0, -0.2]]).unwrap();
        assert!((at_origin[0].re - (-0.45f64 / 2.0).exp()).abs() < 1e-10);
    }

    #[test]
    fn translation_closed_form_matches_definition() {
        let spec = KernelSpecA::preset(4, PresetId::FractionalCft { alpha: FRAC_PI_3, beta: 0.5 }, 96).unwrap();
        let y = [0.3, -0.5, 0.2, 0.4];
        let xs = vec![vec![0.1, 0.2, -0.3, 0.5], vec![1.0, -0.4, 0.6, 0.0], vec![-0.7, 0.9, 0.3, -0.8]];
        let closed = translate_radial(&spec, &gaussian(), &y, &xs).unwrap();
        let direct = translate_radial_spectral(&spec, &gaussian(), &y, &xs).unwrap();
        for (c, d) in closed.iter().zip(&direct) {
            assert!((d.scalar_part() - c).norm() < 1e-9, "{c} vs {}", d.scalar_part());
            assert!(d.grade_part(2).max_abs() < 1e-12);
        }
    }

    #[test]
    fn complex_profiles_cannot_be_translated() {
        let spec = KernelSpecA::preset(4, PresetId::Classical, 16).unwrap();
        let f = RadialProfile::from_fn(|r: f64| Complex::new(0.0, (-r * r).exp()));
        assert!(translate_radial(&spec, &f, &[0.0; 4], &[vec![0.0; 4]]).is_err());
    }

    #[test]
    fn classical_gaussian_convolution() {
        let spec = KernelSpecA::preset(4, PresetId::Classical, 64).unwrap();
        let rs = radii(9, 4.0);
        for variant in [ConvVariant::CL, ConvVariant::CR] {
            let h = convolve_radial(&spec, &gaussian(), &gaussian(), Harmonic::M0, variant, ConvRoute::Spectral, &rs).unwrap();
            for (s, v) in rs.iter().zip(&h) {
                assert!((v - Complex::new(PI * PI * (-s * s / 4.0).exp(), 0.0)).norm() < 1e-9);
            }
        }
        let zero = convolve_radial(
            &spec,
            &gaussian(),
            &RadialProfile::real_fn(|_| 0.0),
            Harmonic::M1,
            ConvVariant::CL,
            ConvRoute::Spectral,
            &rs,
        )
        .unwrap();
        assert!(zero.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn four_variants_coincide_for_radial_f() {
        let rs = radii(7, 3.0);
        let laguerre_g = RadialProfile::real_fn(|r: f64| laguerre(2, 1.0, r * r) * (-r * r / 2.0).exp());
        for spec in [
            KernelSpecA::preset(4, PresetId::Classical, 64).unwrap(),
            KernelSpecA::preset(4, PresetId::FractionalCft { alpha: FRAC_PI_3, beta: 0.4 }, 64).unwrap(),
        ] {
            for g in [gaussian(), laguerre_g.clone()] {
                let run = |variant, route| {
                    convolve_radial(&spec, &gaussian(), &g, Harmonic::M0, variant, route, &rs).unwrap()
                };
                let cl = run(ConvVariant::CL, ConvRoute::Spectral);
                for (variant, route) in [
                    (ConvVariant::CR, ConvRoute::Spectral),
                    (ConvVariant::L, ConvRoute::Direct),
                    (ConvVariant::R, ConvRoute::Direct),
                ] {
                    let other = run(variant, route);
                    let gap = cl.iter().zip(&other).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
                    assert!(gap < 1e-8, "{variant:?}: {gap}");
                }
            }
        }
    }

    #[test]
    fn left_translation_convolution_with_monogenic_factor() {
        let spec = KernelSpecA::preset(4, PresetId::FractionalCft { alpha: FRAC_PI_2, beta: FRAC_PI_4 }, 64).unwrap();
        let rs = vec![0.5, 1.0, 2.0];
        let g = RadialProfile::real_fn(|r: f64| (-r * r).exp());
        let spectral = convolve_radial(&spec, &gaussian(), &g, Harmonic::M1, ConvVariant::CL, ConvRoute::Spectral, &rs).unwrap();
        let direct = convolve_radial(&spec, &gaussian(), &g, Harmonic::M1, ConvVariant::L, ConvRoute::Direct, &rs).unwrap();
        for (a, b) in spectral.iter().zip(&direct) {
            assert!((a - b).norm() < 1e-8, "{a} vs {b}");
        }
        assert!(convolve_radial(&spec, &gaussian(), &g, Harmonic::M1, ConvVariant::R, ConvRoute::Direct, &rs).is_err());
    }

    #[test]
    fn harmonic_m1_is_monogenic() {
        // e1 d/dx1 + e2 d/dx2 applied to x1 - x2 e12 gives e1 - e2 e12 = 0.
        let dim = crate::AlgebraDim::new(4).unwrap();
        let e1 = Multivector::<f64>::generator(dim, 0);
        let e2 = Multivector::<f64>::generator(dim, 1);
        let d1 = Harmonic::M1.eval(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        let d2 = Harmonic::M1.eval(&[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!((&e1.gp(&d1) + &e2.gp(&d2)).max_abs() < 1e-15);
    }
}
