//! Radially symmetric hypercomplex transforms with Bessel-Gegenbauer series
//! kernels `K(x, y) = (A(w, z) + (x ^ y) B(w, z)) exp(i/2 cot(alpha) (|x|^2 + |y|^2))`.
//!
//! All numerics are one-dimensional: the transforms are evaluated on
//! `f0(|x|) M_k(x)` and `f0(|x|) x M_k(x)` through their radial reduction.

mod kernel;
mod radial;
mod sphere;

pub use kernel::{kernel_eval, KernelValue};
pub use radial::{
    convolve_radial, eigen_check, eigen_profile, radial_transform, translate_radial,
    translate_radial_spectral, translation_constant, ConvRoute, ConvVariant, EigenCheck, Harmonic,
};
pub use sphere::{sphere_integral_check, sphere_integral_quadrature, SphereCheck};

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::special::gamma;
use crate::{Error, Result, Scalar};

/// Parity of a Clifford-Hermite basis function: `f0 M_k` or `f0 x M_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// Named coefficient families.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PresetId<T: Scalar> {
    /// The Fourier transform, at angle `pi/2`.
    Classical,
    /// The Clifford-Fourier transform `F_-`, at angle `pi/2`.
    CliffordMinus,
    /// Fractional Clifford-Fourier transform with angle `alpha` and
    /// rotation `beta`; `beta = 0` is the fractional Fourier transform.
    FractionalCft { alpha: T, beta: T },
}

impl<T: Scalar> PresetId<T> {
    pub fn angle(&self) -> T {
        match self {
            Self::Classical | Self::CliffordMinus => T::FRAC_PI_2(),
            Self::FractionalCft { alpha, .. } => *alpha,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Classical => "classical",
            Self::CliffordMinus => "clifford_minus",
            Self::FractionalCft { .. } => "fractional_cft",
        }
    }

    /// Parses `classical`, `clifford_minus` or `fractional_cft[:beta]`; the
    /// fractional preset takes its angle from `alpha` (default `pi/2`).
    pub fn parse(text: &str, alpha: Option<T>) -> Result<Self> {
        let (name, arg) = match text.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a.trim())),
            None => (text.trim(), None),
        };
        let unexpected = |what: &str| Error::Parse(format!("preset {name} takes no {what}"));
        match name {
            "classical" | "clifford_minus" => {
                if arg.is_some() {
                    return Err(unexpected("parameter"));
                }
                if alpha.is_some_and(|a| (a - T::FRAC_PI_2()).abs() > T::structural_tol()) {
                    return Err(unexpected("angle other than pi/2"));
                }
                Ok(if name == "classical" {
                    Self::Classical
                } else {
                    Self::CliffordMinus
                })
            }
            "fractional_cft" => {
                let beta = match arg {
                    Some(a) => T::of(
                        f64::from_str(a).map_err(|_| Error::Parse(format!("bad rotation angle {a:?}")))?,
                    ),
                    None => T::zero(),
                };
                Ok(Self::FractionalCft {
                    alpha: alpha.unwrap_or_else(T::FRAC_PI_2),
                    beta,
                })
            }
            _ => Err(Error::Parse(format!(
                "unknown preset {name:?} (classical, clifford_minus, fractional_cft[:beta])"
            ))),
        }
    }
}

impl<T: Scalar> fmt::Display for PresetId<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::FractionalCft { alpha, beta } => write!(f, "fractional_cft(alpha={alpha}, beta={beta})"),
            other => f.write_str(other.name()),
        }
    }
}

pub const DEFAULT_K_MAX: usize = 64;
pub const DEFAULT_QUAD_NODES: usize = 512;
pub const DEFAULT_QUAD_RMAX: f64 = 12.0;

/// Kernel coefficients `alpha_k`, `beta_k` (`k = 0..=k_max`) at an angle,
/// plus the radial quadrature used by the transforms.
#[derive(Clone, Debug)]
pub struct KernelSpecA<T: Scalar> {
    m: usize,
    angle: T,
    alpha: Vec<Complex<T>>,
    beta: Vec<Complex<T>>,
    quad_nodes: usize,
    quad_rmax: T,
}

fn cplx<T: Scalar>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

/// `i^n` for any integer `n`.
pub(crate) fn i_pow<T: Scalar>(n: i64) -> Complex<T> {
    match n.rem_euclid(4) {
        0 => cplx(T::one(), T::zero()),
        1 => cplx(T::zero(), T::one()),
        2 => cplx(-T::one(), T::zero()),
        _ => cplx(T::zero(), -T::one()),
    }
}

fn sign<T: Scalar>(k: usize) -> T {
    if k.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    }
}

impl<T: Scalar> KernelSpecA<T> {
    /// Coefficient slices must have equal length `k_max + 1` and `beta[0]`
    /// must vanish. Dimensions `3..=8`; the angle must lie in `(-pi, pi)`
    /// away from `0`.
    pub fn new(m: usize, angle: T, alpha: Vec<Complex<T>>, beta: Vec<Complex<T>>) -> Result<Self> {
        if !(3..=crate::AlgebraDim::MAX).contains(&m) {
            return Err(Error::Unsupported(format!(
                "series kernels need 3 <= m <= 8 (got m = {m})"
            )));
        }
        let tol = T::structural_tol();
        if !angle.is_finite() || angle.abs() < tol || (angle.abs() - T::PI()).abs() < tol || angle.abs() > T::PI() {
            return Err(Error::Unsupported(format!("kernel angle {angle} must lie in (-pi, pi) minus 0")));
        }
        if alpha.is_empty() || alpha.len() != beta.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} alpha_k against {} beta_k",
                alpha.len(),
                beta.len()
            )));
        }
        if beta[0].norm() > T::zero() {
            return Err(Error::Unsupported("beta_0 must be zero".into()));
        }
        Ok(Self {
            m,
            angle,
            alpha,
            beta,
            quad_nodes: DEFAULT_QUAD_NODES,
            quad_rmax: T::of(DEFAULT_QUAD_RMAX),
        })
    }

    pub fn preset(m: usize, id: PresetId<T>, k_max: usize) -> Result<Self> {
        let angle = id.angle();
        let lam = T::of_usize(m) / T::of(2.0) - T::one();
        let two_l = T::of(2.0).powf(lam);
        let g_l = gamma(lam);
        let g_l1 = gamma(lam + T::one());
        let half = T::of(0.5);
        let mut alpha = Vec::with_capacity(k_max + 1);
        let mut beta = Vec::with_capacity(k_max + 1);
        for k in 0..=k_max {
            let kk = T::of_usize(k);
            let (a, b) = match id {
                PresetId::Classical => (i_pow::<T>(-(k as i64)) * (two_l * g_l * (kk + lam)), Complex::new(T::zero(), T::zero())),
                PresetId::CliffordMinus => {
                    // i^(2 lambda + 2) = i^m
                    let im = i_pow::<T>(m as i64);
                    let sk = cplx(sign::<T>(k), T::zero());
                    let a = (im + sk) * (half * two_l * g_l1) - (im - sk) * (half * two_l * g_l * (kk + lam));
                    let b = (im + sk) * (-two_l * g_l1);
                    (a, b)
                }
                PresetId::FractionalCft { alpha: ang, beta: rot } => {
                    let ik = i_pow::<T>(-(k as i64));
                    let e1 = Complex::from_polar(T::one(), rot * (kk + T::of(2.0) * lam));
                    let e2 = Complex::from_polar(T::one(), -rot * kk);
                    let a = ik * (e1 + e2) * (half * two_l * g_l * (kk + lam)) - ik * (e1 - e2) * (half * two_l * g_l1);
                    let b = ik * (e1 - e2) * (two_l * g_l1 / ang.sin());
                    (a, b)
                }
            };
            alpha.push(a);
            beta.push(b);
        }
        beta[0] = Complex::new(T::zero(), T::zero());
        Self::new(m, angle, alpha, beta)
    }

    /// Replaces the radial quadrature (Gauss-Legendre nodes on `[0, r_max]`).
    pub fn with_quadrature(mut self, nodes: usize, r_max: T) -> Result<Self> {
        if nodes < 8 || r_max <= T::zero() {
            return Err(Error::Unsupported("quadrature needs >= 8 nodes on a positive range".into()));
        }
        self.quad_nodes = nodes;
        self.quad_rmax = r_max;
        Ok(self)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn lambda(&self) -> T {
        T::of_usize(self.m) / T::of(2.0) - T::one()
    }

    pub fn angle(&self) -> T {
        self.angle
    }

    pub fn k_max(&self) -> usize {
        self.alpha.len() - 1
    }

    pub fn alpha_k(&self) -> &[Complex<T>] {
        &self.alpha
    }

    pub fn beta_k(&self) -> &[Complex<T>] {
        &self.beta
    }

    pub fn quadrature(&self) -> (usize, T) {
        (self.quad_nodes, self.quad_rmax)
    }

    /// Largest `z = |x||y|/sin(alpha)` for which the truncated series is
    /// trusted: the Bessel factors fall off like `(e z / 2k)^k` past `k ~ z`.
    pub fn z_max(&self) -> T {
        T::of_usize(self.k_max()) / T::of(3.0)
    }

    /// `rho = (pi (1 - exp(-2 i alpha)))^(-m/2)`.
    pub fn rho(&self) -> Complex<T> {
        rho(self.m, self.angle)
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k > self.k_max() {
            return Err(Error::InvalidIndex(format!("mode {k} beyond k_max = {}", self.k_max())));
        }
        Ok(())
    }

    /// `lambda/(lambda+k) alpha_k - sin(alpha) k/(2(lambda+k)) beta_k`.
    pub fn even_factor(&self, k: usize) -> Result<Complex<T>> {
        self.check_k(k)?;
        let (lam, kk) = (self.lambda(), T::of_usize(k));
        Ok(self.alpha[k] * (lam / (lam + kk)) - self.beta[k] * (self.angle.sin() * kk / (T::of(2.0) * (lam + kk))))
    }

    /// `lambda/(lambda+k+1) alpha_{k+1} + sin(alpha) (k+1+2 lambda)/(2(lambda+k+1)) beta_{k+1}`.
    pub fn odd_factor(&self, k: usize) -> Result<Complex<T>> {
        self.check_k(k + 1)?;
        let (lam, k1) = (self.lambda(), T::of_usize(k + 1));
        Ok(self.alpha[k + 1] * (lam / (lam + k1))
            + self.beta[k + 1] * (self.angle.sin() * (k1 + T::of(2.0) * lam) / (T::of(2.0) * (lam + k1))))
    }

    /// `lambda/(lambda+k) alpha_k + sin(alpha) (k+2 lambda)/(2(lambda+k)) beta_k`,
    /// the companion of [`Self::even_factor`] in the inverse normalizer.
    fn even_factor_plus(&self, k: usize) -> Complex<T> {
        let (lam, kk) = (self.lambda(), T::of_usize(k));
        self.alpha[k] * (lam / (lam + kk))
            + self.beta[k] * (self.angle.sin() * (kk + T::of(2.0) * lam) / (T::of(2.0) * (lam + kk)))
    }

    /// Coefficient dump: `k,re_alpha,im_alpha,re_beta,im_beta,re_n,im_n`.
    /// Modes with a vanishing normalizer print `nan` in the last two columns.
    pub fn coefficients_csv(&self) -> String {
        let norms = normalizers(self);
        let mut out = String::from("k,re_alpha,im_alpha,re_beta,im_beta,re_n,im_n\n");
        for (k, norm) in norms.iter().enumerate().take(self.k_max() + 1) {
            let (a, b) = (self.alpha[k], self.beta[k]);
            let (nr, ni) = match norm {
                Some(n) => (n.re.as_f64(), n.im.as_f64()),
                None => (f64::NAN, f64::NAN),
            };
            out.push_str(&format!(
                "{k},{:.17e},{:.17e},{:.17e},{:.17e},{nr:.17e},{ni:.17e}\n",
                a.re.as_f64(),
                a.im.as_f64(),
                b.re.as_f64(),
                b.im.as_f64(),
            ));
        }
        out
    }
}

/// `(pi (1 - exp(-2 i alpha)))^(-m/2)` on the principal branch.
pub fn rho<T: Scalar>(m: usize, angle: T) -> Complex<T> {
    let base = (cplx(T::one(), T::zero()) - Complex::from_polar(T::one(), -T::of(2.0) * angle)) * T::PI();
    base.powf(-T::of_usize(m) / T::of(2.0))
}

/// Eigenvalue on `psi_{2j,k}` (even) or `psi_{2j+1,k}` (odd):
/// `2^-lambda / Gamma(lambda+1) * factor * i^k' exp(-i alpha (k' + 2j))` with
/// `k' = k` or `k + 1`.
pub fn eigenvalue_a<T: Scalar>(spec: &KernelSpecA<T>, parity: Parity, j: usize, k: usize) -> Result<Complex<T>> {
    let lam = spec.lambda();
    let (factor, kk) = match parity {
        Parity::Even => (spec.even_factor(k)?, k),
        Parity::Odd => (spec.odd_factor(k)?, k + 1),
    };
    let pre = T::of(2.0).powf(-lam) / gamma(lam + T::one());
    let phase = Complex::from_polar(T::one(), -spec.angle * T::of_usize(kk + 2 * j));
    Ok(factor * pre * i_pow::<T>(kk as i64) * phase)
}

/// Coefficients of the inverse kernel `(A~ + (x ^ y) B~) exp(-i/2 cot(alpha)(...))`.
#[derive(Clone, Debug)]
pub struct InverseCoeffs<T: Scalar> {
    /// `A~` series coefficients `(alpha_k + beta_k sin(alpha)) / N_k`.
    pub s: Vec<Complex<T>>,
    /// `B~` series coefficients `-beta_k / N_k`.
    pub t: Vec<Complex<T>>,
    pub n: Vec<Complex<T>>,
}

fn normalizers<T: Scalar>(spec: &KernelSpecA<T>) -> Vec<Option<Complex<T>>> {
    let lam = spec.lambda();
    let g = gamma(lam + T::one());
    let denom = T::of(2.0).powf(T::of(2.0) * lam) * g * g;
    let sin = spec.angle.sin().abs();
    (0..=spec.k_max())
        .map(|k| {
            let e = spec.even_factor(k).expect("k within range");
            let n = e * spec.even_factor_plus(k) / denom;
            let scale = spec.alpha[k].norm() + sin * spec.beta[k].norm();
            if n.norm() <= T::structural_tol() * scale * scale / denom {
                None
            } else {
                Some(n)
            }
        })
        .collect()
}

pub fn inverse_coeffs<T: Scalar>(spec: &KernelSpecA<T>) -> Result<InverseCoeffs<T>> {
    let sin = spec.angle.sin();
    let mut out = InverseCoeffs {
        s: Vec::new(),
        t: Vec::new(),
        n: Vec::new(),
    };
    for (k, n) in normalizers(spec).into_iter().enumerate() {
        let n = n.ok_or(Error::NotInvertible(k))?;
        out.s.push((spec.alpha[k] + spec.beta[k] * sin) / n);
        out.t.push(-spec.beta[k] / n);
        out.n.push(n);
    }
    Ok(out)
}

/// The inverse transform as a kernel of the same family: angle `-alpha`,
/// `alpha'_k = (-1)^k s_k`, `beta'_k = (-1)^(k+1) t_k`. The sign flips absorb
/// `z -> -z` in the Bessel factors, so its kernel equals the inverse kernel.
pub fn inverse_spec<T: Scalar>(spec: &KernelSpecA<T>) -> Result<KernelSpecA<T>> {
    let inv = inverse_coeffs(spec)?;
    let alpha = inv.s.iter().enumerate().map(|(k, s)| s * sign::<T>(k)).collect();
    let mut beta: Vec<Complex<T>> = inv.t.iter().enumerate().map(|(k, t)| t * sign::<T>(k + 1)).collect();
    beta[0] = Complex::new(T::zero(), T::zero());
    let mut out = KernelSpecA::new(spec.m, -spec.angle, alpha, beta)?;
    out.quad_nodes = spec.quad_nodes;
    out.quad_rmax = spec.quad_rmax;
    Ok(out)
}

/// Solves the two defining equations for `(gamma_k, delta_k)` of the inverse
/// kernel directly (2x2 complex system). `None` when the system is singular.
pub fn solve_inverse_system<T: Scalar>(spec: &KernelSpecA<T>, k: usize) -> Result<Option<(Complex<T>, Complex<T>)>> {
    let lam = spec.lambda();
    let kk = T::of_usize(k);
    let sin = spec.angle.sin();
    let g = gamma(lam + T::one());
    let rhs = cplx(sign::<T>(k) * g * g * T::of(2.0).powf(T::of(2.0) * lam), T::zero());
    let e_minus = spec.even_factor(k)?;
    let e_plus = spec.even_factor_plus(k);
    let p = cplx(lam / (lam + kk), T::zero());
    // e_minus (p g + q1 d) = rhs, e_plus (p g - q2 d) = rhs
    let q1 = cplx(sin * kk / (T::of(2.0) * (lam + kk)), T::zero());
    let q2 = cplx(sin * (kk + T::of(2.0) * lam) / (T::of(2.0) * (lam + kk)), T::zero());
    let (a11, a12, a21, a22) = (e_minus * p, e_minus * q1, e_plus * p, -e_plus * q2);
    let det = a11 * a22 - a12 * a21;
    let scale = (a11.norm() + a12.norm()) * (a21.norm() + a22.norm());
    if det.norm() <= T::structural_tol() * scale {
        return Ok(None);
    }
    let gk = (rhs * a22 - a12 * rhs) / det;
    let dk = (a11 * rhs - a21 * rhs) / det;
    Ok(Some((gk, dk)))
}
