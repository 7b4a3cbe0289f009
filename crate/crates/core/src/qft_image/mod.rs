//! Quaternionic specialization over `Cl(0,2)`: `i = e1`, `j = e2`, `k = e12`.
//!
//! Two-sided transform `exp(-mu x_1 u_1) f(x) exp(-nu x_2 u_2)`, its
//! convolution theorem for the classical convolution, the sixteen-term
//! Mustard formula, and an RGB filtering pipeline on top of them.

mod image;
mod ppm;

pub use image::{
    decode_rgb, directional_phase, encode_rgb, filter_field, filter_image, gaussian_lowpass, ColorBasis,
    DecodeReport, Provenance, QuaternionImage,
};
pub use ppm::{read_ppm, write_ppm, RgbImage};

use num_complex::Complex;

use crate::clifford::{comm_split, AlgebraDim, Multivector, RootOfMinusOne};
use crate::gft::{GftPlan, GridSpec, MultivectorField};
use crate::mustard::classical_convolve;
use crate::{Error, Result, Scalar};

/// Real quaternion `w + x i + y j + z k`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion<T: Scalar> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> Quaternion<T> {
    pub fn new(w: T, x: T, y: T, z: T) -> Self {
        Self { w, x, y, z }
    }

    /// Pure quaternion `x i + y j + z k`.
    pub fn pure(x: T, y: T, z: T) -> Self {
        Self::new(T::zero(), x, y, z)
    }

    pub fn to_multivector(self) -> Multivector<T> {
        let c = |v: T| Complex::new(v, T::zero());
        Multivector::from_coeffs(quaternion_dim(), vec![c(self.w), c(self.x), c(self.y), c(self.z)])
            .expect("four blades")
    }

    /// Fails unless `mv` lives in `Cl(0,2)` with imaginary parts below `1e-12`.
    pub fn from_multivector(mv: &Multivector<T>) -> Result<Self> {
        if mv.dim().m() != 2 {
            return Err(Error::DimensionMismatch(format!(
                "quaternions live in Cl(0,2), got Cl(0,{})",
                mv.dim().m()
            )));
        }
        let c = mv.coeffs();
        let imag = c.iter().fold(T::zero(), |acc, v| acc.max(v.im.abs()));
        if imag >= T::of(1e-12) {
            return Err(Error::Unsupported(format!("quaternion coefficients have imaginary part {imag}")));
        }
        Ok(Self::new(c[0].re, c[1].re, c[2].re, c[3].re))
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm(self) -> T {
        (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

impl<T: Scalar> std::ops::Mul for Quaternion<T> {
    type Output = Self;

    fn mul(self, o: Self) -> Self {
        Self::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

pub(crate) fn quaternion_dim() -> AlgebraDim {
    AlgebraDim::new(2).expect("m = 2")
}

/// Unit pure quaternion `a i + b j + c k` as a root of -1.
pub fn quaternion_root<T: Scalar>(a: T, b: T, c: T) -> Result<RootOfMinusOne<T>> {
    RootOfMinusOne::new(Quaternion::pure(a, b, c).to_multivector())
}

fn require_quaternion_field<T: Scalar>(f: &MultivectorField<T>, what: &str) -> Result<()> {
    if f.dim().m() != 2 || f.grid().ndim() != 2 {
        return Err(Error::DimensionMismatch(format!("{what}: expected a 2-axis Cl(0,2) field")));
    }
    Ok(())
}

/// Two-sided quaternion Fourier transform of `f`; the spectrum lives on the dual grid.
pub fn qft<T: Scalar>(
    mu: &RootOfMinusOne<T>,
    nu: &RootOfMinusOne<T>,
    f: &MultivectorField<T>,
) -> Result<MultivectorField<T>> {
    require_quaternion_field(f, "qft input")?;
    GftPlan::qft(f.grid().clone(), mu.clone(), nu.clone())?.forward(f)
}

/// Inverse of [`qft`] for a spectrum on the dual of `grid`.
pub fn qft_inverse<T: Scalar>(
    mu: &RootOfMinusOne<T>,
    nu: &RootOfMinusOne<T>,
    grid: &GridSpec<T>,
    spectrum: &MultivectorField<T>,
) -> Result<MultivectorField<T>> {
    require_quaternion_field(spectrum, "qft inverse input")?;
    GftPlan::qft(grid.clone(), mu.clone(), nu.clone())?.inverse(spectrum)
}

/// Pointwise split of `f` into its parts commuting (`.0`) and anticommuting (`.1`) with `b`.
pub fn split_field<T: Scalar>(
    f: &MultivectorField<T>,
    b: &Multivector<T>,
) -> Result<(MultivectorField<T>, MultivectorField<T>)> {
    let mut commuting = MultivectorField::zeros(f.grid().clone(), f.dim());
    let mut anti = MultivectorField::zeros(f.grid().clone(), f.dim());
    for flat in 0..f.len() {
        let (c, a) = comm_split(&f.get(flat), b)?;
        commuting.set(flat, &c);
        anti.set(flat, &a);
    }
    Ok((commuting, anti))
}

fn periodic_pair<T: Scalar>(f: &MultivectorField<T>, g: &MultivectorField<T>, what: &str) -> Result<()> {
    require_quaternion_field(f, what)?;
    require_quaternion_field(g, what)?;
    f.grid().ensure_matches(g.grid(), what)?;
    if f.grid().mode() != crate::GridMode::Periodic {
        return Err(Error::Unsupported(format!("{what} needs a periodic grid")));
    }
    Ok(())
}

/// Right-hand side of the transform of the classical convolution `f * g`:
/// `c sum_{j,k} (F^{mu,(-1)^k nu} f)_{j} F^{(-1)^j mu, nu}(g_k)`, where `_j`
/// takes the part commuting (`j = 0`) or anticommuting (`j = 1`) with `mu`
/// and `g_k` the corresponding part of `g` with respect to `nu`. The scalar
/// `c` is `sqrt(N_1 N_2)`.
pub fn qft_conv_theorem_rhs<T: Scalar>(
    mu: &RootOfMinusOne<T>,
    nu: &RootOfMinusOne<T>,
    f: &MultivectorField<T>,
    g: &MultivectorField<T>,
) -> Result<MultivectorField<T>> {
    periodic_pair(f, g, "convolution theorem")?;
    let grid = f.grid().clone();
    let g_parts = split_field(g, nu.value())?;
    let mut out = MultivectorField::zeros(grid.dual(), f.dim());
    for k in 0..2 {
        let nu_k = if k == 0 { nu.clone() } else { nu.negated() };
        let ff = qft(mu, &nu_k, f)?;
        let ff_parts = split_field(&ff, mu.value())?;
        let gk = if k == 0 { &g_parts.0 } else { &g_parts.1 };
        for j in 0..2 {
            let mu_j = if j == 0 { mu.clone() } else { mu.negated() };
            let fg = qft(&mu_j, nu, gk)?;
            let fj = if j == 0 { &ff_parts.0 } else { &ff_parts.1 };
            out = out.add(&fj.pointwise_product(&fg)?)?;
        }
    }
    let c = GftPlan::qft(grid, mu.clone(), nu.clone())?.convolution_prefactor();
    Ok(out.scale(Complex::new(c, T::zero())))
}

/// `c F(f) F(g)`, the product formula that holds only when the splits are trivial.
pub fn qft_naive_product<T: Scalar>(
    mu: &RootOfMinusOne<T>,
    nu: &RootOfMinusOne<T>,
    f: &MultivectorField<T>,
    g: &MultivectorField<T>,
) -> Result<MultivectorField<T>> {
    periodic_pair(f, g, "naive product")?;
    let plan = GftPlan::qft(f.grid().clone(), mu.clone(), nu.clone())?;
    let prod = plan.forward(f)?.pointwise_product(&plan.forward(g)?)?;
    Ok(prod.scale(Complex::new(plan.convolution_prefactor(), T::zero())))
}

/// Sign `c_{j1 j2 k1 k2}` of the sixteen-term formula.
pub fn mustard_q_sign(j1: usize, j2: usize, k1: usize, k2: usize) -> i32 {
    let mut s = 1;
    if j1 == 1 && k2 == 0 {
        s = -s;
    }
    if j2 == 1 && k1 == 0 {
        s = -s;
    }
    s
}

/// The sixteen index tuples `(j1, j2, k1, k2)` with their signs.
pub fn mustard_q_terms() -> Vec<([usize; 4], i32)> {
    let mut out = Vec::with_capacity(16);
    for j1 in 0..2 {
        for j2 in 0..2 {
            for k1 in 0..2 {
                for k2 in 0..2 {
                    out.push(([j1, j2, k1, k2], mustard_q_sign(j1, j2, k1, k2)));
                }
            }
        }
    }
    out
}

/// Mustard convolution from classical convolutions:
/// `1/4 sum c (mu^j1 f^k1 nu^j2) * (mu^j1 g^k2 nu^j2)`, with `f^k1` reflected
/// in `x_2` and `g^k2` in `x_1` when the index is 1.
pub fn mustard_q<T: Scalar>(
    mu: &RootOfMinusOne<T>,
    nu: &RootOfMinusOne<T>,
    f: &MultivectorField<T>,
    g: &MultivectorField<T>,
) -> Result<MultivectorField<T>> {
    require_quaternion_field(f, "mustard_q")?;
    require_quaternion_field(g, "mustard_q")?;
    f.grid().ensure_matches(g.grid(), "mustard_q")?;
    let dim = f.dim();
    let one = Multivector::one(dim);
    let power = |root: &RootOfMinusOne<T>, j: usize| if j == 0 { one.clone() } else { root.value().clone() };
    let f_ref = [f.clone(), f.reflect(0b10)];
    let g_ref = [g.clone(), g.reflect(0b01)];
    let mut out = MultivectorField::zeros(f.grid().clone(), dim);
    for ([j1, j2, k1, k2], sign) in mustard_q_terms() {
        let (a, b) = (power(mu, j1), power(nu, j2));
        let lhs = f_ref[k1].sandwich(&a, &b);
        let rhs = g_ref[k2].sandwich(&a, &b);
        let conv = classical_convolve(&lhs, &rhs)?;
        out.axpy(T::of(0.25 * sign as f64), &conv);
    }
    Ok(out)
}
