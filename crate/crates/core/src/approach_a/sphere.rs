use num_complex::Complex;
use rayon::prelude::*;

use super::kernel::{cosine, kernel_eval, norm};
use super::{inverse_coeffs, inverse_spec, KernelSpecA};
use crate::clifford::{wedge, AlgebraDim, Multivector};
use crate::special::{gamma, gauss_legendre, gegenbauer_all, scaled_bessel, scaled_bessel_sequence};
use crate::{Error, Result, Scalar};

/// Both sides of the spherical mean identity
/// `int_S K~(r eta, x) K(y, r eta) d(eta) = 2^lambda Gamma(lambda+1) S_lambda(u) exp(-i/2 cot(alpha)(|x|^2 - |y|^2))`
/// with `u = r |x - y| / sin(alpha)` and the normalized sphere measure.
#[derive(Clone, Debug)]
pub struct SphereCheck<T: Scalar> {
    /// Truncated series assembled from the four product terms.
    pub lhs: Multivector<T>,
    pub rhs: Complex<T>,
    /// Norm of `lhs - rhs`.
    pub gap: T,
    /// Largest bivector coefficient of `lhs`.
    pub wedge: T,
}

pub fn sphere_integral_check<T: Scalar>(
    spec: &KernelSpecA<T>,
    r: T,
    x: &[T],
    y: &[T],
    k_trunc: usize,
) -> Result<SphereCheck<T>> {
    let m = spec.m();
    if x.len() != m || y.len() != m {
        return Err(Error::DimensionMismatch(format!("sphere check points need {m} coordinates")));
    }
    if k_trunc > spec.k_max() {
        return Err(Error::InvalidIndex(format!("truncation {k_trunc} beyond k_max = {}", spec.k_max())));
    }
    let dim = AlgebraDim::new(m)?;
    let inv = inverse_coeffs(spec)?;
    let lam = spec.lambda();
    let sin = spec.angle().sin();
    let (nx, ny) = (norm(x), norm(y));
    let w = cosine(x, y);
    let z1 = scaled_bessel_sequence(lam, k_trunc, r * nx / sin);
    let z2 = scaled_bessel_sequence(lam, k_trunc, r * ny / sin);
    let c0 = gegenbauer_all(k_trunc, lam, w);
    let c1 = gegenbauer_all(k_trunc, lam + T::one(), w);
    let (a, b) = (spec.alpha_k(), spec.beta_k());
    let zero = Complex::new(T::zero(), T::zero());
    let (mut i1, mut i2, mut i3, mut i4s, mut i4w) = (zero, zero, zero, zero, zero);
    for k in 0..=k_trunc {
        let kk = T::of_usize(k);
        let p = z1[k] * z2[k];
        let frac = lam / (lam + kk);
        i1 += inv.s[k] * a[k] * (frac * p * c0[k]);
        if k == 0 {
            continue;
        }
        let pw = p * c1[k - 1];
        i2 += inv.t[k] * a[k] * (frac * pw);
        i3 += inv.s[k] * b[k] * (frac * pw);
        i4s += inv.t[k] * b[k] * (kk * (kk + T::of(2.0) * lam) / (T::of(4.0) * lam * (kk + lam)) * p * c0[k]);
        i4w += inv.t[k] * b[k] * (frac * pw);
    }
    let scalar = i1 + i4s * (sin * sin);
    let wedge_coeff = -(i2 + i3) * sin - i4w * (sin * sin);
    let unit = |v: &[T], n: T| -> Vec<T> {
        if n == T::zero() {
            vec![T::zero(); m]
        } else {
            v.iter().map(|&c| c / n).collect()
        }
    };
    let xy = wedge(
        &Multivector::vector(dim, &unit(x, nx))?,
        &Multivector::vector(dim, &unit(y, ny))?,
    )?;
    let cot = spec.angle().cos() / sin;
    let phase = Complex::from_polar(T::one(), -cot * (nx * nx - ny * ny) / T::of(2.0));
    let mut lhs = xy.scale(wedge_coeff);
    lhs.coeffs_mut()[0] += scalar;
    let lhs = lhs.scale(phase);

    let diff: Vec<T> = x.iter().zip(y).map(|(&a, &b)| a - b).collect();
    let u = r * norm(&diff) / sin;
    let rhs = phase * (T::of(2.0).powf(lam) * gamma(lam + T::one()) * scaled_bessel(lam, u));
    let mut delta = lhs.clone();
    delta.coeffs_mut()[0] -= rhs;
    Ok(SphereCheck {
        gap: delta.norm(),
        wedge: lhs.grade_part(2).max_abs(),
        lhs,
        rhs,
    })
}

/// Direct product-rule quadrature of `int_S K~(r eta, x) K(y, r eta) d(eta)`
/// over the unit 3-sphere, with the kernels summed from their series.
///
/// `eta = (sqrt(1-u) cos b, sqrt(1-u) sin b, sqrt(u) cos c, sqrt(u) sin c)`
/// makes the normalized measure `du db dc / (4 pi^2)`: Gauss-Legendre in `u`
/// (`n` nodes) and the trapezoid rule in `b` and `c` (`2n` nodes each).
pub fn sphere_integral_quadrature<T: Scalar>(
    spec: &KernelSpecA<T>,
    r: T,
    x: &[T],
    y: &[T],
    n: usize,
) -> Result<Multivector<T>> {
    if spec.m() != 4 {
        return Err(Error::Unsupported("direct sphere quadrature is implemented for m = 4".into()));
    }
    let dim = AlgebraDim::new(4)?;
    let inv = inverse_spec(spec)?;
    let (us, uw) = gauss_legendre(n, T::zero(), T::one());
    let nb = 2 * n;
    let step = T::of(2.0) * T::PI() / T::of_usize(nb);
    let weight_bc = T::one() / T::of_usize(nb * nb);
    let rows: Vec<Result<Multivector<T>>> = (0..n)
        .into_par_iter()
        .map(|iu| {
            let (su, cu) = (us[iu].sqrt(), (T::one() - us[iu]).sqrt());
            let mut acc = Multivector::zero(dim);
            for ib in 0..nb {
                let b = step * T::of_usize(ib);
                for ic in 0..nb {
                    let c = step * T::of_usize(ic);
                    let p = [cu * b.cos() * r, cu * b.sin() * r, su * c.cos() * r, su * c.sin() * r];
                    let kt = kernel_eval(&inv, &p, x)?.value;
                    let k = kernel_eval(spec, y, &p)?.value;
                    acc += &kt.gp(&k);
                }
            }
            Ok(acc.scale_real(uw[iu] * weight_bc))
        })
        .collect();
    let mut total = Multivector::zero(dim);
    for row in rows {
        total += &row?;
    }
    Ok(total)
}
