use num_complex::Complex;

use super::KernelSpecA;
use crate::clifford::{wedge, AlgebraDim, Multivector};
use crate::special::{gegenbauer_all, scaled_bessel_sequence};
use crate::{Error, Result, Scalar};

/// Kernel value with the magnitude of the last retained series terms.
#[derive(Clone, Debug)]
pub struct KernelValue<T: Scalar> {
    pub value: Multivector<T>,
    pub truncation: T,
}

pub(crate) fn norm<T: Scalar>(x: &[T]) -> T {
    x.iter().fold(T::zero(), |acc, &v| acc + v * v).sqrt()
}

pub(crate) fn dot<T: Scalar>(x: &[T], y: &[T]) -> T {
    x.iter().zip(y).fold(T::zero(), |acc, (&a, &b)| acc + a * b)
}

/// Cosine of the angle between `x` and `y`, `0` if either vanishes.
pub(crate) fn cosine<T: Scalar>(x: &[T], y: &[T]) -> T {
    let (nx, ny) = (norm(x), norm(y));
    if nx == T::zero() || ny == T::zero() {
        return T::zero();
    }
    (dot(x, y) / (nx * ny)).max(-T::one()).min(T::one())
}

/// Series parts `(A, B)` at `(w, z)`, plus the size of their last terms
/// (`B` weighted by `b_weight`).
pub(crate) fn series_parts<T: Scalar>(spec: &KernelSpecA<T>, w: T, z: T, b_weight: T) -> (Complex<T>, Complex<T>, T) {
    let lam = spec.lambda();
    let kmax = spec.k_max();
    let zk = scaled_bessel_sequence(lam, kmax, z);
    let c0 = gegenbauer_all(kmax, lam, w);
    let c1 = gegenbauer_all(kmax, lam + T::one(), w);
    let zero = Complex::new(T::zero(), T::zero());
    let mut a = zero;
    let mut b = zero;
    let mut last = T::zero();
    for k in 0..=kmax {
        let ta = spec.alpha[k] * (zk[k] * c0[k]);
        a += ta;
        let mut size = ta.norm();
        if k >= 1 {
            // z^(-lambda-1) J_{k+lambda}(z) = z^(k-1) S_{k+lambda}(z); avoid dividing by z at 0.
            let bessel = if z == T::zero() {
                if k == 1 {
                    zk_limit(lam + T::one())
                } else {
                    T::zero()
                }
            } else {
                zk[k] / z
            };
            let tb = spec.beta[k] * (bessel * c1[k - 1]);
            b += tb;
            size += tb.norm() * b_weight;
        }
        if k + 2 > kmax {
            last = last.max(size);
        }
    }
    (a, b, last)
}

/// `S_nu(0) = 2^-nu / Gamma(nu + 1)`.
fn zk_limit<T: Scalar>(nu: T) -> T {
    T::of(2.0).powf(-nu) / crate::special::gamma(nu + T::one())
}

/// `K(x, y) = (A(w, z) + (x ^ y) B(w, z)) exp(i/2 cot(alpha) (|x|^2 + |y|^2))`
/// with `z = |x||y|/sin(alpha)` and `w` the cosine between `x` and `y`.
///
/// Fails with [`Error::Truncation`] when `|z|` exceeds [`KernelSpecA::z_max`].
pub fn kernel_eval<T: Scalar>(spec: &KernelSpecA<T>, x: &[T], y: &[T]) -> Result<KernelValue<T>> {
    let m = spec.m();
    if x.len() != m || y.len() != m {
        return Err(Error::DimensionMismatch(format!("kernel points must have {m} coordinates")));
    }
    let dim = AlgebraDim::new(m)?;
    let (nx, ny) = (norm(x), norm(y));
    let sin = spec.angle().sin();
    let z = nx * ny / sin;
    if z.abs() > spec.z_max() {
        return Err(Error::Truncation(format!(
            "|x||y|/sin(alpha) = {} exceeds {} for k_max = {}",
            z.abs(),
            spec.z_max(),
            spec.k_max()
        )));
    }
    let xy = wedge(&Multivector::vector(dim, x)?, &Multivector::vector(dim, y)?)?;
    let (a, b, last) = series_parts(spec, cosine(x, y), z, xy.norm());
    let cot = spec.angle().cos() / sin;
    let phase = Complex::from_polar(T::one(), cot * (nx * nx + ny * ny) / T::of(2.0));
    let mut value = xy.scale(b);
    value.coeffs_mut()[0] += a;
    Ok(KernelValue {
        value: value.scale(phase),
        truncation: last,
    })
}
