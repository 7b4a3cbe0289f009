use num_complex::Complex;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GridSpec;
use crate::clifford::{blade_product, AlgebraDim, Multivector};
use crate::{Error, Result, Scalar};

/// Multivector samples on a grid, stored blade-major: one complex plane per
/// blade, each plane in row-major grid order.
#[derive(Clone, Debug)]
pub struct MultivectorField<T: Scalar> {
    grid: GridSpec<T>,
    dim: AlgebraDim,
    planes: Vec<Vec<Complex<T>>>,
}

fn czero<T: Scalar>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

impl<T: Scalar> MultivectorField<T> {
    pub fn zeros(grid: GridSpec<T>, dim: AlgebraDim) -> Self {
        let len = grid.len();
        Self {
            planes: vec![vec![czero(); len]; dim.blades()],
            grid,
            dim,
        }
    }

    pub fn from_planes(grid: GridSpec<T>, dim: AlgebraDim, planes: Vec<Vec<Complex<T>>>) -> Result<Self> {
        if planes.len() != dim.blades() || planes.iter().any(|p| p.len() != grid.len()) {
            return Err(Error::DimensionMismatch(format!(
                "expected {} planes of {} points",
                dim.blades(),
                grid.len()
            )));
        }
        Ok(Self { grid, dim, planes })
    }

    /// Samples `f` at every grid index.
    pub fn from_index_fn(grid: GridSpec<T>, dim: AlgebraDim, f: impl Fn(&[usize]) -> Multivector<T>) -> Self {
        let mut out = Self::zeros(grid, dim);
        for flat in 0..out.len() {
            let idx = out.grid.unravel(flat);
            out.set(flat, &f(&idx));
        }
        out
    }

    /// Samples `f` at every grid coordinate.
    pub fn from_coord_fn(grid: GridSpec<T>, dim: AlgebraDim, f: impl Fn(&[T]) -> Multivector<T>) -> Self {
        let mut out = Self::zeros(grid, dim);
        for flat in 0..out.len() {
            let x = out.grid.coordinates(flat);
            out.set(flat, &f(&x));
        }
        out
    }

    /// Scalar-valued field from one value per point.
    pub fn scalar(grid: GridSpec<T>, dim: AlgebraDim, values: Vec<Complex<T>>) -> Result<Self> {
        let mut out = Self::zeros(grid, dim);
        if values.len() != out.len() {
            return Err(Error::DimensionMismatch("scalar values vs grid".into()));
        }
        out.planes[0] = values;
        Ok(out)
    }

    /// Real coefficients uniform in `[-1, 1)` on every blade, from a seeded ChaCha stream.
    pub fn random(grid: GridSpec<T>, dim: AlgebraDim, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Self::zeros(grid, dim);
        for plane in out.planes.iter_mut() {
            for c in plane.iter_mut() {
                *c = Complex::new(T::of(rng.random_range(-1.0..1.0)), T::zero());
            }
        }
        out
    }

    pub fn grid(&self) -> &GridSpec<T> {
        &self.grid
    }

    pub fn dim(&self) -> AlgebraDim {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn planes(&self) -> &[Vec<Complex<T>>] {
        &self.planes
    }

    pub fn planes_mut(&mut self) -> &mut [Vec<Complex<T>>] {
        &mut self.planes
    }

    pub fn into_planes(self) -> Vec<Vec<Complex<T>>> {
        self.planes
    }

    /// Replaces the grid descriptor without touching the samples.
    pub fn with_grid(mut self, grid: GridSpec<T>) -> Result<Self> {
        if grid.len() != self.len() {
            return Err(Error::GridMismatch("relabelled grid changes the point count".into()));
        }
        self.grid = grid;
        Ok(self)
    }

    pub fn get(&self, flat: usize) -> Multivector<T> {
        let coeffs = self.planes.iter().map(|p| p[flat]).collect();
        Multivector::from_coeffs(self.dim, coeffs).expect("plane count matches dimension")
    }

    pub fn get_at(&self, idx: &[usize]) -> Multivector<T> {
        self.get(self.grid.ravel(idx))
    }

    pub fn set(&mut self, flat: usize, mv: &Multivector<T>) {
        assert_eq!(mv.dim(), self.dim);
        for (p, c) in self.planes.iter_mut().zip(mv.coeffs()) {
            p[flat] = *c;
        }
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "Cl(0,{}) field vs Cl(0,{}) field",
                self.dim.m(),
                other.dim.m()
            )));
        }
        self.grid.ensure_matches(&other.grid, "field shapes")
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut out = self.clone();
        out.add_assign(other);
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut out = self.clone();
        out.axpy(-T::one(), other);
        Ok(out)
    }

    pub(crate) fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.planes.iter_mut().zip(&other.planes) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: T, other: &Self) {
        for (a, b) in self.planes.iter_mut().zip(&other.planes) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y * c;
            }
        }
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        let mut out = self.clone();
        out.scale_in_place(c);
        out
    }

    pub fn scale_in_place(&mut self, c: Complex<T>) {
        for p in self.planes.iter_mut() {
            for x in p.iter_mut() {
                *x *= c;
            }
        }
    }

    /// `a * f(x)` at every point.
    pub fn left_mul(&self, a: &Multivector<T>) -> Self {
        assert_eq!(a.dim(), self.dim);
        let mut out = Self::zeros(self.grid.clone(), self.dim);
        for (ba, ca) in a.coeffs().iter().enumerate() {
            if ca.norm_sqr() == T::zero() {
                continue;
            }
            for (bf, plane) in self.planes.iter().enumerate() {
                let (target, neg) = blade_product(ba, bf);
                let c = if neg { -*ca } else { *ca };
                for (o, x) in out.planes[target].iter_mut().zip(plane) {
                    *o += c * x;
                }
            }
        }
        out
    }

    /// `f(x) * b` at every point.
    pub fn right_mul(&self, b: &Multivector<T>) -> Self {
        assert_eq!(b.dim(), self.dim);
        let mut out = Self::zeros(self.grid.clone(), self.dim);
        for (bb, cb) in b.coeffs().iter().enumerate() {
            if cb.norm_sqr() == T::zero() {
                continue;
            }
            for (bf, plane) in self.planes.iter().enumerate() {
                let (target, neg) = blade_product(bf, bb);
                let c = if neg { -*cb } else { *cb };
                for (o, x) in out.planes[target].iter_mut().zip(plane) {
                    *o += c * x;
                }
            }
        }
        out
    }

    /// `a * f(x) * b` at every point.
    pub fn sandwich(&self, a: &Multivector<T>, b: &Multivector<T>) -> Self {
        self.left_mul(a).right_mul(b)
    }

    /// Pointwise geometric product `f(x) * g(x)`.
    pub fn pointwise_product(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut out = Self::zeros(self.grid.clone(), self.dim);
        pointwise_product_into(&self.planes, &other.planes, &mut out.planes);
        Ok(out)
    }

    /// `f(-x)` along the axes whose bit is set in `mask`.
    pub fn reflect(&self, mask: usize) -> Self {
        if mask == 0 {
            return self.clone();
        }
        let mut out = Self::zeros(self.grid.clone(), self.dim);
        let map = reflection_map(&self.grid, mask);
        for (o, p) in out.planes.iter_mut().zip(&self.planes) {
            for (dst, &src) in o.iter_mut().zip(&map) {
                *dst = p[src];
            }
        }
        out
    }

    /// Circular shift by whole steps: `out[n] = f[n - s]`.
    pub fn shift(&self, steps: &[isize]) -> Self {
        assert_eq!(steps.len(), self.grid.ndim());
        let sizes = self.grid.sizes().to_vec();
        let mut out = Self::zeros(self.grid.clone(), self.dim);
        for flat in 0..self.len() {
            let mut idx = self.grid.unravel(flat);
            for (k, i) in idx.iter_mut().enumerate() {
                let n = sizes[k] as isize;
                *i = (((*i as isize - steps[k]) % n + n) % n) as usize;
            }
            let src = self.grid.ravel(&idx);
            for (o, p) in out.planes.iter_mut().zip(&self.planes) {
                o[flat] = p[src];
            }
        }
        out
    }

    /// Frobenius norm over all points and blades.
    pub fn norm(&self) -> T {
        self.planes
            .iter()
            .flat_map(|p| p.iter())
            .fold(T::zero(), |acc, c| acc + c.norm_sqr())
            .sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.planes
            .iter()
            .flat_map(|p| p.iter())
            .fold(T::zero(), |acc, c| acc.max(c.norm()))
    }

    /// Largest coefficient-wise deviation from `other`.
    pub fn max_gap(&self, other: &Self) -> T {
        self.planes
            .iter()
            .zip(&other.planes)
            .flat_map(|(a, b)| a.iter().zip(b))
            .fold(T::zero(), |acc, (x, y)| acc.max((x - y).norm()))
    }

    /// `||self - other|| / ||other||` in the Frobenius norm.
    pub fn rel_gap(&self, other: &Self) -> T {
        let diff = self
            .planes
            .iter()
            .zip(&other.planes)
            .flat_map(|(a, b)| a.iter().zip(b))
            .fold(T::zero(), |acc, (x, y)| acc + (x - y).norm_sqr())
            .sqrt();
        diff / other.norm().max(T::min_positive_value())
    }
}

/// Source index for each destination index under reflection of the masked axes.
pub(crate) fn reflection_map<T: Scalar>(grid: &GridSpec<T>, mask: usize) -> Vec<usize> {
    (0..grid.len())
        .map(|flat| {
            let mut idx = grid.unravel(flat);
            for (k, i) in idx.iter_mut().enumerate() {
                if mask >> k & 1 == 1 {
                    *i = grid.reflect_index(k, *i);
                }
            }
            grid.ravel(&idx)
        })
        .collect()
}

/// `out += a * b` pointwise over blade planes.
pub(crate) fn pointwise_product_into<T: Scalar>(
    a: &[Vec<Complex<T>>],
    b: &[Vec<Complex<T>>],
    out: &mut [Vec<Complex<T>>],
) {
    for (ba, pa) in a.iter().enumerate() {
        for (bb, pb) in b.iter().enumerate() {
            let (target, neg) = blade_product(ba, bb);
            let o = &mut out[target];
            if neg {
                for ((o, x), y) in o.iter_mut().zip(pa).zip(pb) {
                    *o -= x * y;
                }
            } else {
                for ((o, x), y) in o.iter_mut().zip(pa).zip(pb) {
                    *o += x * y;
                }
            }
        }
    }
}
