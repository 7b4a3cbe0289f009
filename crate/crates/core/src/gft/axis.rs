//! One-dimensional Clifford-Fourier transform along a single grid axis.
//!
//! With `theta = 2 pi n p / N` the kernel `exp(-/+ i theta)` splits into
//! `cos theta -/+ i sin theta`, so the transform of `h` is `C -/+ i S` (left)
//! or `C -/+ S i` (right), where `C`, `S` are the cosine and sine sums of the
//! blade coefficients. Both follow from one complex DFT per blade plane:
//! `C(p) = (D(p) + D(-p))/2` and `S(p) = (D(p) - D(-p)) j/2` with `j` the
//! complex unit.
//!
//! On calibrated grids the phase `x_n u_p` differs from `2 pi n p / N` by
//! `pi (n + p - N/2)`, giving the sign `(-1)^(n + p + N/2)` on both sums.

use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use super::{GridMode, MultivectorField};
use crate::clifford::{blade_product, exp_root, gp_into, RootOfMinusOne};
use crate::{Error, Result, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Sign of the phase: `Forward` uses `exp(-i theta)`, `Inverse` uses `exp(+i theta)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Implementation used for the axis sums.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum AxisPath {
    /// One FFT per blade plane and line.
    #[default]
    Fast,
    /// Direct `O(N^2)` sum of `exp(-/+ i theta) h(n)` products.
    Naive,
}

/// For each source blade, the blades and coefficients of `root * e_b`
/// (left) or `e_b * root` (right).
#[derive(Clone, Debug)]
pub struct MixTable<T: Scalar> {
    rows: Vec<Vec<(usize, Complex<T>)>>,
}

impl<T: Scalar> MixTable<T> {
    pub fn new(root: &RootOfMinusOne<T>, side: Side) -> Self {
        let value = root.value();
        let n = value.dim().blades();
        let rows = (0..n)
            .map(|b| {
                value
                    .coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c.norm_sqr() > T::zero())
                    .map(|(r, c)| {
                        let (target, neg) = match side {
                            Side::Left => blade_product(r, b),
                            Side::Right => blade_product(b, r),
                        };
                        (target, if neg { -*c } else { *c })
                    })
                    .collect()
            })
            .collect();
        Self { rows }
    }

    pub fn row(&self, b: usize) -> &[(usize, Complex<T>)] {
        &self.rows[b]
    }
}

/// Precomputed state for transforming one axis with one root.
#[derive(Clone)]
pub struct AxisKernel<T: Scalar> {
    axis: usize,
    side: Side,
    root: RootOfMinusOne<T>,
    table: MixTable<T>,
    fft: Arc<dyn Fft<T>>,
}

impl<T: Scalar> std::fmt::Debug for AxisKernel<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AxisKernel")
            .field("axis", &self.axis)
            .field("side", &self.side)
            .field("root", &self.root.to_string())
            .field("len", &self.fft.len())
            .finish()
    }
}

impl<T: Scalar> AxisKernel<T> {
    pub fn new(axis: usize, len: usize, root: RootOfMinusOne<T>, side: Side, planner: &mut FftPlanner<T>) -> Self {
        Self {
            axis,
            side,
            table: MixTable::new(&root, side),
            root,
            fft: planner.plan_fft_forward(len),
        }
    }

    pub fn axis(&self) -> usize {
        self.axis
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn root(&self) -> &RootOfMinusOne<T> {
        &self.root
    }

    /// Transforms `field` along this kernel's axis. The output lives on the
    /// grid dualized along that axis.
    pub fn apply(&self, field: &MultivectorField<T>, dir: Direction, path: AxisPath) -> Result<MultivectorField<T>> {
        let grid = field.grid();
        if self.axis >= grid.ndim() {
            return Err(Error::DimensionMismatch(format!(
                "axis {} on a {}-axis grid",
                self.axis,
                grid.ndim()
            )));
        }
        if grid.sizes()[self.axis] != self.fft.len() {
            return Err(Error::GridMismatch(format!(
                "kernel for length {} applied to length {}",
                self.fft.len(),
                grid.sizes()[self.axis]
            )));
        }
        if self.root.dim() != field.dim() {
            return Err(Error::DimensionMismatch("root and field live in different algebras".into()));
        }
        let n = grid.sizes()[self.axis];
        let stride = grid.strides()[self.axis];
        let outer = grid.len() / (n * stride);
        let calibrated = grid.mode() == GridMode::Calibrated;
        let weight = match grid.mode() {
            GridMode::Periodic => T::one() / T::of_usize(n).sqrt(),
            GridMode::Calibrated => grid.spacing()[self.axis] / (T::of(2.0) * T::PI()).sqrt(),
        };
        let mut out = MultivectorField::zeros(grid.dual_axis(self.axis), field.dim());
        let mut scratch = LineScratch::new(field.dim().blades(), n, &*self.fft);
        let naive_table = (path == AxisPath::Naive).then(|| self.phase_table(n, dir));
        for o in 0..outer {
            for i in 0..stride {
                let base = o * n * stride + i;
                let line = (base, stride, n);
                match &naive_table {
                    None => self.fast_line(field, &mut out, line, dir, calibrated, weight, &mut scratch),
                    Some(table) => self.naive_line(field, &mut out, line, table, calibrated, weight),
                }
            }
        }
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn fast_line(
        &self,
        field: &MultivectorField<T>,
        out: &mut MultivectorField<T>,
        (base, stride, n): (usize, usize, usize),
        dir: Direction,
        calibrated: bool,
        weight: T,
        s: &mut LineScratch<T>,
    ) {
        let half = T::of(0.5);
        let j = Complex::new(T::zero(), T::one());
        for (b, plane) in field.planes().iter().enumerate() {
            for k in 0..n {
                let v = plane[base + k * stride];
                s.buf[k] = if calibrated && k % 2 == 1 { -v } else { v };
            }
            self.fft.process_with_scratch(&mut s.buf, &mut s.fft_scratch);
            for p in 0..n {
                let d = s.buf[p];
                let dm = s.buf[(n - p) % n];
                s.cos[b][p] = (d + dm) * half;
                s.sin[b][p] = (d - dm) * j * half;
            }
        }
        let sign = match dir {
            Direction::Forward => -T::one(),
            Direction::Inverse => T::one(),
        };
        for (b, acc) in s.acc.iter_mut().enumerate() {
            acc.copy_from_slice(&s.cos[b]);
        }
        for (b, sin) in s.sin.iter().enumerate() {
            for &(target, c) in self.table.row(b) {
                let c = c * sign;
                for (a, x) in s.acc[target].iter_mut().zip(sin) {
                    *a += c * x;
                }
            }
        }
        let planes = out.planes_mut();
        for (b, acc) in s.acc.iter().enumerate() {
            for p in 0..n {
                let flip = calibrated && (p + n / 2) % 2 == 1;
                let w = if flip { -weight } else { weight };
                planes[b][base + p * stride] = acc[p] * w;
            }
        }
    }

    /// `exp(-/+ i 2 pi t / N)` for `t = 0..N`.
    fn phase_table(&self, n: usize, dir: Direction) -> Vec<crate::Multivector<T>> {
        let sign = match dir {
            Direction::Forward => -T::one(),
            Direction::Inverse => T::one(),
        };
        (0..n)
            .map(|t| exp_root(&self.root, sign * T::of(2.0) * T::PI() * T::of_usize(t) / T::of_usize(n)))
            .collect()
    }

    fn naive_line(
        &self,
        field: &MultivectorField<T>,
        out: &mut MultivectorField<T>,
        (base, stride, n): (usize, usize, usize),
        table: &[crate::Multivector<T>],
        calibrated: bool,
        weight: T,
    ) {
        let blades = field.dim().blades();
        let samples: Vec<Vec<Complex<T>>> = (0..n)
            .map(|k| field.planes().iter().map(|p| p[base + k * stride]).collect())
            .collect();
        let negated: Vec<_> = table.iter().map(|e| -e).collect();
        let mut acc = vec![Complex::new(T::zero(), T::zero()); blades];
        for p in 0..n {
            acc.iter_mut().for_each(|a| *a = Complex::new(T::zero(), T::zero()));
            for (k, h) in samples.iter().enumerate() {
                let flip = calibrated && (k + p + n / 2) % 2 == 1;
                let e = if flip { &negated[(k * p) % n] } else { &table[(k * p) % n] };
                match self.side {
                    Side::Left => gp_into(e.coeffs(), h, &mut acc),
                    Side::Right => gp_into(h, e.coeffs(), &mut acc),
                }
            }
            let planes = out.planes_mut();
            for (b, a) in acc.iter().enumerate() {
                planes[b][base + p * stride] = a * weight;
            }
        }
    }
}

struct LineScratch<T: Scalar> {
    buf: Vec<Complex<T>>,
    fft_scratch: Vec<Complex<T>>,
    cos: Vec<Vec<Complex<T>>>,
    sin: Vec<Vec<Complex<T>>>,
    acc: Vec<Vec<Complex<T>>>,
}

impl<T: Scalar> LineScratch<T> {
    fn new(blades: usize, n: usize, fft: &dyn Fft<T>) -> Self {
        let zero = Complex::new(T::zero(), T::zero());
        Self {
            buf: vec![zero; n],
            fft_scratch: vec![zero; fft.get_inplace_scratch_len()],
            cos: vec![vec![zero; n]; blades],
            sin: vec![vec![zero; n]; blades],
            acc: vec![vec![zero; n]; blades],
        }
    }
}

/// Transforms `field` along `axis` with `root` on the given side.
pub fn axis_transform<T: Scalar>(
    field: &MultivectorField<T>,
    axis: usize,
    root: &RootOfMinusOne<T>,
    side: Side,
    dir: Direction,
    path: AxisPath,
) -> Result<MultivectorField<T>> {
    if axis >= field.grid().ndim() {
        return Err(Error::DimensionMismatch(format!("axis {axis} out of range")));
    }
    let mut planner = FftPlanner::new();
    let kernel = AxisKernel::new(axis, field.grid().sizes()[axis], root.clone(), side, &mut planner);
    kernel.apply(field, dir, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gft::GridSpec;
    use crate::AlgebraDim;

    #[test]
    fn fast_and_naive_agree_on_both_sides_and_modes() {
        let d = AlgebraDim::new(3).unwrap();
        let root = RootOfMinusOne::parse(d, "0.6e12+0.8e13").unwrap();
        for grid in [
            GridSpec::periodic(&[6, 5, 4]).unwrap(),
            GridSpec::calibrated(&[6, 4, 8], &[0.3, 0.5, 0.7]).unwrap(),
        ] {
            let f = MultivectorField::random(grid, d, 11);
            for axis in 0..3 {
                for side in [Side::Left, Side::Right] {
                    for dir in [Direction::Forward, Direction::Inverse] {
                        let a = axis_transform(&f, axis, &root, side, dir, AxisPath::Fast).unwrap();
                        let b = axis_transform(&f, axis, &root, side, dir, AxisPath::Naive).unwrap();
                        assert!(a.max_gap(&b) < 1e-12, "axis {axis} {side:?} {dir:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn forward_then_inverse_is_identity() {
        let d = AlgebraDim::new(2).unwrap();
        let root = RootOfMinusOne::parse(d, "e12").unwrap();
        let grid = GridSpec::calibrated(&[8, 6], &[0.4, 0.9]).unwrap();
        let f = MultivectorField::random(grid, d, 5);
        let g = axis_transform(&f, 1, &root, Side::Right, Direction::Forward, AxisPath::Fast).unwrap();
        let h = axis_transform(&g, 1, &root, Side::Right, Direction::Inverse, AxisPath::Fast).unwrap();
        assert!(h.grid().matches(f.grid()));
        assert!(h.max_gap(&f) < 1e-14);
    }
}
