use std::fmt;

use rustfft::FftPlanner;

use super::axis::{AxisKernel, AxisPath, Direction, Side};
use super::{GridMode, GridSpec, MultivectorField};
use crate::clifford::{exp_root, AlgebraDim, Multivector, RootOfMinusOne};
use crate::{Error, Result, Scalar};

/// Two-sided geometric Fourier transform with one root of -1 per axis.
///
/// Axes `0..split` are transformed from the left, axes `split..m` from the
/// right. The forward kernel is
/// `exp(-i_1 x_1 u_1) ... exp(-i_s x_s u_s) f(x) exp(-i_{s+1} x_{s+1} u_{s+1}) ... exp(-i_m x_m u_m)`,
/// so the left factors are applied innermost first (axis `split-1` down to
/// 0) and the right factors from axis `split` upward. The inverse undoes them
/// in the opposite order with the phase signs flipped.
#[derive(Clone)]
pub struct GftPlan<T: Scalar> {
    grid: GridSpec<T>,
    dim: AlgebraDim,
    split: usize,
    kernels: Vec<AxisKernel<T>>,
    path: AxisPath,
}

impl<T: Scalar> fmt::Debug for GftPlan<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GftPlan")
            .field("grid", &self.grid)
            .field("split", &self.split)
            .field("roots", &self.roots().iter().map(|r| r.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

impl<T: Scalar> GftPlan<T> {
    /// `left` holds the roots of axes `0..left.len()`, `right` those of the remaining axes.
    pub fn new(grid: GridSpec<T>, left: Vec<RootOfMinusOne<T>>, right: Vec<RootOfMinusOne<T>>) -> Result<Self> {
        let split = left.len();
        let roots: Vec<_> = left.into_iter().chain(right).collect();
        let m = roots.len();
        if m != grid.ndim() {
            return Err(Error::DimensionMismatch(format!(
                "{m} roots for a {}-axis grid",
                grid.ndim()
            )));
        }
        let dim = AlgebraDim::new(m)?;
        if roots.iter().any(|r| r.dim() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "roots must live in Cl(0,{m}) to transform {m} axes"
            )));
        }
        let mut planner = FftPlanner::new();
        let kernels = roots
            .into_iter()
            .enumerate()
            .map(|(k, root)| {
                let side = if k < split { Side::Left } else { Side::Right };
                AxisKernel::new(k, grid.sizes()[k], root, side, &mut planner)
            })
            .collect();
        Ok(Self {
            grid,
            dim,
            split,
            kernels,
            path: AxisPath::Fast,
        })
    }

    /// Generators `e_1..e_m` as roots with the given split.
    pub fn generators(grid: GridSpec<T>, split: usize) -> Result<Self> {
        let dim = AlgebraDim::new(grid.ndim())?;
        if split > dim.m() {
            return Err(Error::DimensionMismatch(format!("split {split} exceeds m = {}", dim.m())));
        }
        let roots: Vec<_> = (0..dim.m()).map(|k| RootOfMinusOne::generator(dim, k)).collect();
        let right = roots[split..].to_vec();
        Self::new(grid, roots[..split].to_vec(), right)
    }

    /// Two-sided quaternionic transform `exp(-mu x_1 u_1) f exp(-nu x_2 u_2)` over `Cl(0,2)`.
    pub fn qft(grid: GridSpec<T>, mu: RootOfMinusOne<T>, nu: RootOfMinusOne<T>) -> Result<Self> {
        if grid.ndim() != 2 {
            return Err(Error::DimensionMismatch("qFT needs a 2-axis grid".into()));
        }
        Self::new(grid, vec![mu], vec![nu])
    }

    /// Same plan with the axis sums computed by `path`.
    pub fn with_path(mut self, path: AxisPath) -> Self {
        self.path = path;
        self
    }

    pub fn grid(&self) -> &GridSpec<T> {
        &self.grid
    }

    pub fn dim(&self) -> AlgebraDim {
        self.dim
    }

    pub fn split(&self) -> usize {
        self.split
    }

    pub fn roots(&self) -> Vec<&RootOfMinusOne<T>> {
        self.kernels.iter().map(|k| k.root()).collect()
    }

    pub fn root(&self, axis: usize) -> &RootOfMinusOne<T> {
        self.kernels[axis].root()
    }

    /// Same roots on another grid.
    pub fn on_grid(&self, grid: GridSpec<T>) -> Result<Self> {
        let roots: Vec<_> = self.kernels.iter().map(|k| k.root().clone()).collect();
        let right = roots[self.split..].to_vec();
        Ok(Self::new(grid, roots[..self.split].to_vec(), right)?.with_path(self.path))
    }

    /// Same grid and split with every root negated.
    pub fn negated(&self) -> Result<Self> {
        let roots: Vec<_> = self.kernels.iter().map(|k| k.root().negated()).collect();
        let right = roots[self.split..].to_vec();
        Ok(Self::new(self.grid.clone(), roots[..self.split].to_vec(), right)?.with_path(self.path))
    }

    /// Axis order of the forward transform.
    pub fn forward_order(&self) -> Vec<usize> {
        let m = self.dim.m();
        (0..self.split).rev().chain(self.split..m).collect()
    }

    /// Axis order of the inverse transform.
    pub fn inverse_order(&self) -> Vec<usize> {
        let m = self.dim.m();
        (0..self.split).chain((self.split..m).rev()).collect()
    }

    fn check_field(&self, f: &MultivectorField<T>, grid: &GridSpec<T>, what: &str) -> Result<()> {
        if f.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "{what}: Cl(0,{}) field for a Cl(0,{}) plan",
                f.dim().m(),
                self.dim.m()
            )));
        }
        f.grid().ensure_matches(grid, what)
    }

    /// Forward transform. The result lives on `grid().dual()`.
    pub fn forward(&self, f: &MultivectorField<T>) -> Result<MultivectorField<T>> {
        self.check_field(f, &self.grid, "forward transform input")?;
        let mut cur = f.clone();
        for axis in self.forward_order() {
            cur = self.kernels[axis].apply(&cur, Direction::Forward, self.path)?;
        }
        Ok(cur)
    }

    /// Inverse transform of a spectrum on `grid().dual()`.
    pub fn inverse(&self, spectrum: &MultivectorField<T>) -> Result<MultivectorField<T>> {
        self.check_field(spectrum, &self.grid.dual(), "inverse transform input")?;
        let mut cur = spectrum.clone();
        for axis in self.inverse_order() {
            cur = self.kernels[axis].apply(&cur, Direction::Inverse, self.path)?;
        }
        Ok(cur)
    }

    /// `exp(-i_k y_k u_k)` for every frequency index of axis `k`, with the
    /// shift `y_k` given in grid steps.
    fn shift_phases(&self, axis: usize, steps: isize) -> Vec<Multivector<T>> {
        let n = self.grid.sizes()[axis];
        let root = self.kernels[axis].root();
        (0..n)
            .map(|p| {
                // y u = 2 pi s p / N (periodic) or 2 pi s (p - N/2) / N (calibrated).
                let q = match self.grid.mode() {
                    GridMode::Periodic => T::of_usize(p),
                    GridMode::Calibrated => T::of_usize(p) - T::of_usize(n / 2),
                };
                let theta = T::of(2.0) * T::PI() * T::of(steps as f64) * q / T::of_usize(n);
                exp_root(root, -theta)
            })
            .collect()
    }

    /// Spectral phase factors of a shift by `steps`: the left product over
    /// axes `0..split` and the right product over `split..m`, at every frequency.
    pub fn translation_phases(&self, steps: &[isize]) -> (Vec<Multivector<T>>, Vec<Multivector<T>>) {
        let m = self.dim.m();
        let tables: Vec<_> = (0..m).map(|k| self.shift_phases(k, steps[k])).collect();
        let mut left = Vec::with_capacity(self.grid.len());
        let mut right = Vec::with_capacity(self.grid.len());
        for flat in 0..self.grid.len() {
            let idx = self.grid.unravel(flat);
            let mut l = Multivector::one(self.dim);
            for k in 0..self.split {
                l = l.gp(&tables[k][idx[k]]);
            }
            let mut r = Multivector::one(self.dim);
            for k in self.split..m {
                r = r.gp(&tables[k][idx[k]]);
            }
            left.push(l);
            right.push(r);
        }
        (left, right)
    }

    /// Generalized translation `F^-1(Phi_L(u) F(f)(u) Phi_R(u))`. The shift
    /// `y` is in coordinate units and must lie on the grid.
    pub fn translate(&self, f: &MultivectorField<T>, y: &[T]) -> Result<MultivectorField<T>> {
        let steps = self.grid.shift_steps(y)?;
        let spectrum = self.forward(f)?;
        let shifted = self.apply_phases(&spectrum, &steps);
        self.inverse(&shifted)
    }

    pub(crate) fn apply_phases(&self, spectrum: &MultivectorField<T>, steps: &[isize]) -> MultivectorField<T> {
        let (left, right) = self.translation_phases(steps);
        let mut out = MultivectorField::zeros(spectrum.grid().clone(), self.dim);
        for flat in 0..spectrum.len() {
            let v = left[flat].gp(&spectrum.get(flat)).gp(&right[flat]);
            out.set(flat, &v);
        }
        out
    }

    /// Scalar prefactor of the discrete Mustard convolution: `(2 pi)^(m/2)` on
    /// calibrated grids and `prod_k sqrt(N_k)` on periodic ones.
    pub fn convolution_prefactor(&self) -> T {
        match self.grid.mode() {
            GridMode::Calibrated => (T::of(2.0) * T::PI()).powf(T::of_usize(self.dim.m()) / T::of(2.0)),
            GridMode::Periodic => self
                .grid
                .sizes()
                .iter()
                .fold(T::one(), |acc, &n| acc * T::of_usize(n).sqrt()),
        }
    }
}
