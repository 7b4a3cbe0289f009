use crate::{Error, Result, Scalar};

/// How grid indices map to coordinates and which DFT normalization applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GridMode {
    /// Index `n` is the coordinate; axis transforms carry `N^-1/2`.
    Periodic,
    /// Node `x_n = (n - N/2) delta` samples a continuous transform with
    /// weight `delta / sqrt(2 pi)`; the dual spacing is `2 pi / (N delta)`.
    Calibrated,
}

/// Sample grid of a multivector field. Axis 0 is the slowest in memory.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec<T: Scalar> {
    sizes: Vec<usize>,
    mode: GridMode,
    spacing: Vec<T>,
}

impl<T: Scalar> GridSpec<T> {
    pub fn periodic(sizes: &[usize]) -> Result<Self> {
        check_sizes(sizes, false)?;
        Ok(Self {
            sizes: sizes.to_vec(),
            mode: GridMode::Periodic,
            spacing: vec![T::one(); sizes.len()],
        })
    }

    pub fn calibrated(sizes: &[usize], spacing: &[T]) -> Result<Self> {
        check_sizes(sizes, true)?;
        if spacing.len() != sizes.len() {
            return Err(Error::InvalidGrid(format!(
                "{} spacings for {} axes",
                spacing.len(),
                sizes.len()
            )));
        }
        if spacing.iter().any(|d| !d.is_finite() || *d <= T::zero()) {
            return Err(Error::InvalidGrid("spacing must be positive".into()));
        }
        Ok(Self {
            sizes: sizes.to_vec(),
            mode: GridMode::Calibrated,
            spacing: spacing.to_vec(),
        })
    }

    /// Same size on every axis.
    pub fn cube(m: usize, n: usize, mode: GridMode, delta: T) -> Result<Self> {
        match mode {
            GridMode::Periodic => Self::periodic(&vec![n; m]),
            GridMode::Calibrated => Self::calibrated(&vec![n; m], &vec![delta; m]),
        }
    }

    pub fn ndim(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn mode(&self) -> GridMode {
        self.mode
    }

    pub fn spacing(&self) -> &[T] {
        &self.spacing
    }

    /// Total number of points.
    pub fn len(&self) -> usize {
        self.sizes.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.sizes.len()];
        for k in (0..self.sizes.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.sizes[k + 1];
        }
        strides
    }

    pub fn unravel(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.sizes.len()];
        for k in (0..self.sizes.len()).rev() {
            idx[k] = flat % self.sizes[k];
            flat /= self.sizes[k];
        }
        idx
    }

    pub fn ravel(&self, idx: &[usize]) -> usize {
        idx.iter()
            .zip(&self.sizes)
            .fold(0, |acc, (&i, &n)| acc * n + i)
    }

    /// Coordinate of index `n` on `axis`.
    pub fn coordinate(&self, axis: usize, n: usize) -> T {
        match self.mode {
            GridMode::Periodic => T::of_usize(n),
            GridMode::Calibrated => {
                (T::of_usize(n) - T::of_usize(self.sizes[axis] / 2)) * self.spacing[axis]
            }
        }
    }

    pub fn coordinates(&self, flat: usize) -> Vec<T> {
        self.unravel(flat)
            .iter()
            .enumerate()
            .map(|(k, &n)| self.coordinate(k, n))
            .collect()
    }

    /// Angular frequency of index `p` on `axis` in the dual domain:
    /// `2 pi p~ / N` with `p~` the signed index for periodic grids, `u_p` for calibrated ones.
    pub fn frequency(&self, axis: usize, p: usize) -> T {
        let n = self.sizes[axis];
        match self.mode {
            GridMode::Periodic => {
                let signed = if p <= n / 2 {
                    T::of_usize(p)
                } else {
                    -T::of_usize(n - p)
                };
                T::of(2.0) * T::PI() * signed / T::of_usize(n)
            }
            GridMode::Calibrated => {
                (T::of_usize(p) - T::of_usize(n / 2)) * self.dual_spacing(axis)
            }
        }
    }

    pub fn dual_spacing(&self, axis: usize) -> T {
        match self.mode {
            GridMode::Periodic => T::one(),
            GridMode::Calibrated => {
                T::of(2.0) * T::PI() / (T::of_usize(self.sizes[axis]) * self.spacing[axis])
            }
        }
    }

    /// Grid of the transform along `axis`.
    pub fn dual_axis(&self, axis: usize) -> Self {
        let mut out = self.clone();
        out.spacing[axis] = self.dual_spacing(axis);
        out
    }

    /// Grid of the full transform; the dual of the dual is the original grid.
    pub fn dual(&self) -> Self {
        let mut out = self.clone();
        for k in 0..self.ndim() {
            out.spacing[k] = self.dual_spacing(k);
        }
        out
    }

    /// Volume element of a Riemann sum over the grid (1 for periodic grids).
    pub fn cell_volume(&self) -> T {
        match self.mode {
            GridMode::Periodic => T::one(),
            GridMode::Calibrated => self.spacing.iter().fold(T::one(), |a, &d| a * d),
        }
    }

    /// Equality up to rounding in the spacings.
    pub fn matches(&self, other: &Self) -> bool {
        self.sizes == other.sizes
            && self.mode == other.mode
            && self
                .spacing
                .iter()
                .zip(&other.spacing)
                .all(|(a, b)| (*a - *b).abs() <= T::structural_tol() * a.abs().max(b.abs()))
    }

    pub fn ensure_matches(&self, other: &Self, what: &str) -> Result<()> {
        if self.matches(other) {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!(
                "{what}: {:?}/{:?}/{:?} vs {:?}/{:?}/{:?}",
                self.sizes, self.mode, self.spacing, other.sizes, other.mode, other.spacing
            )))
        }
    }

    /// Index of `-x` for the node of index `n`; the same map in both modes.
    pub fn reflect_index(&self, axis: usize, n: usize) -> usize {
        let size = self.sizes[axis];
        (size - n) % size
    }

    /// Converts a physical shift to whole grid steps, rejecting off-grid shifts.
    pub fn shift_steps(&self, y: &[T]) -> Result<Vec<isize>> {
        if y.len() != self.ndim() {
            return Err(Error::DimensionMismatch(format!(
                "shift of length {} on a {}-axis grid",
                y.len(),
                self.ndim()
            )));
        }
        let mut steps = Vec::with_capacity(y.len());
        for (k, &yk) in y.iter().enumerate() {
            let s = yk / self.spacing[k];
            let r = s.round();
            if (s - r).abs() > T::of(1e-9).max(T::structural_tol()) * T::one().max(s.abs()) {
                return Err(Error::OffGrid(y.iter().map(|v| v.as_f64()).collect()));
            }
            steps.push(r.to_isize().unwrap_or(0));
        }
        Ok(steps)
    }
}

fn check_sizes(sizes: &[usize], even: bool) -> Result<()> {
    if sizes.is_empty() {
        return Err(Error::InvalidGrid("grid needs at least one axis".into()));
    }
    for &n in sizes {
        if n < 2 {
            return Err(Error::InvalidGrid(format!("axis length {n} is below 2")));
        }
        if even && n % 2 != 0 {
            return Err(Error::InvalidGrid(format!(
                "calibrated axis length {n} must be even"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ravel_unravel_round_trip() {
        let g = GridSpec::<f64>::periodic(&[3, 4, 5]).unwrap();
        for flat in 0..g.len() {
            assert_eq!(g.ravel(&g.unravel(flat)), flat);
        }
        assert_eq!(g.strides(), vec![20, 5, 1]);
    }

    #[test]
    fn calibrated_nodes_are_centered() {
        let g = GridSpec::calibrated(&[8], &[0.5]).unwrap();
        assert_eq!(g.coordinate(0, 0), -2.0);
        assert_eq!(g.coordinate(0, 4), 0.0);
        // -x_n is x_{N-n}, with x_0 mapping to itself modulo N.
        for n in 1..8 {
            assert_eq!(g.coordinate(0, g.reflect_index(0, n)), -g.coordinate(0, n));
        }
    }

    #[test]
    fn dual_of_dual_is_identity() {
        let g = GridSpec::calibrated(&[64, 32], &[0.25, 0.1]).unwrap();
        assert!(g.dual().dual().matches(&g));
        assert!(!g.dual().matches(&g));
    }

    #[test]
    fn rejects_odd_calibrated_and_off_grid_shift() {
        assert!(GridSpec::calibrated(&[7], &[1.0]).is_err());
        let g = GridSpec::calibrated(&[8, 8], &[0.5, 0.5]).unwrap();
        assert_eq!(g.shift_steps(&[1.0, -1.5]).unwrap(), vec![2, -3]);
        assert!(matches!(g.shift_steps(&[0.3, 0.0]), Err(Error::OffGrid(_))));
    }
}
