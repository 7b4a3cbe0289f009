use num_complex::Complex;
use rustfft::FftPlanner;

use crate::gft::{pointwise_product_into, GridMode, GridSpec, MultivectorField};
use crate::{Result, Scalar};

/// Unnormalized multidimensional DFT of every plane, in place. The inverse
/// direction uses `exp(+2 pi i n p / N)` and still leaves out the `1/N`.
pub(crate) fn dft_planes<T: Scalar>(planes: &mut [Vec<Complex<T>>], sizes: &[usize], inverse: bool) {
    let mut planner = FftPlanner::new();
    let total: usize = sizes.iter().product();
    let mut stride = total;
    for &n in sizes.iter() {
        stride /= n;
        let fft = if inverse {
            planner.plan_fft_inverse(n)
        } else {
            planner.plan_fft_forward(n)
        };
        let mut line = vec![Complex::new(T::zero(), T::zero()); n];
        let mut scratch = vec![Complex::new(T::zero(), T::zero()); fft.get_inplace_scratch_len()];
        let outer = total / (n * stride);
        for plane in planes.iter_mut() {
            for o in 0..outer {
                for i in 0..stride {
                    let base = o * n * stride + i;
                    for k in 0..n {
                        line[k] = plane[base + k * stride];
                    }
                    fft.process_with_scratch(&mut line, &mut scratch);
                    for k in 0..n {
                        plane[base + k * stride] = line[k];
                    }
                }
            }
        }
    }
}

/// Turns the raw inverse DFT of a product of raw DFTs into the grid's
/// convolution: divides by the point count, and on calibrated grids
/// re-centers by `N/2` per axis and applies the cell volume.
pub(crate) fn finish_convolution<T: Scalar>(
    mut planes: Vec<Vec<Complex<T>>>,
    grid: &GridSpec<T>,
) -> Vec<Vec<Complex<T>>> {
    dft_planes(&mut planes, grid.sizes(), true);
    let total = grid.len();
    let scale = match grid.mode() {
        GridMode::Periodic => T::one() / T::of_usize(total),
        GridMode::Calibrated => grid.cell_volume() / T::of_usize(total),
    };
    if grid.mode() == GridMode::Periodic {
        for p in planes.iter_mut() {
            p.iter_mut().for_each(|x| *x *= scale);
        }
        return planes;
    }
    // With centered nodes, h(x_q) = delta^m sum_n f(x_n) g(x_q - x_n) picks
    // the circular result at index q + N/2.
    let half: Vec<usize> = grid.sizes().iter().map(|n| n / 2).collect();
    let src: Vec<usize> = (0..total)
        .map(|flat| {
            let mut idx = grid.unravel(flat);
            for (k, i) in idx.iter_mut().enumerate() {
                *i = (*i + half[k]) % grid.sizes()[k];
            }
            grid.ravel(&idx)
        })
        .collect();
    planes
        .into_iter()
        .map(|p| src.iter().map(|&s| p[s] * scale).collect())
        .collect()
}

/// Componentwise convolution with the geometric product between samples:
/// `sum_y f(y) g(x - y)` on periodic grids, the centered Riemann sum
/// `delta^m sum_y f(y) g(x - y)` on calibrated ones. Both are circular.
pub fn classical_convolve<T: Scalar>(
    f: &MultivectorField<T>,
    g: &MultivectorField<T>,
) -> Result<MultivectorField<T>> {
    f.grid().ensure_matches(g.grid(), "classical convolution")?;
    if f.dim() != g.dim() {
        return Err(crate::Error::DimensionMismatch("convolving fields of different algebras".into()));
    }
    let sizes = f.grid().sizes().to_vec();
    let mut fa = f.planes().to_vec();
    let mut ga = g.planes().to_vec();
    dft_planes(&mut fa, &sizes, false);
    dft_planes(&mut ga, &sizes, false);
    let mut prod = vec![vec![Complex::new(T::zero(), T::zero()); f.len()]; f.dim().blades()];
    pointwise_product_into(&fa, &ga, &mut prod);
    let planes = finish_convolution(prod, f.grid());
    MultivectorField::from_planes(f.grid().clone(), f.dim(), planes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::AlgebraDim;

    fn direct(f: &MultivectorField<f64>, g: &MultivectorField<f64>) -> MultivectorField<f64> {
        let grid = f.grid().clone();
        let mut out = MultivectorField::zeros(grid.clone(), f.dim());
        let sizes = grid.sizes().to_vec();
        let shift: Vec<usize> = match grid.mode() {
            GridMode::Periodic => vec![0; sizes.len()],
            GridMode::Calibrated => sizes.iter().map(|n| n / 2).collect(),
        };
        for x in 0..grid.len() {
            let xi = grid.unravel(x);
            let mut acc = crate::Multivector::zero(f.dim());
            for y in 0..grid.len() {
                let yi = grid.unravel(y);
                let d: Vec<usize> = (0..sizes.len())
                    .map(|k| (xi[k] + 2 * sizes[k] - yi[k] + shift[k]) % sizes[k])
                    .collect();
                acc += &f.get(y).gp(&g.get_at(&d));
            }
            out.set(x, &acc.scale_real(grid.cell_volume()));
        }
        out
    }

    #[test]
    fn fft_convolution_matches_direct_sum() {
        let d = AlgebraDim::new(2).unwrap();
        for grid in [
            GridSpec::periodic(&[5, 4]).unwrap(),
            GridSpec::calibrated(&[6, 4], &[0.5, 0.25]).unwrap(),
        ] {
            let f = MultivectorField::random(grid.clone(), d, 1);
            let g = MultivectorField::random(grid, d, 2);
            let fast = classical_convolve(&f, &g).unwrap();
            assert!(fast.max_gap(&direct(&f, &g)) < 1e-12);
        }
    }

    #[test]
    fn impulse_is_the_unit() {
        let d = AlgebraDim::new(2).unwrap();
        let grid = GridSpec::<f64>::periodic(&[4, 6]).unwrap();
        let g = MultivectorField::random(grid.clone(), d, 3);
        let mut delta = MultivectorField::zeros(grid, d);
        delta.set(0, &crate::Multivector::one(d));
        assert!(classical_convolve(&delta, &g).unwrap().max_gap(&g) < 1e-14);
    }
}
