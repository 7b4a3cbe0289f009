//! Separable Hermite functions diagonalize the transform: with one root per
//! axis, `psi_j(x) = prod_k psi_{j_k}(x_k)` maps to
//! `(-i_1)^{j_1} ... (-i_s)^{j_s} psi_j(u) (-i_{s+1})^{j_{s+1}} ... (-i_m)^{j_m}`.

use super::{GftPlan, GridSpec, MultivectorField};
use crate::clifford::{AlgebraDim, Multivector};
use crate::special::hermite_function;
use crate::{Error, Result, Scalar};

/// Scalar field `prod_k psi_{j_k}(x_k)` sampled on `grid`.
pub fn hermite_field<T: Scalar>(grid: &GridSpec<T>, dim: AlgebraDim, j: &[usize]) -> Result<MultivectorField<T>> {
    if j.len() != grid.ndim() {
        return Err(Error::InvalidIndex(format!(
            "{} Hermite orders for a {}-axis grid",
            j.len(),
            grid.ndim()
        )));
    }
    Ok(MultivectorField::from_coord_fn(grid.clone(), dim, |x| {
        let v = x
            .iter()
            .zip(j)
            .fold(T::one(), |acc, (&xk, &jk)| acc * hermite_function(jk, xk));
        Multivector::real(dim, v)
    }))
}

/// Left and right eigenvalue factors of the Hermite function of order `j`.
pub fn hermite_eigenvalue<T: Scalar>(plan: &GftPlan<T>, j: &[usize]) -> Result<(Multivector<T>, Multivector<T>)> {
    let m = plan.dim().m();
    if j.len() != m {
        return Err(Error::InvalidIndex(format!("{} Hermite orders for m = {m}", j.len())));
    }
    let power = |axis: usize| {
        let minus_root = -plan.root(axis).value().clone();
        (0..j[axis]).fold(Multivector::one(plan.dim()), |acc, _| acc.gp(&minus_root))
    };
    let left = (0..plan.split()).fold(Multivector::one(plan.dim()), |acc, k| acc.gp(&power(k)));
    let right = (plan.split()..m).fold(Multivector::one(plan.dim()), |acc, k| acc.gp(&power(k)));
    Ok((left, right))
}

/// Relative Frobenius gap between the transform of `psi_j` and its closed form.
pub fn hermite_eigen_gap<T: Scalar>(plan: &GftPlan<T>, j: &[usize]) -> Result<T> {
    let f = hermite_field(plan.grid(), plan.dim(), j)?;
    let (left, right) = hermite_eigenvalue(plan, j)?;
    let want = hermite_field(&plan.grid().dual(), plan.dim(), j)?.sandwich(&left, &right);
    Ok(plan.forward(&f)?.rel_gap(&want))
}

/// All multi-indices of length `m` with `sum j_k <= total`.
pub fn multi_indices(m: usize, total: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; m];
    fn rec(k: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[k] = v;
            rec(k + 1, left - v, cur, out);
        }
        cur[k] = 0;
    }
    rec(0, total, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::RootOfMinusOne;
    use crate::GridMode;

    #[test]
    fn index_count_is_binomial() {
        assert_eq!(multi_indices(2, 6).len(), 28);
        assert_eq!(multi_indices(3, 6).len(), 84);
        assert!(multi_indices(3, 2).iter().all(|j| j.iter().sum::<usize>() <= 2));
    }

    #[test]
    fn bivector_root_gives_minus_e12() {
        let d = AlgebraDim::new(2).unwrap();
        let e12 = RootOfMinusOne::<f64>::parse(d, "e12").unwrap();
        let grid = GridSpec::cube(2, 64, GridMode::Calibrated, 0.25).unwrap();
        let plan = GftPlan::new(grid, vec![e12.clone(), RootOfMinusOne::generator(d, 0)], vec![]).unwrap();
        let (left, right) = hermite_eigenvalue(&plan, &[1, 0]).unwrap();
        assert!(left.approx_eq(&-e12.value().clone(), 0.0));
        assert!(right.approx_eq(&Multivector::one(d), 0.0));
        assert!(hermite_eigen_gap(&plan, &[1, 0]).unwrap() < 1e-8);
    }

    #[test]
    fn gaussian_is_fixed() {
        let grid = GridSpec::cube(2, 64, GridMode::Calibrated, 0.25).unwrap();
        let plan = GftPlan::<f64>::generators(grid, 1).unwrap();
        assert!(hermite_eigen_gap(&plan, &[0, 0]).unwrap() < 1e-8);
    }

    #[test]
    fn low_orders_on_a_mixed_plan() {
        let d = AlgebraDim::new(3).unwrap();
        let grid = GridSpec::cube(3, 48, GridMode::Calibrated, 0.3).unwrap();
        let roots: Vec<_> = ["e12", "e23", "e13"]
            .iter()
            .map(|s| RootOfMinusOne::<f64>::parse(d, s).unwrap())
            .collect();
        let plan = GftPlan::new(grid, roots[..2].to_vec(), roots[2..].to_vec()).unwrap();
        for j in multi_indices(3, 3) {
            let gap = hermite_eigen_gap(&plan, &j).unwrap();
            assert!(gap < 1e-6, "{j:?}: {gap}");
        }
    }
}
