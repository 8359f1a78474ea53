//! Basic subcomplexes and connection elements of locally free complexes.

use super::{GDiffComplex, GDiffError};
use crate::linalg::{joint_kernel_within, CochainComplex, LinalgError, Matrix, Solver, SparseVec, Subspace};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct BasicSubcomplex {
    pub subspaces: Vec<Subspace>,
    pub complex: CochainComplex,
}

/// Joint kernel of every `i_ξ` and `L_ξ`, with the restricted differential.
pub fn basic_subcomplex(c: &GDiffComplex) -> Result<BasicSubcomplex, GDiffError> {
    let n = c.algebra().dim();
    let subspaces: Vec<Subspace> = (0..c.len())
        .map(|deg| {
            let mut ops = Vec::with_capacity(2 * n);
            for j in 0..n {
                if deg > 0 {
                    ops.push(c.i(j, deg));
                }
            }
            for j in 0..n {
                ops.push(c.l(j, deg));
            }
            let refs: Vec<&Matrix> = ops.iter().collect();
            joint_kernel_within(&Subspace::full(c.dim(deg)), &refs)
        })
        .collect();
    let complex = c.complex().restrict(&subspaces).map_err(|e| match e {
        LinalgError::NotSubcomplex { degree } => GDiffError::NotSubcomplex { degree },
        other => GDiffError::Linalg(other),
    })?;
    Ok(BasicSubcomplex { subspaces, complex })
}

/// Solves for `Θ: g* → C^1` with `i_{e_j} Θ(e^k) = δ_{jk} · 1` and
/// `L_{e_j} Θ(λ) = Θ(ad*_{e_j} λ)`. Returns the `dim C^1 × dim g` matrix
/// whose columns are `Θ(e^k)`, or `None` when the system is inconsistent.
pub fn locally_free_connection(c: &GDiffComplex) -> Result<Option<Matrix>, GDiffError> {
    let unit = c.unit().ok_or(GDiffError::NoUnit)?.clone();
    let g = c.algebra();
    let n = g.dim();
    let d0 = c.dim(0);
    let d1 = c.dim(1);
    let var = |k: usize, t: usize| k * d1 + t;
    let mut rows: Vec<(SparseVec, Scalar)> = Vec::new();
    for j in 0..n {
        let ij = c.i(j, 1);
        let ijt = ij.transpose();
        for k in 0..n {
            for r in 0..d0 {
                let row = ijt.col(r).reindex(|t| var(k, t));
                let rhs = if j == k { unit.get(r) } else { Scalar::zero() };
                rows.push((row, rhs));
            }
        }
    }
    for j in 0..n {
        let lt = c.l(j, 1).transpose();
        let coad = g.coad(j);
        for k in 0..n {
            for r in 0..d1 {
                let mut row = lt.col(r).reindex(|t| var(k, t));
                for (l, a) in coad.col(k).iter() {
                    row = row.add_scaled(&-a, &SparseVec::unit(var(l, r)));
                }
                if !row.is_zero() {
                    rows.push((row, Scalar::zero()));
                }
            }
        }
    }
    if n == 0 {
        return Ok(Some(Matrix::zeros(d1, 0)));
    }
    let a = Matrix::from_cols(n * d1, rows.iter().map(|(r, _)| r.clone()).collect()).transpose();
    let b = SparseVec::from_pairs(rows.iter().enumerate().map(|(i, (_, c))| (i, c.clone())));
    Ok(Solver::new(&a).solve(&b).map(|x| Matrix::from_cols(d1, (0..n).map(|k| x.slice(k * d1, (k + 1) * d1)).collect())))
}

/// Checks that `theta` satisfies both defining conditions.
pub fn is_connection(c: &GDiffComplex, theta: &Matrix) -> bool {
    let Some(unit) = c.unit() else { return false };
    let g = c.algebra();
    let n = g.dim();
    for k in 0..n {
        let x = theta.col(k);
        for j in 0..n {
            let want = if j == k { unit.clone() } else { SparseVec::new() };
            if c.i(j, 1).apply(x) != want {
                return false;
            }
            let rhs = theta.apply(g.coad(j).col(k));
            if c.l(j, 1).apply(x) != rhs {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gdiff::WeilAlgebra;
    use crate::lie::{CeComplex, LieAlgebra, SubalgebraData};

    #[test]
    fn weil_connection_is_inclusion() {
        let g = LieAlgebra::su2();
        let w = WeilAlgebra::new(&g, 1).unwrap();
        let theta = locally_free_connection(w.gdiff()).unwrap().unwrap();
        for k in 0..3 {
            assert_eq!(theta.col(k), &w.theta(k));
        }
    }

    #[test]
    fn restricted_ce_connection() {
        let g = LieAlgebra::su2();
        let k = SubalgebraData::coordinate(&g, &[2]).unwrap().with_invariant_complement().unwrap();
        let c = GDiffComplex::from_ce_restricted(&CeComplex::trivial(&g), &k);
        let theta = locally_free_connection(&c).unwrap().unwrap();
        // θ* sends the dual generator of k to e^2.
        assert_eq!(theta, k.theta().unwrap().transpose());
        assert!(is_connection(&c, &theta));
    }

    #[test]
    fn zero_contractions_have_no_connection() {
        let g = LieAlgebra::abelian(1);
        let ce = CeComplex::trivial(&LieAlgebra::abelian(2));
        let base = GDiffComplex::from_ce(&ce).forget_action();
        let c = GDiffComplex::unchecked(
            &g,
            base.complex().clone(),
            vec![(0..base.len()).map(|n| Matrix::zeros(if n == 0 { 0 } else { base.dim(n - 1) }, base.dim(n))).collect()],
            vec![(0..base.len()).map(|n| Matrix::zeros(base.dim(n), base.dim(n))).collect()],
        )
        .unwrap()
        .with_unit(SparseVec::unit(0));
        assert!(locally_free_connection(&c).unwrap().is_none());
    }

    #[test]
    fn basic_of_point_is_point() {
        let b = basic_subcomplex(&GDiffComplex::point(&LieAlgebra::su2())).unwrap();
        assert_eq!(b.complex.dims(), &[1]);
    }
}
