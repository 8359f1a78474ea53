//! Lie bialgebra data: a cobracket `δ: g → ∧²g` and the dual bracket on `g*`.

use super::rep::exterior_derivation;
use super::{LieAlgebra, LieError};
use crate::basis::ExteriorBasis;
use crate::linalg::{Matrix, SparseVec};

#[derive(Clone, Debug)]
pub struct BialgebraData {
    g: LieAlgebra,
    /// `binom(n,2) × n`; column `k` is `δ(e_k)` in the lexicographic `∧²` basis.
    delta: Matrix,
    dual: LieAlgebra,
}

impl BialgebraData {
    pub fn new(g: &LieAlgebra, delta: Matrix) -> Result<Self, LieError> {
        let n = g.dim();
        let ext = ExteriorBasis::new(n);
        if delta.shape() != (ext.dim(2), n) {
            return Err(LieError::CobracketShape { expected: (ext.dim(2), n), found: delta.shape() });
        }
        // δ([e_i,e_j]) = ad_i δ(e_j) - ad_j δ(e_i) on ∧²g.
        let ad2: Vec<Matrix> = (0..n).map(|i| exterior_derivation(&g.ad(i), &ext, 2)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = delta.apply(g.bracket_basis(i, j));
                let rhs = ad2[i].apply(delta.col(j)).sub(&ad2[j].apply(delta.col(i)));
                if lhs != rhs {
                    return Err(LieError::CocycleViolation { i, j });
                }
            }
        }
        // [e^a, e^b]_* = Σ_k δ(e_k)_{ab} e^k.
        let mut entries = Vec::new();
        for (p, &mask) in ext.degree(2).iter().enumerate() {
            let a = mask.trailing_zeros() as usize;
            let b = 31 - mask.leading_zeros() as usize;
            let row = delta.row(p);
            if !row.is_zero() {
                entries.push((a, b, row.iter().map(|(k, c)| (k, c.clone())).collect()));
            }
        }
        let dual = LieAlgebra::unchecked(n, &entries)?;
        if let Err(LieError::JacobiViolation { i, j, l }) = dual.check_jacobi() {
            return Err(LieError::DualJacobiViolation { i, j, l });
        }
        Ok(BialgebraData { g: g.clone(), delta, dual })
    }

    pub fn zero(g: &LieAlgebra) -> Self {
        let n = g.dim();
        Self::new(g, Matrix::zeros(ExteriorBasis::new(n).dim(2), n)).expect("zero cobracket is valid")
    }

    /// `δ(ξ) = ad_ξ r` for `r ∈ ∧²g`.
    pub fn coboundary(g: &LieAlgebra, r: &SparseVec) -> Result<Self, LieError> {
        let ext = ExteriorBasis::new(g.dim());
        let cols = (0..g.dim()).map(|i| exterior_derivation(&g.ad(i), &ext, 2).apply(r)).collect();
        Self::new(g, Matrix::from_cols(ext.dim(2), cols))
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn delta(&self) -> &Matrix {
        &self.delta
    }

    /// `g*` with the bracket dual to `δ`.
    pub fn dual(&self) -> &LieAlgebra {
        &self.dual
    }

    pub fn is_zero(&self) -> bool {
        self.delta.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::mask_of;
    use crate::scalar::Scalar;

    #[test]
    fn zero_cobracket_gives_abelian_dual() {
        let b = BialgebraData::zero(&LieAlgebra::su2());
        assert!(b.dual().is_abelian());
    }

    #[test]
    fn coboundary_is_cocycle() {
        let g = LieAlgebra::su2();
        let ext = ExteriorBasis::new(3);
        let r = SparseVec::unit(ext.pos(mask_of(&[0, 1])));
        let b = BialgebraData::coboundary(&g, &r).unwrap();
        assert!(!b.is_zero());
    }

    #[test]
    fn non_cocycle_rejected() {
        let g = LieAlgebra::su2();
        let delta = Matrix::from_triplets(3, 3, [(0, 0, Scalar::one())]);
        assert_eq!(BialgebraData::new(&g, delta).unwrap_err(), LieError::CocycleViolation { i: 0, j: 1 });
    }

    #[test]
    fn abelian_plane_with_cobracket() {
        let g = LieAlgebra::abelian(2);
        let delta = Matrix::from_triplets(1, 2, [(0, 0, Scalar::one())]);
        let b = BialgebraData::new(&g, delta).unwrap();
        assert_eq!(b.dual().c(0, 1, 0), Scalar::one());
    }
}
