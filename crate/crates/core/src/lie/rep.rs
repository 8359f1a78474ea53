//! Representations and their derivation extensions.

use super::{LieAlgebra, LieError};
use crate::basis::{wedge_sign, ExteriorBasis, SymmetricBasis};
use crate::linalg::{joint_kernel, Matrix, SparseVec, Subspace};
use crate::scalar::Scalar;

/// A representation `ρ: g → gl(V)`, one operator per basis element of `g`.
#[derive(Clone, Debug)]
pub struct Representation {
    dim: usize,
    ops: Vec<Matrix>,
}

impl Representation {
    /// Validates shapes and `ρ([e_i,e_j]) = [ρ(e_i), ρ(e_j)]`.
    pub fn new(g: &LieAlgebra, dim: usize, ops: Vec<Matrix>) -> Result<Self, LieError> {
        let r = Representation { dim, ops };
        r.check(g)?;
        Ok(r)
    }

    pub fn check(&self, g: &LieAlgebra) -> Result<(), LieError> {
        if self.ops.len() != g.dim() || self.ops.iter().any(|m| m.shape() != (self.dim, self.dim)) {
            return Err(LieError::RepresentationShape { dim: self.dim, generators: g.dim() });
        }
        for i in 0..g.dim() {
            for j in i + 1..g.dim() {
                let lhs = self.op_of(g.bracket_basis(i, j));
                let rhs = self.ops[i].mul(&self.ops[j]).sub(&self.ops[j].mul(&self.ops[i]));
                if lhs != rhs {
                    return Err(LieError::RepresentationInvalid { i, j });
                }
            }
        }
        Ok(())
    }

    pub fn trivial(g: &LieAlgebra, dim: usize) -> Self {
        Representation { dim, ops: vec![Matrix::zeros(dim, dim); g.dim()] }
    }

    pub fn adjoint(g: &LieAlgebra) -> Self {
        Representation { dim: g.dim(), ops: (0..g.dim()).map(|i| g.ad(i)).collect() }
    }

    pub fn coadjoint(g: &LieAlgebra) -> Self {
        Representation { dim: g.dim(), ops: (0..g.dim()).map(|i| g.coad(i)).collect() }
    }

    /// `S^d V` with `g` acting by derivations.
    pub fn symmetric_power(&self, d: usize) -> Self {
        let sym = SymmetricBasis::new(self.dim, d);
        let ops = self.ops.iter().map(|a| symmetric_derivation(a, &sym, d)).collect();
        Representation { dim: sym.dim(d), ops }
    }

    /// `V ⊗ W` with index `(a, b) ↦ a * dim W + b`.
    pub fn tensor(&self, other: &Representation) -> Self {
        let (ia, ib) = (Matrix::identity(self.dim), Matrix::identity(other.dim));
        let ops = self.ops.iter().zip(&other.ops).map(|(a, b)| a.kron(&ib).add(&ia.kron(b))).collect();
        Representation { dim: self.dim * other.dim, ops }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn op(&self, i: usize) -> &Matrix {
        &self.ops[i]
    }

    pub fn ops(&self) -> &[Matrix] {
        &self.ops
    }

    /// `ρ(x)` for `x = Σ x^i e_i`.
    pub fn op_of(&self, x: &SparseVec) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (i, c) in x.iter() {
            m = m.add_scaled(c, &self.ops[i]);
        }
        m
    }

    /// `V^g`, the joint kernel.
    pub fn invariants(&self) -> Subspace {
        let refs: Vec<&Matrix> = self.ops.iter().collect();
        joint_kernel(self.dim, &refs)
    }
}

/// Extends `a ∈ gl(V)` to a derivation of `∧^k V` (basis from `ext`).
pub fn exterior_derivation(a: &Matrix, ext: &ExteriorBasis, k: usize) -> Matrix {
    let basis = ext.degree(k);
    let cols = basis
        .iter()
        .map(|&mask| {
            let mut pairs = Vec::new();
            let mut s = 0usize;
            for i in 0..ext.generators() {
                if mask & (1 << i) == 0 {
                    continue;
                }
                let rest = mask & !(1 << i);
                let sign = if s.is_multiple_of(2) { Scalar::one() } else { -Scalar::one() };
                for (l, c) in a.col(i).iter() {
                    if let Some((m, t)) = wedge_sign(l, rest) {
                        pairs.push((ext.pos(m), &(c * &sign) * &Scalar::from_int(t)));
                    }
                }
                s += 1;
            }
            SparseVec::from_pairs(pairs)
        })
        .collect();
    Matrix::from_cols(basis.len(), cols)
}

/// Extends `a ∈ gl(V)` to a derivation of `S^d V` (basis from `sym`).
pub fn symmetric_derivation(a: &Matrix, sym: &SymmetricBasis, d: usize) -> Matrix {
    let basis = sym.degree(d);
    let cols = basis
        .iter()
        .map(|m| {
            let mut pairs = Vec::new();
            for i in 0..m.len() {
                if m[i] == 0 {
                    continue;
                }
                let mult = Scalar::from_int(m[i] as i64);
                for (l, c) in a.col(i).iter() {
                    let mut e = m.clone();
                    e[i] -= 1;
                    e[l] += 1;
                    pairs.push((sym.pos(&e), &mult * c));
                }
            }
            SparseVec::from_pairs(pairs)
        })
        .collect();
    Matrix::from_cols(basis.len(), cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjoint_and_coadjoint_are_representations() {
        let g = LieAlgebra::su2();
        Representation::adjoint(&g).check(&g).unwrap();
        Representation::coadjoint(&g).check(&g).unwrap();
        let h = LieAlgebra::heisenberg();
        Representation::coadjoint(&h).check(&h).unwrap();
        Representation::coadjoint(&h).symmetric_power(3).check(&h).unwrap();
    }

    #[test]
    fn broken_representation_rejected() {
        let g = LieAlgebra::su2();
        let mut ops = Representation::adjoint(&g).ops().to_vec();
        ops[0] = ops[0].neg();
        assert!(matches!(Representation::new(&g, 3, ops), Err(LieError::RepresentationInvalid { .. })));
    }

    #[test]
    fn adjoint_invariants_of_su2_vanish() {
        let g = LieAlgebra::su2();
        assert_eq!(Representation::adjoint(&g).invariants().dim(), 0);
        let s2 = Representation::coadjoint(&g).symmetric_power(2);
        assert_eq!(s2.dim(), 6);
        assert_eq!(s2.invariants().dim(), 1);
        let t = Representation::adjoint(&g).tensor(&Representation::adjoint(&g));
        t.check(&g).unwrap();
        assert_eq!(t.invariants().dim(), 1);
    }

    #[test]
    fn exterior_top_degree_is_trace() {
        let g = LieAlgebra::heisenberg();
        let ext = ExteriorBasis::new(3);
        for i in 0..3 {
            let top = exterior_derivation(&g.coad(i), &ext, 3);
            assert!(top.is_zero());
        }
    }
}
