//! Finite-dimensional Lie algebras given by structure constants.

use super::LieError;
use crate::linalg::{Matrix, SparseVec};
use crate::scalar::Scalar;

/// A Lie algebra with basis `e_0, …, e_{n-1}` and brackets
/// `[e_i, e_j] = Σ_k c^k_{ij} e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    brackets: Vec<Vec<SparseVec>>,
    name: Option<String>,
}

/// One bracket entry `[e_i, e_j] = Σ coeffs`.
pub type BracketEntry = (usize, usize, Vec<(usize, Scalar)>);

impl LieAlgebra {
    /// Validates antisymmetry and the Jacobi identity by full enumeration.
    pub fn new(dim: usize, entries: &[BracketEntry]) -> Result<Self, LieError> {
        let g = Self::unchecked(dim, entries)?;
        g.check_jacobi()?;
        Ok(g)
    }

    /// Builds the bracket table without checking Jacobi.
    pub fn unchecked(dim: usize, entries: &[BracketEntry]) -> Result<Self, LieError> {
        let mut set = vec![vec![None::<SparseVec>; dim]; dim];
        for (i, j, coeffs) in entries {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim || coeffs.iter().any(|(k, _)| *k >= dim) {
                return Err(LieError::IndexOutOfRange { dim });
            }
            let v = SparseVec::from_pairs(coeffs.iter().cloned());
            if i == j {
                if !v.is_zero() {
                    return Err(LieError::Antisymmetry { i, j });
                }
                continue;
            }
            for (a, b, w) in [(i, j, v.clone()), (j, i, v.neg())] {
                match &set[a][b] {
                    Some(prev) if *prev != w => return Err(LieError::Antisymmetry { i, j }),
                    _ => set[a][b] = Some(w),
                }
            }
        }
        let brackets = set
            .into_iter()
            .map(|row| row.into_iter().map(|v| v.unwrap_or_default()).collect())
            .collect();
        Ok(LieAlgebra { dim, brackets, name: None })
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn abelian(n: usize) -> Self {
        LieAlgebra { dim: n, brackets: vec![vec![SparseVec::new(); n]; n], name: Some(format!("abelian-{n}")) }
    }

    /// `[e0,e1]=e2, [e1,e2]=e0, [e2,e0]=e1`.
    pub fn su2() -> Self {
        let one = Scalar::one();
        Self::new(
            3,
            &[(0, 1, vec![(2, one.clone())]), (1, 2, vec![(0, one.clone())]), (2, 0, vec![(1, one)])],
        )
        .expect("su(2) is a Lie algebra")
        .with_name("su2")
    }

    /// `[e0,e1]=e2`.
    pub fn heisenberg() -> Self {
        Self::new(3, &[(0, 1, vec![(2, Scalar::one())])]).expect("Heisenberg is a Lie algebra").with_name("heisenberg")
    }

    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let n = self.dim + other.dim;
        let mut brackets = vec![vec![SparseVec::new(); n]; n];
        for i in 0..self.dim {
            for j in 0..self.dim {
                brackets[i][j] = self.brackets[i][j].clone();
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                brackets[self.dim + i][self.dim + j] = other.brackets[i][j].shift(self.dim);
            }
        }
        LieAlgebra { dim: n, brackets, name: None }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.brackets[i][j]
    }

    /// `c^k_{ij}`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.brackets[i][j].get(k)
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut pairs = Vec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let ab = a * b;
                for (k, c) in self.brackets[i][j].iter() {
                    pairs.push((k, &ab * c));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.iter().all(|r| r.iter().all(|v| v.is_zero()))
    }

    /// `ad_{e_i}` as an `n × n` matrix.
    pub fn ad(&self, i: usize) -> Matrix {
        Matrix::from_cols(self.dim, self.brackets[i].clone())
    }

    /// `ad_x` for an arbitrary element.
    pub fn ad_of(&self, x: &SparseVec) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (i, c) in x.iter() {
            m = m.add_scaled(c, &self.ad(i));
        }
        m
    }

    /// Coadjoint operator on `g*` in the dual basis: `e^j ↦ -Σ_l c^j_{il} e^l`.
    pub fn coad(&self, i: usize) -> Matrix {
        self.ad(i).transpose().neg()
    }

    /// Jacobiator `[[e_i,e_j],e_l] + [[e_j,e_l],e_i] + [[e_l,e_i],e_j]`.
    pub fn jacobiator(&self, i: usize, j: usize, l: usize) -> SparseVec {
        let (ei, ej, el) = (SparseVec::unit(i), SparseVec::unit(j), SparseVec::unit(l));
        let a = self.bracket(&self.brackets[i][j], &el);
        let b = self.bracket(&self.brackets[j][l], &ei);
        let c = self.bracket(&self.brackets[l][i], &ej);
        a.add(&b).add(&c)
    }

    pub fn check_jacobi(&self) -> Result<(), LieError> {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for l in j + 1..self.dim {
                    if !self.jacobiator(i, j, l).is_zero() {
                        return Err(LieError::JacobiViolation { i, j, l });
                    }
                }
            }
        }
        Ok(())
    }

    /// All brackets as `(i, j, coeffs)` with `i < j`.
    pub fn entries(&self) -> Vec<BracketEntry> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = &self.brackets[i][j];
                if !v.is_zero() {
                    out.push((i, j, v.iter().map(|(k, c)| (k, c.clone())).collect()));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> Scalar {
        Scalar::one()
    }

    #[test]
    fn standard_algebras_pass_jacobi() {
        assert!(LieAlgebra::su2().check_jacobi().is_ok());
        assert!(LieAlgebra::heisenberg().check_jacobi().is_ok());
        assert!(LieAlgebra::abelian(4).check_jacobi().is_ok());
        assert!(LieAlgebra::su2().direct_sum(&LieAlgebra::heisenberg()).check_jacobi().is_ok());
    }

    #[test]
    fn jacobi_violation_has_witness() {
        let r = LieAlgebra::new(
            3,
            &[(0, 1, vec![(2, one())]), (1, 2, vec![(0, one())]), (2, 0, vec![(2, one())])],
        );
        assert_eq!(r.unwrap_err(), LieError::JacobiViolation { i: 0, j: 1, l: 2 });
    }

    #[test]
    fn semidirect_pair_is_lie() {
        // [e0,e1]=e2 and [e0,e2]=e1: ad_{e0} acting on span(e1,e2), which is a Lie algebra.
        let g = LieAlgebra::new(3, &[(0, 1, vec![(2, one())]), (0, 2, vec![(1, one())])]);
        assert!(g.is_ok());
    }

    #[test]
    fn antisymmetry_conflict() {
        let r = LieAlgebra::new(2, &[(0, 1, vec![(0, one())]), (1, 0, vec![(0, one())])]);
        assert_eq!(r.unwrap_err(), LieError::Antisymmetry { i: 1, j: 0 });
        let r = LieAlgebra::new(2, &[(1, 1, vec![(0, one())])]);
        assert!(matches!(r, Err(LieError::Antisymmetry { .. })));
    }

    #[test]
    fn bracket_structure() {
        let g = LieAlgebra::su2();
        assert_eq!(g.c(0, 1, 2), one());
        assert_eq!(g.c(1, 0, 2), -one());
        let ad0 = g.ad(0);
        assert_eq!(ad0.apply(&SparseVec::unit(1)), SparseVec::unit(2));
        assert_eq!(g.bracket(&SparseVec::unit(2), &SparseVec::unit(0)), SparseVec::unit(1));
    }
}
