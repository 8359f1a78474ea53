//! Finite bases of polynomial multivectors or forms, and matrices of operators on them.

use std::collections::HashMap;

use rayon::prelude::*;

use super::field::{Field, Kind};
use super::poly::{monomials_of_degree, Mono, Poly};
use super::PoissonError;
use crate::basis::ExteriorBasis;
use crate::linalg::{GradedSpace, Matrix, SparseVec};

/// Which coefficient degrees appear in each multivector (or form) degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// `|e| + λ q ≤ N`; `λ = 0` bounds the coefficient degree.
    UpTo { lambda: i64, max: i64 },
    /// `|e| + λ q = w`.
    Weight { lambda: i64, weight: i64 },
}

/// Basis `x^e ∂_I` (or `x^e dx_I`) ordered by `I` in exterior order, then by monomial.
#[derive(Clone, Debug)]
pub struct Model<K: Kind> {
    n: usize,
    truncation: Truncation,
    basis: Vec<Vec<(u32, Mono)>>,
    index: Vec<HashMap<(u32, Mono), usize>>,
    _k: std::marker::PhantomData<K>,
}

impl<K: Kind> Model<K> {
    pub fn new(n: usize, truncation: Truncation) -> Self {
        let ext = ExteriorBasis::new(n);
        let mut basis = Vec::with_capacity(n + 1);
        for q in 0..=n {
            let degs: Vec<u32> = match truncation {
                Truncation::UpTo { lambda, max } => {
                    let top = max - lambda * q as i64;
                    (0..=top.max(-1)).map(|d| d as u32).collect()
                }
                Truncation::Weight { lambda, weight } => {
                    let d = weight - lambda * q as i64;
                    if d >= 0 {
                        vec![d as u32]
                    } else {
                        vec![]
                    }
                }
            };
            let monos: Vec<Mono> = degs.iter().flat_map(|&d| monomials_of_degree(n, d)).collect();
            let mut b = Vec::new();
            for &mask in ext.degree(q) {
                for e in &monos {
                    b.push((mask, e.clone()));
                }
            }
            basis.push(b);
        }
        let index = basis
            .iter()
            .map(|b| b.iter().enumerate().map(|(k, x)| (x.clone(), k)).collect())
            .collect();
        Model { n, truncation, basis, index, _k: std::marker::PhantomData }
    }

    pub fn truncated(n: usize, max_degree: u32) -> Self {
        Self::new(n, Truncation::UpTo { lambda: 0, max: max_degree as i64 })
    }

    pub fn slice(n: usize, lambda: i64, weight: i64) -> Self {
        Self::new(n, Truncation::Weight { lambda, weight })
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b.len()).collect()
    }

    pub fn dim(&self, q: usize) -> usize {
        self.basis.get(q).map_or(0, |b| b.len())
    }

    pub fn space(&self) -> GradedSpace {
        GradedSpace::new(self.dims())
    }

    pub fn basis(&self, q: usize) -> &[(u32, Mono)] {
        &self.basis[q]
    }

    pub fn element(&self, q: usize, k: usize) -> Field<K> {
        let (mask, e) = &self.basis[q][k];
        Field::term(self.n, *mask, Poly::monomial(self.n, e.clone(), crate::Scalar::one()))
    }

    pub fn vector(&self, q: usize, v: &SparseVec) -> Field<K> {
        let mut f = Field::zero(self.n);
        for (k, c) in v.iter() {
            let (mask, e) = &self.basis[q][k];
            f.add_term(*mask, Poly::monomial(self.n, e.clone(), c.clone()));
        }
        f
    }

    /// Coordinates of a field of degree `q`; `Err` carries the first component outside the basis.
    pub fn coords(&self, q: usize, f: &Field<K>) -> Result<SparseVec, (u32, Mono)> {
        let mut pairs = Vec::new();
        for (mask, e, c) in f.entries() {
            if mask.count_ones() as usize != q {
                return Err((mask, e));
            }
            match self.index.get(q).and_then(|ix| ix.get(&(mask, e.clone()))) {
                Some(&k) => pairs.push((k, c)),
                None => return Err((mask, e)),
            }
        }
        Ok(SparseVec::from_pairs(pairs))
    }

    /// Coordinates with components outside the basis dropped.
    pub fn coords_truncated(&self, q: usize, f: &Field<K>) -> SparseVec {
        let pairs = f
            .entries()
            .into_iter()
            .filter_map(|(mask, e, c)| self.index.get(q)?.get(&(mask, e)).map(|&k| (k, c)))
            .collect::<Vec<_>>();
        SparseVec::from_pairs(pairs)
    }

    /// Matrices of `f` from degree `q` to degree `q + shift` of `target`, for every `q`.
    /// With `strict`, an image leaving the target basis is an error.
    pub fn operator<K2, F>(
        &self,
        target: &Model<K2>,
        shift: i64,
        strict: bool,
        f: F,
    ) -> Result<Vec<Matrix>, PoissonError>
    where
        F: Fn(&Field<K>) -> Field<K2> + Sync,
        K: Sync + Send,
        K2: Kind + Sync + Send,
    {
        (0..=self.n)
            .map(|q| {
                let t = q as i64 + shift;
                let rows = if t < 0 { 0 } else { target.dim(t as usize) };
                let cols: Result<Vec<SparseVec>, PoissonError> = (0..self.dim(q))
                    .into_par_iter()
                    .map(|k| {
                        let img = f(&self.element(q, k));
                        if t < 0 || t as usize > target.n {
                            return if img.is_zero() || !strict {
                                Ok(SparseVec::new())
                            } else {
                                Err(PoissonError::ModelNotClosed { degree: q })
                            };
                        }
                        if strict {
                            target.coords(t as usize, &img).map_err(|_| PoissonError::ModelNotClosed { degree: q })
                        } else {
                            Ok(target.coords_truncated(t as usize, &img))
                        }
                    })
                    .collect();
                Ok(Matrix::from_cols(rows, cols?))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::field::{PolyForm, PolyMultivector};

    #[test]
    fn slice_dims() {
        let m = Model::<super::super::field::Vectors>::slice(3, 0, 2);
        assert_eq!(m.dims(), vec![6, 18, 18, 6]);
        let w = Model::<super::super::field::Vectors>::slice(2, 1, 2);
        assert_eq!(w.dims(), vec![3, 4, 1]);
    }

    #[test]
    fn coords_round_trip() {
        let m: Model<super::super::field::Covectors> = Model::truncated(2, 2);
        let f = PolyForm::basis(2, 1).mul_poly(&Poly::var(2, 0).pow(2));
        let v = m.coords(1, &f).unwrap();
        assert_eq!(m.vector(1, &v), f);
        let g = PolyMultivector::basis(2, 0);
        let mv: Model<super::super::field::Vectors> = Model::truncated(2, 0);
        assert!(mv.coords(1, &g.mul_poly(&Poly::var(2, 0))).is_err());
    }
}
