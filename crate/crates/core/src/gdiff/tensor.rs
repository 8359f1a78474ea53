//! Tensor products of G-differential complexes with Koszul signs.
//!
//! Degree `n` of `A ⊗ B` is `⊕_{p+q=n} A^p ⊗ B^q` with `p` ascending and
//! `a ⊗ b` at `offset(p) + a * dim B^q + b`.

use super::{GDiffComplex, GDiffError};
use crate::linalg::{CochainComplex, GradedSpace, Matrix, SparseVec};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct TensorLayout {
    a_dims: Vec<usize>,
    b_dims: Vec<usize>,
    offsets: Vec<Vec<Option<usize>>>,
    dims: Vec<usize>,
}

impl TensorLayout {
    pub fn new(a_dims: &[usize], b_dims: &[usize]) -> Self {
        let total = if a_dims.is_empty() || b_dims.is_empty() { 0 } else { a_dims.len() + b_dims.len() - 1 };
        let mut offsets = Vec::with_capacity(total);
        let mut dims = Vec::with_capacity(total);
        for n in 0..total {
            let mut off = 0;
            let mut row = vec![None; a_dims.len()];
            for (p, slot) in row.iter_mut().enumerate() {
                if p > n || n - p >= b_dims.len() {
                    continue;
                }
                *slot = Some(off);
                off += a_dims[p] * b_dims[n - p];
            }
            offsets.push(row);
            dims.push(off);
        }
        TensorLayout { a_dims: a_dims.to_vec(), b_dims: b_dims.to_vec(), offsets, dims }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn offset(&self, n: usize, p: usize) -> Option<usize> {
        *self.offsets.get(n)?.get(p)?
    }

    pub fn index(&self, p: usize, a: usize, q: usize, b: usize) -> usize {
        self.offset(p + q, p).expect("block exists") + a * self.b_dims[q] + b
    }

    /// `(p, a, q, b)` of a basis index in degree `n`.
    pub fn decompose(&self, n: usize, idx: usize) -> (usize, usize, usize, usize) {
        for p in 0..self.a_dims.len() {
            if let Some(off) = self.offset(n, p) {
                let q = n - p;
                let size = self.a_dims[p] * self.b_dims[q];
                if idx >= off && idx < off + size {
                    let r = idx - off;
                    return (p, r / self.b_dims[q], q, r % self.b_dims[q]);
                }
            }
        }
        panic!("index {idx} out of range in degree {n}");
    }

    /// `α ⊗ β` with Koszul sign `(-1)^{|β| p}`: `α(p): A^p → A^{p+ka}`,
    /// `β(q): B^q → B^{q+kb}`; exactly one of the factors should be odd-shifting
    /// when `sign` is requested.
    pub fn tensor_op(
        &self,
        n: usize,
        alpha: &dyn Fn(usize) -> Matrix,
        ka: i64,
        beta: &dyn Fn(usize) -> Matrix,
        kb: i64,
        koszul: bool,
    ) -> Matrix {
        let tn = n as i64 + ka + kb;
        let rows = if tn < 0 { 0 } else { self.dims.get(tn as usize).copied().unwrap_or(0) };
        let mut cols = vec![SparseVec::new(); self.dims[n]];
        for p in 0..self.a_dims.len() {
            let Some(off) = self.offset(n, p) else { continue };
            let q = n - p;
            let (tp, tq) = (p as i64 + ka, q as i64 + kb);
            if tp < 0 || tq < 0 || tn < 0 {
                continue;
            }
            let Some(toff) = self.offset(tn as usize, tp as usize) else { continue };
            let am = alpha(p);
            let bm = beta(q);
            let sign = if koszul && p % 2 == 1 { -Scalar::one() } else { Scalar::one() };
            let tb = self.b_dims[tq as usize];
            for a in 0..self.a_dims[p] {
                for b in 0..self.b_dims[q] {
                    let mut pairs = Vec::new();
                    for (a2, x) in am.col(a).iter() {
                        let xs = x * &sign;
                        for (b2, y) in bm.col(b).iter() {
                            pairs.push((toff + a2 * tb + b2, &xs * y));
                        }
                    }
                    cols[off + a * self.b_dims[q] + b] = SparseVec::from_pairs(pairs);
                }
            }
        }
        Matrix::from_cols(rows, cols)
    }
}

#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub layout: TensorLayout,
    pub gdiff: GDiffComplex,
}

/// `d(a⊗b) = da⊗b + (-1)^{|a|} a⊗db`, `i` likewise, `L = L⊗1 + 1⊗L`.
pub fn tensor_product(a: &GDiffComplex, b: &GDiffComplex) -> Result<TensorProduct, GDiffError> {
    if a.algebra() != b.algebra() {
        return Err(GDiffError::MismatchedAlgebra);
    }
    let g = a.algebra();
    let layout = TensorLayout::new(a.space().dims(), b.space().dims());
    let ia = |p: usize| Matrix::identity(a.dim(p));
    let ib = |q: usize| Matrix::identity(b.dim(q));
    let total = layout.len();
    let d = (0..total)
        .map(|n| {
            layout
                .tensor_op(n, &|p| a.d(p), 1, &ib, 0, false)
                .add(&layout.tensor_op(n, &ia, 0, &|q| b.d(q), 1, true))
        })
        .collect();
    let i = (0..g.dim())
        .map(|j| {
            (0..total)
                .map(|n| {
                    layout
                        .tensor_op(n, &|p| a.i(j, p), -1, &ib, 0, false)
                        .add(&layout.tensor_op(n, &ia, 0, &|q| b.i(j, q), -1, true))
                })
                .collect()
        })
        .collect();
    let l = (0..g.dim())
        .map(|j| {
            (0..total)
                .map(|n| {
                    layout
                        .tensor_op(n, &|p| a.l(j, p), 0, &ib, 0, false)
                        .add(&layout.tensor_op(n, &ia, 0, &|q| b.l(j, q), 0, false))
                })
                .collect()
        })
        .collect();
    let complex = CochainComplex::new(GradedSpace::new(layout.dims().to_vec()), d)?;
    let mut gd = GDiffComplex::unchecked(g, complex, i, l)?;
    if let (Some(ua), Some(ub)) = (a.unit(), b.unit()) {
        let mut pairs = Vec::new();
        for (x, c) in ua.iter() {
            for (y, e) in ub.iter() {
                pairs.push((layout.index(0, x, 0, y), c * e));
            }
        }
        gd = gd.with_unit(SparseVec::from_pairs(pairs));
    }
    if let Some(tb) = b.sym_degree() {
        let tags = (0..total)
            .map(|n| (0..layout.dims()[n]).map(|idx| { let (_, _, q, y) = layout.decompose(n, idx); tb[q][y] }).collect())
            .collect();
        gd = gd.with_sym_degree(tags);
    }
    Ok(TensorProduct { layout, gdiff: gd })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gdiff::WeilAlgebra;
    use crate::lie::{CeComplex, LieAlgebra};

    #[test]
    fn unit_of_tensor() {
        let g = LieAlgebra::su2();
        let a = GDiffComplex::from_ce(&CeComplex::trivial(&g));
        let t = tensor_product(&a, &GDiffComplex::point(&g)).unwrap();
        assert_eq!(t.gdiff.space().dims(), a.space().dims());
        for n in 0..a.len() {
            assert_eq!(t.gdiff.d(n), a.d(n));
            for j in 0..3 {
                assert_eq!(t.gdiff.i(j, n), a.i(j, n));
            }
        }
    }

    #[test]
    fn ce_times_weil() {
        let g = LieAlgebra::su2();
        let a = GDiffComplex::from_ce(&CeComplex::trivial(&g));
        let w = WeilAlgebra::new(&g, 1).unwrap();
        let t = tensor_product(&a, w.gdiff()).unwrap();
        // Poincaré series (1+t)^3 · W^{≤1}.
        let wd = w.gdiff().space().dims().to_vec();
        let ad = [1usize, 3, 3, 1];
        let mut want = vec![0; ad.len() + wd.len() - 1];
        for (p, x) in ad.iter().enumerate() {
            for (q, y) in wd.iter().enumerate() {
                want[p + q] += x * y;
            }
        }
        assert_eq!(t.gdiff.space().dims(), want.as_slice());
        let r = t.gdiff.check_axioms();
        assert!(r.passed(), "{:?}", r.first_failure());
        t.gdiff.complex().check_square_zero().unwrap();
    }
}
