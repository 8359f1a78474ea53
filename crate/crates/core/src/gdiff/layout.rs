//! Bases of `A ⊗ S^{≤M} g*` graded by `deg(A^n ⊗ S^m) = n + 2m`.
//!
//! In total degree `D` the blocks `m = 0, 1, …` (with `n = D - 2m`) are laid
//! out consecutively; inside a block the index of `a ⊗ s` is `a * dim S^m + s`.

use crate::basis::SymmetricBasis;
use crate::lie::rep::symmetric_derivation;
use crate::linalg::{Matrix, SparseVec};

#[derive(Clone, Debug)]
pub struct SymLayout {
    a_dims: Vec<usize>,
    sym: SymmetricBasis,
    offsets: Vec<Vec<Option<usize>>>,
    dims: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub m: usize,
    pub n: usize,
    pub offset: usize,
    pub a_dim: usize,
    pub s_dim: usize,
}

impl SymLayout {
    pub fn new(a_dims: Vec<usize>, vars: usize, cap: usize) -> Self {
        let sym = SymmetricBasis::new(vars, cap);
        let a_top = a_dims.len();
        let total = if a_top == 0 { 0 } else { a_top + 2 * cap };
        let mut offsets = Vec::with_capacity(total);
        let mut dims = Vec::with_capacity(total);
        for d in 0..total {
            let mut off = 0;
            let mut row = vec![None; cap + 1];
            for (m, slot) in row.iter_mut().enumerate() {
                if 2 * m > d || d - 2 * m >= a_top {
                    continue;
                }
                *slot = Some(off);
                off += a_dims[d - 2 * m] * sym.dim(m);
            }
            offsets.push(row);
            dims.push(off);
        }
        SymLayout { a_dims, sym, offsets, dims }
    }

    pub fn cap(&self) -> usize {
        self.sym.cap()
    }

    pub fn sym(&self) -> &SymmetricBasis {
        &self.sym
    }

    pub fn a_dims(&self) -> &[usize] {
        &self.a_dims
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

    pub fn dim(&self, d: usize) -> usize {
        self.dims.get(d).copied().unwrap_or(0)
    }

    pub fn block(&self, d: usize, m: usize) -> Option<Block> {
        let off = (*self.offsets.get(d)?.get(m)?)?;
        let n = d - 2 * m;
        Some(Block { m, n, offset: off, a_dim: self.a_dims[n], s_dim: self.sym.dim(m) })
    }

    pub fn blocks(&self, d: usize) -> Vec<Block> {
        (0..=self.cap()).filter_map(|m| self.block(d, m)).collect()
    }

    pub fn index(&self, d: usize, m: usize, a: usize, s: usize) -> usize {
        let b = self.block(d, m).expect("block exists");
        b.offset + a * b.s_dim + s
    }

    /// `(m, a, s)` of a basis index in total degree `d`.
    pub fn decompose(&self, d: usize, idx: usize) -> (usize, usize, usize) {
        for b in self.blocks(d) {
            let size = b.a_dim * b.s_dim;
            if idx >= b.offset && idx < b.offset + size {
                let r = idx - b.offset;
                return (b.m, r / b.s_dim, r % b.s_dim);
            }
        }
        panic!("index {idx} out of range in degree {d}");
    }

    /// Symmetric degree of every basis element in degree `d`.
    pub fn sym_tags(&self, d: usize) -> Vec<usize> {
        let mut out = vec![0; self.dim(d)];
        for b in self.blocks(d) {
            for t in &mut out[b.offset..b.offset + b.a_dim * b.s_dim] {
                *t = b.m;
            }
        }
        out
    }

    /// The operator `α ⊗ σ` from total degree `d`, where `α(n): A^n → A^{n+ka}`
    /// and `σ(m): S^m → S^{m+ks}`. Components leaving the layout are dropped,
    /// which realizes the truncation quotient.
    pub fn tensor_op(
        &self,
        d: usize,
        alpha: &dyn Fn(usize) -> Matrix,
        ka: i64,
        sigma: &dyn Fn(usize) -> Matrix,
        ks: i64,
    ) -> Matrix {
        let td = d as i64 + ka + 2 * ks;
        let rows = if td < 0 { 0 } else { self.dim(td as usize) };
        let mut cols = vec![SparseVec::new(); self.dim(d)];
        for b in self.blocks(d) {
            let (tn, tm) = (b.n as i64 + ka, b.m as i64 + ks);
            if tn < 0 || tm < 0 || td < 0 {
                continue;
            }
            let Some(tb) = self.block(td as usize, tm as usize) else { continue };
            debug_assert_eq!(tb.n as i64, tn);
            let am = alpha(b.n);
            let sm = sigma(b.m);
            for a in 0..b.a_dim {
                for s in 0..b.s_dim {
                    let mut pairs = Vec::new();
                    for (a2, x) in am.col(a).iter() {
                        for (s2, y) in sm.col(s).iter() {
                            pairs.push((tb.offset + a2 * tb.s_dim + s2, x * y));
                        }
                    }
                    cols[b.offset + a * b.s_dim + s] = SparseVec::from_pairs(pairs);
                }
            }
        }
        Matrix::from_cols(rows, cols)
    }

    /// Multiplication by the generator `x_j`: `S^m → S^{m+1}`.
    pub fn sym_mult(&self, j: usize, m: usize) -> Matrix {
        let basis = self.sym.degree(m);
        let rows = self.sym.dim(m + 1);
        let cols = basis
            .iter()
            .map(|e| {
                let mut e2 = e.clone();
                e2[j] += 1;
                match self.sym.try_pos(&e2) {
                    Some(p) if m < self.cap() => SparseVec::unit(p),
                    _ => SparseVec::new(),
                }
            })
            .collect();
        Matrix::from_cols(rows, cols)
    }

    /// Derivation extension of `a` to `S^m`.
    pub fn sym_derivation(&self, a: &Matrix, m: usize) -> Matrix {
        symmetric_derivation(a, &self.sym, m)
    }

    pub fn sym_identity(&self, m: usize) -> Matrix {
        Matrix::identity(self.sym.dim(m))
    }

    /// Product of symmetric monomials, `None` when it exceeds the cap.
    pub fn sym_product(&self, m1: usize, s1: usize, m2: usize, s2: usize) -> Option<usize> {
        if m1 + m2 > self.cap() {
            return None;
        }
        let e: Vec<u32> = self.sym.degree(m1)[s1].iter().zip(&self.sym.degree(m2)[s2]).map(|(a, b)| a + b).collect();
        Some(self.sym.pos(&e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_with_circle() {
        let l = SymLayout::new(vec![1], 1, 2);
        assert_eq!(l.dims(), &[1, 0, 1, 0, 1]);
        assert_eq!(l.sym_tags(4), vec![2]);
        assert!(l.sym_mult(0, 2).is_zero());
    }

    #[test]
    fn decompose_roundtrip() {
        let l = SymLayout::new(vec![1, 3, 3, 1], 3, 2);
        for d in 0..l.len() {
            for idx in 0..l.dim(d) {
                let (m, a, s) = l.decompose(d, idx);
                assert_eq!(l.index(d, m, a, s), idx);
            }
        }
        assert_eq!(l.dim(2), 3 + 3);
        assert_eq!(l.dim(7), 6);
    }
}
