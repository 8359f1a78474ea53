//! Column-major sparse matrices.

use std::fmt;

use super::echelon::{Echelon, Subspace};
use super::vector::{Accumulator, SparseVec};
use crate::scalar::Scalar;

/// A matrix stored as its columns, which are the images of the source basis
/// vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    nrows: usize,
    ncols: usize,
    cols: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix { nrows, ncols, cols: vec![SparseVec::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix { nrows: n, ncols: n, cols: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_cols(nrows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.max_index().is_none_or(|m| m < nrows)));
        Matrix { nrows, ncols: cols.len(), cols }
    }

    /// Builds from row-major dense data.
    pub fn from_rows(rows: &[Vec<Scalar>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        Self::from_triplets(
            nrows,
            ncols,
            rows.iter()
                .enumerate()
                .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, c)| (i, j, c.clone()))),
        )
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Scalar>> =
            rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect();
        Self::from_rows(&rows)
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets<I: IntoIterator<Item = (usize, usize, Scalar)>>(
        nrows: usize,
        ncols: usize,
        triplets: I,
    ) -> Self {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); ncols];
        for (i, j, c) in triplets {
            assert!(i < nrows && j < ncols, "triplet ({i},{j}) out of bounds {nrows}x{ncols}");
            if !c.is_zero() {
                buckets[j].push((i, c));
            }
        }
        Matrix {
            nrows,
            ncols,
            cols: buckets.into_iter().map(SparseVec::from_pairs).collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn col(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn cols(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn into_cols(self) -> Vec<SparseVec> {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.cols[j].get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.nnz()).sum()
    }

    /// First nonzero entry in column-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, Scalar)> {
        self.cols
            .iter()
            .enumerate()
            .find_map(|(j, c)| c.leading().map(|(i, x)| (i, j, x.clone())))
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.nrows);
        self.apply_into(v, &mut acc);
        acc.take()
    }

    pub fn apply_into(&self, v: &SparseVec, acc: &mut Accumulator) {
        for (j, c) in v.iter() {
            acc.add_scaled(c, &self.cols[j]);
        }
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.ncols, rhs.nrows, "matrix product shape mismatch");
        let mut acc = Accumulator::new(self.nrows);
        let cols = rhs
            .cols
            .iter()
            .map(|c| {
                self.apply_into(c, &mut acc);
                acc.take()
            })
            .collect();
        Matrix { nrows: self.nrows, ncols: rhs.ncols, cols }
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        self.add_scaled(&Scalar::one(), rhs)
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        self.add_scaled(&-Scalar::one(), rhs)
    }

    /// `self + c * rhs`.
    pub fn add_scaled(&self, c: &Scalar, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            cols: self.cols.iter().zip(&rhs.cols).map(|(a, b)| a.add_scaled(c, b)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            cols: self.cols.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&-Scalar::one())
    }

    pub fn transpose(&self) -> Matrix {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c.iter() {
                buckets[i].push((j, x.clone()));
            }
        }
        Matrix {
            nrows: self.ncols,
            ncols: self.nrows,
            cols: buckets.into_iter().map(SparseVec::from_sorted_unchecked).collect(),
        }
    }

    pub fn row(&self, i: usize) -> SparseVec {
        SparseVec::from_sorted_unchecked(
            self.cols
                .iter()
                .enumerate()
                .filter_map(|(j, c)| {
                    let x = c.get(i);
                    (!x.is_zero()).then_some((j, x))
                })
                .collect(),
        )
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![Scalar::zero(); self.ncols]; self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c.iter() {
                out[i][j] = x.clone();
            }
        }
        out
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.nrows, rhs.nrows);
        let mut cols = self.cols.clone();
        cols.extend(rhs.cols.iter().cloned());
        Matrix { nrows: self.nrows, ncols: cols.len(), cols }
    }

    /// `[self ; rhs]`.
    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.ncols, rhs.ncols);
        let cols = self
            .cols
            .iter()
            .zip(&rhs.cols)
            .map(|(a, b)| a.add(&b.shift(self.nrows)))
            .collect();
        Matrix { nrows: self.nrows + rhs.nrows, ncols: self.ncols, cols }
    }

    /// Keeps the listed columns, in order.
    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix {
            nrows: self.nrows,
            ncols: idx.len(),
            cols: idx.iter().map(|&j| self.cols[j].clone()).collect(),
        }
    }

    /// Keeps the listed rows, in order; `idx` must be strictly increasing.
    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut pos = vec![usize::MAX; self.nrows];
        for (k, &i) in idx.iter().enumerate() {
            pos[i] = k;
        }
        Matrix {
            nrows: idx.len(),
            ncols: self.ncols,
            cols: self
                .cols
                .iter()
                .map(|c| {
                    SparseVec::from_pairs(
                        c.iter().filter(|(i, _)| pos[*i] != usize::MAX).map(|(i, x)| (pos[i], x.clone())),
                    )
                })
                .collect(),
        }
    }

    /// Matrix of `v ↦ P v P⁻¹`-style relabeling: row `i` moves to `rp[i]`, column `j` to `cp[j]`.
    pub fn permute(&self, rp: &[usize], cp: &[usize]) -> Matrix {
        let mut cols = vec![SparseVec::new(); self.ncols];
        for (j, c) in self.cols.iter().enumerate() {
            cols[cp[j]] = c.reindex(|i| rp[i]);
        }
        Matrix { nrows: self.nrows, ncols: self.ncols, cols }
    }

    /// Kronecker product `self ⊗ rhs` with index `(i, k) ↦ i * rhs.nrows + k`.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let mut cols = Vec::with_capacity(self.ncols * rhs.ncols);
        for a in &self.cols {
            for b in &rhs.cols {
                let mut pairs = Vec::with_capacity(a.nnz() * b.nnz());
                for (i, x) in a.iter() {
                    for (k, y) in b.iter() {
                        pairs.push((i * rhs.nrows + k, x * y));
                    }
                }
                cols.push(SparseVec::from_pairs(pairs));
            }
        }
        Matrix { nrows: self.nrows * rhs.nrows, ncols: self.ncols * rhs.ncols, cols }
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.nrows);
        for c in &self.cols {
            e.insert(c.clone());
        }
        e.len()
    }

    pub fn image(&self) -> Subspace {
        Subspace::from_vectors(self.nrows, self.cols.iter().cloned())
    }

    pub fn kernel(&self) -> Subspace {
        let (_, ker) = Echelon::column_reduce(self);
        Subspace::from_vectors(self.ncols, ker)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.nrows, self.ncols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = Matrix::from_int_rows(&[&[1, 2], &[0, 1], &[3, 0]]);
        let b = Matrix::from_int_rows(&[&[1, 0, 1], &[0, 1, 1]]);
        let ab = a.mul(&b);
        assert_eq!(ab, Matrix::from_int_rows(&[&[1, 2, 3], &[0, 1, 1], &[3, 0, 3]]));
        assert_eq!(ab.transpose().transpose(), ab);
        assert_eq!(a.transpose(), Matrix::from_int_rows(&[&[1, 0, 3], &[2, 1, 0]]));
    }

    #[test]
    fn rank_nullity_small() {
        let m = Matrix::from_int_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.dim(), 1);
        for v in k.basis() {
            assert!(m.apply(v).is_zero());
        }
    }

    #[test]
    fn kron_shape() {
        let a = Matrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        let i = Matrix::identity(3);
        let k = a.kron(&i);
        assert_eq!(k.shape(), (6, 6));
        assert_eq!(k.get(3, 0), Scalar::one());
        assert_eq!(k.mul(&k), Matrix::identity(6));
    }

    #[test]
    fn stacking_and_selection() {
        let a = Matrix::from_int_rows(&[&[1, 2], &[3, 4]]);
        let v = a.vstack(&Matrix::identity(2));
        assert_eq!(v.shape(), (4, 2));
        assert_eq!(v.select_rows(&[0, 3]), Matrix::from_int_rows(&[&[1, 2], &[0, 1]]));
        assert_eq!(a.hstack(&a).select_cols(&[3]), Matrix::from_int_rows(&[&[2], &[4]]));
    }
}
