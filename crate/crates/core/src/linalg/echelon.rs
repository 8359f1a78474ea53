//! Exact elimination: echelon bases, subspaces, quotients and linear solves.

use super::matrix::Matrix;
use super::vector::{Accumulator, SparseVec};
use crate::scalar::Scalar;

/// A semi-echelon family: every stored vector has leading entry 1 at its
/// pivot, and pivots are distinct. Optionally records, for every stored
/// vector, the combination of inserted inputs that produced it.
#[derive(Clone, Debug)]
pub struct Echelon {
    n: usize,
    vecs: Vec<SparseVec>,
    pivot_slot: Vec<Option<usize>>,
    combos: Option<Vec<SparseVec>>,
}

impl Echelon {
    pub fn new(n: usize) -> Self {
        Echelon { n, vecs: Vec::new(), pivot_slot: vec![None; n], combos: None }
    }

    pub fn with_combos(n: usize) -> Self {
        Echelon { combos: Some(Vec::new()), ..Self::new(n) }
    }

    pub fn len(&self) -> usize {
        self.vecs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vecs.is_empty()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    fn reduce_dense(&self, acc: &mut Accumulator, combo: Option<&mut SparseVec>, start: usize) {
        let mut combo = combo;
        for i in start..self.n {
            let c = acc.get(i).clone();
            if c.is_zero() {
                continue;
            }
            if let Some(k) = self.pivot_slot[i] {
                let neg = -&c;
                acc.add_scaled(&neg, &self.vecs[k]);
                if let (Some(cb), Some(all)) = (combo.as_deref_mut(), self.combos.as_ref()) {
                    *cb = cb.add_scaled(&neg, &all[k]);
                }
            }
        }
    }

    /// Residual of `v` after eliminating all pivots.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let Some((start, _)) = v.leading() else { return SparseVec::new() };
        let mut acc = Accumulator::new(self.n);
        acc.add_scaled(&Scalar::one(), v);
        self.reduce_dense(&mut acc, None, start);
        acc.take()
    }

    /// Inserts `v`; returns whether it was independent of the stored family.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        self.insert_tracked(v, SparseVec::new()).is_none()
    }

    /// Inserts `v` whose origin is described by `combo`. Returns the reduced
    /// combination when `v` turns out dependent (a relation among inputs).
    pub fn insert_tracked(&mut self, v: SparseVec, combo: SparseVec) -> Option<SparseVec> {
        let mut combo = combo;
        let r = match v.leading() {
            None => SparseVec::new(),
            Some((start, _)) => {
                let mut acc = Accumulator::new(self.n);
                acc.add_scaled(&Scalar::one(), &v);
                self.reduce_dense(&mut acc, Some(&mut combo), start);
                acc.take()
            }
        };
        let Some((p, lead)) = r.leading() else { return Some(combo) };
        let inv = lead.recip();
        let r = r.scale(&inv);
        self.pivot_slot[p] = Some(self.vecs.len());
        self.vecs.push(r);
        if let Some(all) = self.combos.as_mut() {
            all.push(combo.scale(&inv));
        }
        None
    }

    /// Column-reduces `m`, returning the echelon of its image (with column
    /// combinations recorded) and a basis of its kernel.
    pub fn column_reduce(m: &Matrix) -> (Echelon, Vec<SparseVec>) {
        let mut e = Echelon::with_combos(m.nrows());
        let mut ker = Vec::new();
        for (j, c) in m.cols().iter().enumerate() {
            if let Some(rel) = e.insert_tracked(c.clone(), SparseVec::unit(j)) {
                ker.push(rel);
            }
        }
        (e, ker)
    }

    /// Writes `v` as a combination of the recorded inputs, if it lies in the span.
    pub fn solve(&self, v: &SparseVec) -> Option<SparseVec> {
        assert!(self.combos.is_some(), "solve requires a tracked echelon");
        let Some((start, _)) = v.leading() else { return Some(SparseVec::new()) };
        let mut acc = Accumulator::new(self.n);
        acc.add_scaled(&Scalar::one(), v);
        let mut combo = SparseVec::new();
        self.reduce_dense(&mut acc, Some(&mut combo), start);
        if !acc.take().is_zero() {
            return None;
        }
        Some(combo.neg())
    }

    pub fn into_vectors(self) -> Vec<SparseVec> {
        self.vecs
    }
}

/// A subspace of `Q^n` held as a reduced row-echelon basis: each basis vector
/// has a 1 at its pivot and every other basis vector vanishes there. Pivots
/// are increasing along the basis, which makes the representation canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    n: usize,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace { n, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        Subspace { n, basis: (0..n).map(SparseVec::unit).collect(), pivots: (0..n).collect() }
    }

    pub fn from_vectors<I: IntoIterator<Item = SparseVec>>(n: usize, vecs: I) -> Self {
        let mut e = Echelon::new(n);
        for v in vecs {
            e.insert(v);
        }
        Self::from_echelon(e)
    }

    pub fn from_echelon(e: Echelon) -> Self {
        let n = e.n;
        let mut vecs = e.vecs;
        vecs.sort_by_key(|v| v.leading().map(|(p, _)| p));
        let pivots: Vec<usize> = vecs.iter().map(|v| v.leading().unwrap().0).collect();
        // Back-substitution: clear each pivot column from the earlier vectors.
        for k in (0..vecs.len()).rev() {
            let p = pivots[k];
            let (head, tail) = vecs.split_at_mut(k);
            let bk = &tail[0];
            for v in head.iter_mut() {
                let c = v.get(p);
                if !c.is_zero() {
                    *v = v.add_scaled(&-c, bk);
                }
            }
        }
        Subspace { n, basis: vecs, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.n
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the columns of an `n × dim` matrix.
    pub fn matrix(&self) -> Matrix {
        Matrix::from_cols(self.n, self.basis.clone())
    }

    fn pivot_lookup(&self) -> Vec<Option<usize>> {
        let mut look = vec![None; self.n];
        for (k, &p) in self.pivots.iter().enumerate() {
            look[p] = Some(k);
        }
        look
    }

    /// Coefficients `c_k = v[pivot_k]` of the projection of `v` onto the
    /// subspace along the non-pivot coordinates.
    pub fn coords(&self, v: &SparseVec) -> Vec<Scalar> {
        self.pivots.iter().map(|&p| v.get(p)).collect()
    }

    pub fn coords_sparse(&self, v: &SparseVec) -> SparseVec {
        let look = self.pivot_lookup();
        SparseVec::from_pairs(v.iter().filter_map(|(i, c)| look[i].map(|k| (k, c.clone()))))
    }

    /// `v` minus its projection; zero exactly when `v` lies in the subspace.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        if self.basis.is_empty() {
            return v.clone();
        }
        let look = self.pivot_lookup();
        self.reduce_with(&look, v)
    }

    fn reduce_with(&self, look: &[Option<usize>], v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.n);
        acc.add_scaled(&Scalar::one(), v);
        for (i, c) in v.iter() {
            if let Some(k) = look[i] {
                acc.add_scaled(&-c, &self.basis[k]);
            }
        }
        acc.take()
    }

    /// Reduces many vectors at once.
    pub fn reduce_all(&self, vs: &[SparseVec]) -> Vec<SparseVec> {
        if self.basis.is_empty() {
            return vs.to_vec();
        }
        let look = self.pivot_lookup();
        vs.iter().map(|v| self.reduce_with(&look, v)).collect()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// First basis vector of `other` that is not in `self`, if any.
    pub fn first_outside(&self, other: &Subspace) -> Option<usize> {
        let look = self.pivot_lookup();
        other.basis.iter().position(|v| !self.reduce_with(&look, v).is_zero())
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        self.first_outside(other).is_none()
    }

    /// Linear combination `Σ c_k b_k` of the basis.
    pub fn combine(&self, coeffs: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.n);
        for (k, c) in coeffs.iter() {
            acc.add_scaled(c, &self.basis[k]);
        }
        acc.take()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.n, other.n);
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        Subspace::from_vectors(self.n, self.basis.iter().chain(&other.basis).cloned())
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.n, other.n);
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.n);
        }
        if self.is_full() {
            return other.clone();
        }
        if other.is_full() {
            return self.clone();
        }
        // {a ∈ self : reduce_other(a) = 0}, computed in self's coordinates.
        let residuals = other.reduce_all(&self.basis);
        let m = Matrix::from_cols(self.n, residuals);
        let ker = m.kernel();
        Subspace::from_vectors(self.n, ker.basis().iter().map(|c| self.combine(c)))
    }

    /// `{ v : m v ∈ self }` for `m` with target the ambient space of `self`.
    pub fn preimage(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.nrows(), self.n);
        if self.is_full() {
            return Subspace::full(m.ncols());
        }
        let residuals = self.reduce_all(m.cols());
        Matrix::from_cols(self.n, residuals).kernel()
    }

    /// `{ v ∈ self : m v ∈ target }`.
    pub fn restricted_preimage(&self, m: &Matrix, target: &Subspace) -> Subspace {
        let imgs: Vec<SparseVec> = self.basis.iter().map(|b| m.apply(b)).collect();
        let residuals = target.reduce_all(&imgs);
        let ker = Matrix::from_cols(target.n, residuals).kernel();
        Subspace::from_vectors(self.n, ker.basis().iter().map(|c| self.combine(c)))
    }

    /// Image `m(self)`.
    pub fn image_under(&self, m: &Matrix) -> Subspace {
        Subspace::from_vectors(m.nrows(), self.basis.iter().map(|b| m.apply(b)))
    }
}

/// The quotient `num / den` of subspaces with `den ⊆ num`, presented by a
/// complement of `den` inside `num` made of vectors vanishing on the pivots
/// of `den`.
#[derive(Clone, Debug)]
pub struct Quotient {
    num: Subspace,
    den: Subspace,
    comp: Subspace,
}

impl Quotient {
    /// Returns `None` when `den ⊄ num`.
    pub fn new(num: Subspace, den: Subspace) -> Option<Quotient> {
        if !num.contains_space(&den) {
            return None;
        }
        Some(Self::new_unchecked(num, den))
    }

    /// Skips the containment check; the caller guarantees `den ⊆ num`.
    pub fn new_unchecked(num: Subspace, den: Subspace) -> Quotient {
        let residuals = den.reduce_all(num.basis());
        let comp = Subspace::from_vectors(num.ambient(), residuals);
        Quotient { num, den, comp }
    }

    pub fn dim(&self) -> usize {
        self.comp.dim()
    }

    pub fn numerator(&self) -> &Subspace {
        &self.num
    }

    pub fn denominator(&self) -> &Subspace {
        &self.den
    }

    /// Echelon-normalized representatives of a basis of the quotient.
    pub fn representatives(&self) -> &[SparseVec] {
        self.comp.basis()
    }

    /// Coordinates of the class of `v ∈ num`.
    pub fn coords(&self, v: &SparseVec) -> SparseVec {
        let r = self.den.reduce(v);
        self.comp.coords_sparse(&r)
    }

    /// Matrix sending each basis vector of `num` to its class coordinates.
    pub fn projection(&self) -> Matrix {
        Matrix::from_cols(self.dim(), self.num.basis().iter().map(|v| self.coords(v)).collect())
    }

    /// Whether `v` represents the zero class.
    pub fn is_trivial(&self, v: &SparseVec) -> bool {
        self.den.contains(v)
    }
}

/// Solves `m x = b` exactly.
#[derive(Clone, Debug)]
pub struct Solver {
    ncols: usize,
    e: Echelon,
}

impl Solver {
    pub fn new(m: &Matrix) -> Solver {
        let (e, _) = Echelon::column_reduce(m);
        Solver { ncols: m.ncols(), e }
    }

    pub fn rank(&self) -> usize {
        self.e.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        self.e.solve(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> SparseVec {
        SparseVec::from_dense(&xs.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn rref_is_canonical() {
        let a = Subspace::from_vectors(3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::from_vectors(3, vec![v(&[1, 2, 1]), v(&[1, 0, -1])]);
        assert_eq!(a, b);
        assert_eq!(a.pivots(), &[0, 1]);
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::from_vectors(3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::from_vectors(3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let i = a.intersection(&b);
        assert_eq!(i, Subspace::from_vectors(3, vec![v(&[0, 1, 0])]));
        assert!(a.sum(&b).is_full());
    }

    #[test]
    fn quotient_coords_kill_denominator() {
        let num = Subspace::full(3);
        let den = Subspace::from_vectors(3, vec![v(&[1, 1, 0])]);
        let q = Quotient::new(num, den).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(q.coords(&v(&[2, 2, 0])).is_zero());
        assert!(!q.coords(&v(&[1, 0, 0])).is_zero());
        for r in q.representatives() {
            assert!(!q.is_trivial(r));
        }
    }

    #[test]
    fn quotient_rejects_non_contained() {
        let num = Subspace::from_vectors(2, vec![v(&[1, 0])]);
        let den = Subspace::from_vectors(2, vec![v(&[0, 1])]);
        assert!(Quotient::new(num, den).is_none());
    }

    #[test]
    fn solver_roundtrip() {
        let m = Matrix::from_int_rows(&[&[1, 2, 3], &[0, 1, 4]]);
        let s = Solver::new(&m);
        let b = v(&[5, 6]);
        let x = s.solve(&b).unwrap();
        assert_eq!(m.apply(&x), b);
        let m2 = Matrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert!(Solver::new(&m2).solve(&v(&[1, 0])).is_none());
    }

    #[test]
    fn preimage_matches_kernel_for_zero_target() {
        let m = Matrix::from_int_rows(&[&[1, 1, 0], &[0, 0, 0]]);
        let p = Subspace::zero(2).preimage(&m);
        assert_eq!(p, m.kernel());
        assert_eq!(p.dim(), 2);
    }
}
