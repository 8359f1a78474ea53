//! Graded spaces, graded maps, cochain complexes and their cohomology.

use rayon::prelude::*;

use super::echelon::{Quotient, Solver, Subspace};
use super::matrix::Matrix;
use super::vector::SparseVec;
use super::LinalgError;

/// Finite-dimensional graded vector space concentrated in degrees `0..len`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedSpace {
    dims: Vec<usize>,
    labels: Vec<Vec<String>>,
}

impl GradedSpace {
    pub fn new(dims: Vec<usize>) -> Self {
        let labels = dims
            .iter()
            .enumerate()
            .map(|(n, &d)| (0..d).map(|i| format!("b{n}_{i}")).collect())
            .collect();
        GradedSpace { dims, labels }
    }

    pub fn with_labels(labels: Vec<Vec<String>>) -> Self {
        GradedSpace { dims: labels.iter().map(|l| l.len()).collect(), labels }
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    pub fn dim_at(&self, n: i64) -> usize {
        if n < 0 {
            0
        } else {
            self.dim(n as usize)
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of stored degrees; all higher degrees are zero.
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn labels(&self, n: usize) -> &[String] {
        self.labels.get(n).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// A homogeneous map of graded spaces of fixed degree shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    source: GradedSpace,
    target: GradedSpace,
    shift: i64,
    blocks: Vec<Matrix>,
}

impl LinearMap {
    /// `blocks[n]` maps degree `n` of `source` to degree `n + shift` of `target`.
    pub fn new(
        source: GradedSpace,
        target: GradedSpace,
        shift: i64,
        blocks: Vec<Matrix>,
    ) -> Result<Self, LinalgError> {
        let mut blocks = blocks;
        blocks.resize_with(source.len(), || Matrix::zeros(0, 0));
        for (n, b) in blocks.iter_mut().enumerate() {
            let want = (target.dim_at(n as i64 + shift), source.dim(n));
            if b.shape() == (0, 0) && want != (0, 0) {
                *b = Matrix::zeros(want.0, want.1);
            }
            if b.shape() != want {
                return Err(LinalgError::ShapeMismatch {
                    degree: n,
                    expected: want,
                    found: b.shape(),
                });
            }
        }
        Ok(LinearMap { source, target, shift, blocks })
    }

    pub fn zero(source: GradedSpace, target: GradedSpace, shift: i64) -> Self {
        let blocks = (0..source.len())
            .map(|n| Matrix::zeros(target.dim_at(n as i64 + shift), source.dim(n)))
            .collect();
        LinearMap { source, target, shift, blocks }
    }

    pub fn identity(space: GradedSpace) -> Self {
        let blocks = (0..space.len()).map(|n| Matrix::identity(space.dim(n))).collect();
        LinearMap { source: space.clone(), target: space, shift: 0, blocks }
    }

    pub fn source(&self) -> &GradedSpace {
        &self.source
    }

    pub fn target(&self) -> &GradedSpace {
        &self.target
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Block on source degree `n`; zero-shaped beyond the stored range.
    pub fn block(&self, n: usize) -> Matrix {
        match self.blocks.get(n) {
            Some(b) => b.clone(),
            None => Matrix::zeros(self.target.dim_at(n as i64 + self.shift), 0),
        }
    }

    pub fn block_ref(&self, n: usize) -> Option<&Matrix> {
        self.blocks.get(n)
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &LinearMap) -> Result<LinearMap, LinalgError> {
        if rhs.target != self.source {
            return Err(LinalgError::IncompatibleSpaces);
        }
        let shift = self.shift + rhs.shift;
        let blocks = (0..rhs.source.len())
            .map(|n| {
                let mid = n as i64 + rhs.shift;
                let r = rhs.block(n);
                if mid < 0 || mid as usize >= self.source.len() {
                    Matrix::zeros(self.target.dim_at(n as i64 + shift), r.ncols())
                } else {
                    self.block(mid as usize).mul(&r)
                }
            })
            .collect();
        LinearMap::new(rhs.source.clone(), self.target.clone(), shift, blocks)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }
}

/// A cochain complex `C^0 → C^1 → ⋯` with `d` of degree +1.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    space: GradedSpace,
    d: LinearMap,
}

impl CochainComplex {
    /// Builds the complex; `d[n]: C^n → C^{n+1}`. Checks shapes only.
    pub fn new(space: GradedSpace, d: Vec<Matrix>) -> Result<Self, LinalgError> {
        let d = LinearMap::new(space.clone(), space.clone(), 1, d)?;
        Ok(CochainComplex { space, d })
    }

    /// Builds and verifies `d ∘ d = 0`.
    pub fn checked(space: GradedSpace, d: Vec<Matrix>) -> Result<Self, LinalgError> {
        let c = Self::new(space, d)?;
        c.check_square_zero()?;
        Ok(c)
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn d(&self) -> &LinearMap {
        &self.d
    }

    pub fn dim(&self, n: usize) -> usize {
        self.space.dim(n)
    }

    pub fn dims(&self) -> &[usize] {
        self.space.dims()
    }

    /// Number of stored degrees.
    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        self.space.is_empty()
    }

    /// `d: C^n → C^{n+1}`.
    pub fn dn(&self, n: usize) -> Matrix {
        self.d.block(n)
    }

    /// `d: C^{n-1} → C^n` (zero columns when `n = 0`).
    pub fn d_into(&self, n: usize) -> Matrix {
        if n == 0 {
            Matrix::zeros(self.dim(0), 0)
        } else {
            self.d.block(n - 1)
        }
    }

    pub fn check_square_zero(&self) -> Result<(), LinalgError> {
        for n in 0..self.len() {
            let dd = self.dn(n + 1).mul(&self.dn(n));
            if let Some((row, col, _)) = dd.first_nonzero() {
                return Err(LinalgError::DifferentialNotSquareZero { degree: n, col, row });
            }
        }
        Ok(())
    }

    /// Restriction to a graded subspace stable under `d`, in the subspace's
    /// RREF coordinates.
    pub fn restrict(&self, sub: &[Subspace]) -> Result<CochainComplex, LinalgError> {
        let mut blocks = Vec::with_capacity(sub.len());
        for n in 0..sub.len() {
            let dn = self.dn(n);
            let empty = Subspace::zero(self.dim(n + 1));
            let tgt = sub.get(n + 1).unwrap_or(&empty);
            let mut cols = Vec::with_capacity(sub[n].dim());
            for b in sub[n].basis() {
                let img = dn.apply(b);
                if !tgt.contains(&img) {
                    return Err(LinalgError::NotSubcomplex { degree: n });
                }
                cols.push(tgt.coords_sparse(&img));
            }
            blocks.push(Matrix::from_cols(tgt.dim(), cols));
        }
        let dims = sub.iter().map(|s| s.dim()).collect();
        CochainComplex::new(GradedSpace::new(dims), blocks)
    }

    /// Induced complex on the quotient by a `d`-stable graded subspace.
    pub fn quotient(&self, sub: &[Subspace]) -> Result<(CochainComplex, Vec<Quotient>), LinalgError> {
        let qs: Vec<Quotient> = (0..self.len())
            .map(|n| {
                let s = sub.get(n).cloned().unwrap_or_else(|| Subspace::zero(self.dim(n)));
                Quotient::new_unchecked(Subspace::full(self.dim(n)), s)
            })
            .collect();
        let mut blocks = Vec::with_capacity(self.len());
        for n in 0..self.len() {
            let dn = self.dn(n);
            if let Some(s) = sub.get(n) {
                let tgt_sub = sub.get(n + 1).cloned().unwrap_or_else(|| Subspace::zero(self.dim(n + 1)));
                if let Some(k) = tgt_sub.first_outside(&s.image_under(&dn)) {
                    let _ = k;
                    return Err(LinalgError::NotSubcomplex { degree: n });
                }
            }
            let tgt_dim = qs.get(n + 1).map_or(0, |q| q.dim());
            let cols = qs[n]
                .representatives()
                .iter()
                .map(|r| {
                    let img = dn.apply(r);
                    match qs.get(n + 1) {
                        Some(q) => q.coords(&img),
                        None => SparseVec::new(),
                    }
                })
                .collect();
            blocks.push(Matrix::from_cols(tgt_dim, cols));
        }
        let dims = qs.iter().map(|q| q.dim()).collect();
        Ok((CochainComplex::new(GradedSpace::new(dims), blocks)?, qs))
    }
}

/// Result of [`rank_kernel_image`].
#[derive(Clone, Debug)]
pub struct RankKernelImage {
    pub rank: usize,
    pub kernel: Subspace,
    pub image: Subspace,
}

pub fn rank_kernel_image(m: &LinearMap, degree: usize) -> RankKernelImage {
    let b = m.block(degree);
    let image = b.image();
    let kernel = b.kernel();
    RankKernelImage { rank: image.dim(), kernel, image }
}

/// Cohomology of one degree.
#[derive(Clone, Debug)]
pub struct CohomologyDegree {
    quotient: Quotient,
}

impl CohomologyDegree {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn cycles(&self) -> &Subspace {
        self.quotient.numerator()
    }

    pub fn boundaries(&self) -> &Subspace {
        self.quotient.denominator()
    }

    pub fn representatives(&self) -> &[SparseVec] {
        self.quotient.representatives()
    }

    /// Class coordinates of a cocycle.
    pub fn class_of(&self, v: &SparseVec) -> SparseVec {
        self.quotient.coords(v)
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }
}

#[derive(Clone, Debug)]
pub struct Cohomology {
    degrees: Vec<CohomologyDegree>,
}

impl Cohomology {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dim()).collect()
    }

    pub fn degree(&self, n: usize) -> &CohomologyDegree {
        &self.degrees[n]
    }

    pub fn dim(&self, n: usize) -> usize {
        self.degrees.get(n).map_or(0, |d| d.dim())
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }
}

/// Cohomology with echelon-normalized representatives.
pub fn cohomology(c: &CochainComplex) -> Result<Cohomology, LinalgError> {
    c.check_square_zero()?;
    Ok(cohomology_unchecked(c))
}

pub fn cohomology_unchecked(c: &CochainComplex) -> Cohomology {
    let kernels: Vec<Subspace> = (0..c.len()).into_par_iter().map(|n| c.dn(n).kernel()).collect();
    let degrees = (0..c.len())
        .into_par_iter()
        .map(|n| {
            let b = c.d_into(n).image();
            CohomologyDegree { quotient: Quotient::new_unchecked(kernels[n].clone(), b) }
        })
        .collect();
    Cohomology { degrees }
}

/// Dimensions only, via ranks.
pub fn cohomology_dims(c: &CochainComplex) -> Vec<usize> {
    let ranks: Vec<usize> = (0..c.len()).into_par_iter().map(|n| c.dn(n).rank()).collect();
    (0..c.len())
        .map(|n| c.dim(n) - ranks[n] - if n == 0 { 0 } else { ranks[n - 1] })
        .collect()
}

/// `z / b` with containment verified.
pub fn subquotient(z: &Subspace, b: &Subspace) -> Result<Quotient, LinalgError> {
    Quotient::new(z.clone(), b.clone()).ok_or(LinalgError::NotContained)
}

/// A map `H: C^n → C^{n-1}` with `d H = id` on the exact subspace `B^n`.
/// `H` sends each RREF basis vector of `B^n` (indexed by its pivot) to a
/// preimage under `d`, and every non-pivot coordinate to zero.
pub fn homotopy_witness(c: &CochainComplex, n: usize) -> Matrix {
    let d = c.d_into(n);
    let b = d.image();
    let solver = Solver::new(&d);
    let mut cols = vec![SparseVec::new(); c.dim(n)];
    for (k, v) in b.basis().iter().enumerate() {
        cols[b.pivots()[k]] = solver.solve(v).expect("image vector must be solvable");
    }
    Matrix::from_cols(d.ncols(), cols)
}

/// Joint kernel of square operators on `Q^n`, computed by successive restriction.
pub fn joint_kernel(n: usize, ops: &[&Matrix]) -> Subspace {
    let mut basis = Matrix::identity(n);
    for op in ops {
        if basis.ncols() == 0 {
            break;
        }
        let restricted = op.mul(&basis);
        let ker = restricted.kernel();
        if ker.dim() == basis.ncols() {
            continue;
        }
        basis = basis.mul(&ker.matrix());
    }
    Subspace::from_vectors(n, basis.into_cols())
}

/// Joint kernel of arbitrary-shape maps out of a subspace.
pub fn joint_kernel_within(start: &Subspace, ops: &[&Matrix]) -> Subspace {
    let mut basis = start.matrix();
    for op in ops {
        if basis.ncols() == 0 {
            break;
        }
        let ker = op.mul(&basis).kernel();
        if ker.dim() == basis.ncols() {
            continue;
        }
        basis = basis.mul(&ker.matrix());
    }
    Subspace::from_vectors(start.ambient(), basis.into_cols())
}

/// Result of [`invariant_projection`].
#[derive(Clone, Debug)]
pub struct InvariantProjection {
    pub invariants: Subspace,
    pub projector: Matrix,
}

/// Projection onto the joint kernel of `ops` along the sum of their images.
pub fn invariant_projection(n: usize, ops: &[Matrix]) -> Result<InvariantProjection, LinalgError> {
    for op in ops {
        if op.shape() != (n, n) {
            return Err(LinalgError::ShapeMismatch { degree: 0, expected: (n, n), found: op.shape() });
        }
    }
    let refs: Vec<&Matrix> = ops.iter().collect();
    let inv = joint_kernel(n, &refs);
    let img = Subspace::from_vectors(n, ops.iter().flat_map(|m| m.cols().iter().cloned()));
    let meet = inv.intersection(&img);
    if !meet.is_zero() || inv.dim() + img.dim() != n {
        return Err(LinalgError::NotReductive { invariants: inv.dim(), images: img.dim(), meet: meet.dim() });
    }
    let frame = inv.matrix().hstack(&img.matrix());
    let solver = Solver::new(&frame);
    let k = inv.dim();
    let cols = (0..n)
        .map(|j| {
            let x = solver.solve(&SparseVec::unit(j)).expect("frame spans the space");
            inv.combine(&x.slice(0, k))
        })
        .collect();
    Ok(InvariantProjection { invariants: inv, projector: Matrix::from_cols(n, cols) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn acyclic_two_term() {
        let c = CochainComplex::checked(GradedSpace::new(vec![1, 1]), vec![Matrix::identity(1)]).unwrap();
        assert_eq!(cohomology(&c).unwrap().dims(), vec![0, 0]);
        assert_eq!(cohomology_dims(&c), vec![0, 0]);
        let h = homotopy_witness(&c, 1);
        assert_eq!(c.dn(0).mul(&h), Matrix::identity(1));
    }

    #[test]
    fn zero_differential() {
        let c = CochainComplex::checked(GradedSpace::new(vec![2, 3, 1]), vec![]).unwrap();
        assert_eq!(cohomology(&c).unwrap().dims(), vec![2, 3, 1]);
        assert!(homotopy_witness(&c, 1).is_zero());
    }

    #[test]
    fn rejects_nonzero_square() {
        let d = vec![Matrix::identity(1), Matrix::identity(1)];
        let c = CochainComplex::new(GradedSpace::new(vec![1, 1, 1]), d).unwrap();
        assert!(matches!(cohomology(&c), Err(LinalgError::DifferentialNotSquareZero { degree: 0, .. })));
    }

    #[test]
    fn shape_mismatch_reported() {
        let r = CochainComplex::new(GradedSpace::new(vec![1, 2]), vec![Matrix::identity(1)]);
        assert!(matches!(r, Err(LinalgError::ShapeMismatch { .. })));
    }

    #[test]
    fn trivial_projection() {
        let p = invariant_projection(3, &[Matrix::zeros(3, 3)]).unwrap();
        assert_eq!(p.invariants.dim(), 3);
        assert_eq!(p.projector, Matrix::identity(3));
    }

    #[test]
    fn nilpotent_is_not_reductive() {
        let n = Matrix::from_int_rows(&[&[0, 1], &[0, 0]]);
        assert!(matches!(invariant_projection(2, &[n]), Err(LinalgError::NotReductive { .. })));
    }

    #[test]
    fn subquotient_full_and_trivial() {
        let z = Subspace::full(3);
        assert_eq!(subquotient(&z, &Subspace::zero(3)).unwrap().dim(), 3);
        assert_eq!(subquotient(&z, &z).unwrap().dim(), 0);
        let half = Subspace::from_vectors(3, vec![SparseVec::unit(0)]);
        assert!(subquotient(&half, &z).is_err());
        let _ = Scalar::one();
    }
}
