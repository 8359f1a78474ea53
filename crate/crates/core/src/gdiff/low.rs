//! Degree-one and degree-two comparisons between `A` and its Cartan model.

use super::{cartan_model, equivariant_cohomology, GDiffComplex, GDiffError};
use crate::linalg::{cohomology, joint_kernel, joint_kernel_within, Matrix, SparseVec, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowDegreeReport {
    /// `d`-closed `g`-invariant elements of `A^1`.
    pub closed_invariant: Subspace,
    /// Degree-one `d_G`-cocycles of the Cartan model, as elements of `A^1`.
    pub cartan_closed: Subspace,
    /// `dim H^n(A)` and `dim H^n_G(A)` for `n = 0, 1, 2`.
    pub plain_dims: Vec<usize>,
    pub equivariant_dims: Vec<usize>,
    /// Rank of `H^n_G(A) → H^n(A)` (drop the polynomial part), `n = 0, 1, 2`.
    pub forget_ranks: Vec<usize>,
    /// `dim` of `(ker d ∩ ⋂ ker i_ξ on A^1) / d(A^0)^g`.
    pub horizontal_h1: usize,
}

impl LowDegreeReport {
    /// Every closed invariant degree-one element is `d_G`-closed.
    pub fn automatically_closed(&self) -> bool {
        self.cartan_closed.contains_space(&self.closed_invariant)
    }

    pub fn degree_one_iso(&self) -> bool {
        self.forget_ranks[1] == self.plain_dims[1] && self.forget_ranks[1] == self.equivariant_dims[1]
    }

    pub fn degree_two_epi(&self) -> bool {
        self.forget_ranks[2] == self.plain_dims[2]
    }

    pub fn horizontal_description_holds(&self) -> bool {
        self.horizontal_h1 == self.equivariant_dims[1]
    }
}

fn part(a: &GDiffComplex, n: usize, ops: impl Fn(usize, usize) -> Matrix) -> Vec<Matrix> {
    (0..a.algebra().dim()).map(|j| ops(j, n)).collect()
}

/// Both sides of the low-degree statements, computed independently.
pub fn low_degree(a: &GDiffComplex, cap: usize) -> Result<LowDegreeReport, GDiffError> {
    let model = cartan_model(a, cap.max(1))?;
    let eq = equivariant_cohomology(&model)?;
    let plain = cohomology(a.complex())?;
    let layout = model.layout();

    let ls1 = part(a, 1, |j, n| a.l(j, n));
    let ls1: Vec<&Matrix> = ls1.iter().collect();
    let closed_invariant = joint_kernel_within(&a.d(1).kernel(), &ls1);
    let cartan_closed = Subspace::from_vectors(
        a.dim(1),
        model.complex().dn(1).kernel().basis().iter().map(|v| forget(layout.block(1, 0), &model.embed(1, v))),
    );

    let mut forget_ranks = Vec::with_capacity(3);
    for n in 0..3 {
        let reps = eq.cohomology.degree(n).representatives();
        let images = reps.iter().map(|v| plain.degree(n).class_of(&forget(layout.block(n, 0), &model.embed(n, v))));
        forget_ranks.push(Subspace::from_vectors(plain.dim(n), images).dim());
    }

    let is1 = part(a, 1, |j, n| a.i(j, n));
    let is1: Vec<&Matrix> = is1.iter().collect();
    let horizontal = joint_kernel_within(&a.d(1).kernel(), &is1);
    let ls0 = part(a, 0, |j, n| a.l(j, n));
    let ls0: Vec<&Matrix> = ls0.iter().collect();
    let exact = joint_kernel(a.dim(0), &ls0).image_under(&a.d(0));

    Ok(LowDegreeReport {
        closed_invariant,
        cartan_closed,
        plain_dims: (0..3).map(|n| plain.dim(n)).collect(),
        equivariant_dims: (0..3).map(|n| eq.dims.get(n).copied().unwrap_or(0)).collect(),
        forget_ranks,
        horizontal_h1: horizontal.dim() - exact.dim(),
    })
}

/// The `S^0` component of a Cartan cochain.
fn forget(block: Option<super::Block>, v: &SparseVec) -> SparseVec {
    match block {
        Some(b) => v.slice(b.offset, b.offset + b.a_dim),
        None => SparseVec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{CeComplex, LieAlgebra, Representation};

    #[test]
    fn su2_trivial_coefficients() {
        let g = LieAlgebra::su2();
        let r = low_degree(&GDiffComplex::from_ce(&CeComplex::trivial(&g)), 1).unwrap();
        assert_eq!((r.plain_dims.clone(), r.equivariant_dims.clone()), (vec![1, 0, 0], vec![1, 0, 0]));
        assert!(r.automatically_closed() && r.degree_one_iso() && r.degree_two_epi());
    }

    #[test]
    fn abelian_breaks_automatic_closure() {
        let g = LieAlgebra::abelian(1);
        let r = low_degree(&GDiffComplex::from_ce(&CeComplex::trivial(&g)), 1).unwrap();
        assert_eq!(r.closed_invariant.dim(), 1);
        assert_eq!(r.cartan_closed.dim(), 0);
        assert!(!r.automatically_closed());
        assert!(!r.degree_one_iso());
    }

    #[test]
    fn su2_coadjoint_module() {
        let g = LieAlgebra::su2();
        let rep = Representation::coadjoint(&g).symmetric_power(2);
        let r = low_degree(&GDiffComplex::from_ce(&CeComplex::new(&g, &rep).unwrap()), 1).unwrap();
        assert!(r.automatically_closed() && r.degree_one_iso() && r.degree_two_epi());
        assert!(r.horizontal_description_holds());
    }
}
