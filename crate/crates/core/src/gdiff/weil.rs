//! The truncated Weil algebra `W^{≤M}(g) = ∧g* ⊗ S^{≤M}g*` with `d_W = d_L − δ`.
//!
//! `d_L` is the Chevalley–Eilenberg differential with coefficients in the
//! coadjoint module `S g*`, and `δ(ω ⊗ f) = Σ_j i_j ω ⊗ x_j f`, so that
//! `d_W θ^k = d_L θ^k − F^k` for `θ^k = e^k ⊗ 1` and `F^k = 1 ⊗ x_k`.

use super::basic::basic_subcomplex;
use super::complex::ProductTable;
use super::layout::SymLayout;
use super::{GDiffComplex, GDiffError};
use crate::basis::wedge_masks;
use crate::lie::{CeComplex, LieAlgebra};
use crate::linalg::{cohomology_dims, CochainComplex, GradedSpace, Matrix, SparseVec, Subspace};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct WeilAlgebra {
    layout: SymLayout,
    gdiff: GDiffComplex,
}

/// Outcome of the structural checks run by [`weil_algebra`].
#[derive(Clone, Debug)]
pub struct WeilReport {
    pub cohomology_dims: Vec<usize>,
    /// Degrees `1..=M` all have vanishing cohomology.
    pub acyclic_in_band: bool,
    pub basic_dims: Vec<usize>,
    pub basic_differential_zero: bool,
    /// Invariant polynomial dims `dim (S^m g*)^g`, `m = 0..=M`, placed in degree `2m`.
    pub invariant_polynomial_dims: Vec<usize>,
}

impl WeilAlgebra {
    pub fn new(g: &LieAlgebra, cap: usize) -> Result<Self, GDiffError> {
        let w = Self::build(g, cap)?;
        w.gdiff.validate()?;
        Ok(w)
    }

    pub fn build(g: &LieAlgebra, cap: usize) -> Result<Self, GDiffError> {
        let n = g.dim();
        let ce = CeComplex::trivial(g);
        let ext = ce.exterior().clone();
        let layout = SymLayout::new((0..=n).map(|k| ext.dim(k)).collect(), n, cap);
        let coad: Vec<Matrix> = (0..n).map(|j| g.coad(j)).collect();
        let id_a = |k: usize| Matrix::identity(ext.dim(k));
        let id_s = |m: usize| layout.sym_identity(m);
        let total = layout.len();
        let mut d = Vec::with_capacity(total);
        for deg in 0..total {
            let mut m = layout.tensor_op(deg, &|k| ce.complex().dn(k), 1, &id_s, 0);
            for j in 0..n {
                m = m.add(&layout.tensor_op(deg, &|k| ce.wedge(j, k), 1, &|s| layout.sym_derivation(&coad[j], s), 0));
                m = m.sub(&layout.tensor_op(deg, &|k| ce.contraction(j, k), -1, &|s| layout.sym_mult(j, s), 1));
            }
            d.push(m);
        }
        let i: Vec<Vec<Matrix>> = (0..n)
            .map(|j| (0..total).map(|deg| layout.tensor_op(deg, &|k| ce.contraction(j, k), -1, &id_s, 0)).collect())
            .collect();
        let l: Vec<Vec<Matrix>> = (0..n)
            .map(|j| {
                (0..total)
                    .map(|deg| {
                        layout
                            .tensor_op(deg, &|k| ce.lie_derivative(j, k), 0, &id_s, 0)
                            .add(&layout.tensor_op(deg, &id_a, 0, &|s| layout.sym_derivation(&coad[j], s), 0))
                    })
                    .collect()
            })
            .collect();
        let complex = CochainComplex::new(GradedSpace::new(layout.dims().to_vec()), d)?;
        let mut table = ProductTable::new();
        for d1 in 0..total {
            for b1 in layout.blocks(d1) {
                for d2 in 0..total - d1 {
                    for b2 in layout.blocks(d2) {
                        if b1.m + b2.m > cap {
                            continue;
                        }
                        let m1s = ext.degree(b1.n);
                        let m2s = ext.degree(b2.n);
                        for (a1, &w1) in m1s.iter().enumerate() {
                            for (a2, &w2) in m2s.iter().enumerate() {
                                let Some((w, sign)) = wedge_masks(w1, w2) else { continue };
                                let a = ext.pos(w);
                                for s1 in 0..b1.s_dim {
                                    for s2 in 0..b2.s_dim {
                                        let s = layout.sym_product(b1.m, s1, b2.m, s2).expect("within cap");
                                        let idx = layout.index(d1 + d2, b1.m + b2.m, a, s);
                                        table.set(
                                            d1,
                                            b1.offset + a1 * b1.s_dim + s1,
                                            d2,
                                            b2.offset + a2 * b2.s_dim + s2,
                                            SparseVec::from_pairs([(idx, Scalar::from_int(sign))]),
                                        );
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        let tags = (0..total).map(|deg| layout.sym_tags(deg)).collect();
        let gdiff = GDiffComplex::unchecked(g, complex, i, l)?
            .with_product(table, Some(SparseVec::unit(0)))
            .with_sym_degree(tags);
        Ok(WeilAlgebra { layout, gdiff })
    }

    pub fn gdiff(&self) -> &GDiffComplex {
        &self.gdiff
    }

    pub fn layout(&self) -> &SymLayout {
        &self.layout
    }

    pub fn cap(&self) -> usize {
        self.layout.cap()
    }

    /// `θ^k`, in degree 1.
    pub fn theta(&self, k: usize) -> SparseVec {
        SparseVec::unit(self.layout.index(1, 0, k, 0))
    }

    /// `F^k`, in degree 2.
    pub fn curvature(&self, k: usize) -> SparseVec {
        let sym = self.layout.sym();
        let mut e = vec![0; sym.generators()];
        e[k] = 1;
        SparseVec::unit(self.layout.index(2, 1, 0, sym.pos(&e)))
    }

    pub fn report(&self) -> Result<WeilReport, GDiffError> {
        let g = self.gdiff.algebra();
        let cap = self.cap();
        let dims = cohomology_dims(self.gdiff.complex());
        let acyclic_in_band = dims.first() == Some(&1) && (1..=cap).all(|k| dims.get(k).copied().unwrap_or(0) == 0);
        let basic = basic_subcomplex(&self.gdiff)?;
        let basic_dims = basic.complex.dims().to_vec();
        let basic_differential_zero = basic.complex.d().is_zero();
        let coad: Vec<Matrix> = (0..g.dim()).map(|j| g.coad(j)).collect();
        let invariant_polynomial_dims = (0..=cap)
            .map(|m| {
                let ops: Vec<Matrix> = coad.iter().map(|c| self.layout.sym_derivation(c, m)).collect();
                let refs: Vec<&Matrix> = ops.iter().collect();
                crate::linalg::joint_kernel(self.layout.sym().dim(m), &refs).dim()
            })
            .collect();
        Ok(WeilReport { cohomology_dims: dims, acyclic_in_band, basic_dims, basic_differential_zero, invariant_polynomial_dims })
    }

    /// The basic subspace in degree `2m` read as invariant polynomials of degree `m`.
    pub fn basic_as_polynomials(&self, m: usize) -> Result<Subspace, GDiffError> {
        let basic = basic_subcomplex(&self.gdiff)?;
        let sub = &basic.subspaces[2 * m];
        let b = self.layout.block(2 * m, m).expect("pure symmetric block");
        Ok(Subspace::from_vectors(b.s_dim, sub.basis().iter().map(|v| v.slice(b.offset, b.offset + b.s_dim))))
    }
}

pub fn weil_algebra(g: &LieAlgebra, cap: usize) -> Result<(WeilAlgebra, WeilReport), GDiffError> {
    let w = WeilAlgebra::new(g, cap)?;
    let r = w.report()?;
    Ok((w, r))
}
