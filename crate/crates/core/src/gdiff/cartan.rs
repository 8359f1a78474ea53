//! The Cartan model `(A ⊗ S^{≤M} g*)^g` with `d_G(a ⊗ f) = da ⊗ f − Σ_j i_j a ⊗ x_j f`.

use super::layout::SymLayout;
use super::{GDiffComplex, GDiffError};
use crate::linalg::{cohomology, joint_kernel, Cohomology, CochainComplex, GradedSpace, Matrix, SparseVec, Subspace};

#[derive(Clone, Debug)]
pub struct CartanModel {
    base: GDiffComplex,
    layout: SymLayout,
    /// `d_G` on the whole truncated product (not a differential there).
    full_d: Vec<Matrix>,
    invariants: Vec<Subspace>,
    model: CochainComplex,
    tags: Vec<Vec<usize>>,
    band: usize,
}

/// Builds the truncated product, restricts to the joint kernel of the
/// diagonal `L_ξ` and checks `d_G² = 0` there.
pub fn cartan_model(a: &GDiffComplex, cap: usize) -> Result<CartanModel, GDiffError> {
    a.validate()?;
    cartan_model_unchecked(a, cap)
}

pub fn cartan_model_unchecked(a: &GDiffComplex, cap: usize) -> Result<CartanModel, GDiffError> {
    let g = a.algebra();
    let n = g.dim();
    let layout = SymLayout::new(a.space().dims().to_vec(), n, cap);
    let id_s = |m: usize| layout.sym_identity(m);
    let full_d: Vec<Matrix> = (0..layout.len())
        .map(|d| {
            let mut m = layout.tensor_op(d, &|k| a.d(k), 1, &id_s, 0);
            for j in 0..n {
                let t = layout.tensor_op(d, &|k| a.i(j, k), -1, &|s| layout.sym_mult(j, s), 1);
                m = m.sub(&t);
            }
            m
        })
        .collect();
    let coad: Vec<Matrix> = (0..n).map(|j| g.coad(j)).collect();
    let invariants: Vec<Subspace> = (0..layout.len())
        .map(|d| {
            let mut vecs = Vec::new();
            for b in layout.blocks(d) {
                let ops: Vec<Matrix> = (0..n)
                    .map(|j| {
                        a.l(j, b.n)
                            .kron(&Matrix::identity(b.s_dim))
                            .add(&Matrix::identity(b.a_dim).kron(&layout.sym_derivation(&coad[j], b.m)))
                    })
                    .collect();
                let refs: Vec<&Matrix> = ops.iter().collect();
                let k = joint_kernel(b.a_dim * b.s_dim, &refs);
                vecs.extend(k.basis().iter().map(|v| v.shift(b.offset)));
            }
            Subspace::from_vectors(layout.dim(d), vecs)
        })
        .collect();
    let full = CochainComplex::new(GradedSpace::new(layout.dims().to_vec()), full_d.clone())?;
    let model = full.restrict(&invariants).map_err(|_| GDiffError::NotInvariant)?;
    model.check_square_zero()?;
    let tags = invariants
        .iter()
        .enumerate()
        .map(|(d, s)| {
            let t = layout.sym_tags(d);
            s.pivots().iter().map(|&p| t[p]).collect()
        })
        .collect();
    Ok(CartanModel { base: a.clone(), layout, full_d, invariants, model, tags, band: 2 * cap })
}

impl CartanModel {
    pub fn base(&self) -> &GDiffComplex {
        &self.base
    }

    pub fn cap(&self) -> usize {
        self.layout.cap()
    }

    pub fn layout(&self) -> &SymLayout {
        &self.layout
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.model
    }

    /// Invariant subspace of the truncated product in total degree `d`.
    pub fn invariants(&self, d: usize) -> &Subspace {
        &self.invariants[d]
    }

    /// Symmetric degree of each model basis vector.
    pub fn sym_tags(&self) -> &[Vec<usize>] {
        &self.tags
    }

    /// Highest total degree at which truncation is faithful.
    pub fn band(&self) -> usize {
        self.band
    }

    pub fn full_d(&self, d: usize) -> &Matrix {
        &self.full_d[d]
    }

    /// Embeds model coordinates into the truncated product.
    pub fn embed(&self, d: usize, coords: &SparseVec) -> SparseVec {
        self.invariants[d].combine(coords)
    }

    /// Checks `d_G² = −Σ_j L_j ⊗ x_j` on the truncated product, i.e.
    /// `(d_G² α)(ξ) = −L_ξ α(ξ)` coefficientwise. Returns the first failing degree.
    pub fn check_square_identity(&self) -> Result<(), GDiffError> {
        let a = &self.base;
        let n = a.algebra().dim();
        for d in 0..self.layout.len() {
            let next = self.full_d.get(d + 1).cloned().unwrap_or_else(|| Matrix::zeros(0, self.layout.dim(d + 1)));
            let lhs = next.mul(&self.full_d[d]);
            let mut rhs = Matrix::zeros(lhs.nrows(), lhs.ncols());
            for j in 0..n {
                rhs = rhs.sub(&self.layout.tensor_op(d, &|k| a.l(j, k), 0, &|m| self.layout.sym_mult(j, m), 1));
            }
            if lhs != rhs {
                return Err(GDiffError::CartanSquare { degree: d });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct EquivariantCohomology {
    pub dims: Vec<usize>,
    pub band: usize,
    /// Degrees above the band (reported but not certified).
    pub beyond_band: Vec<usize>,
    pub cohomology: Cohomology,
}

impl EquivariantCohomology {
    /// Dims in total degrees `0..=band`.
    pub fn band_dims(&self) -> Vec<usize> {
        self.dims.iter().take(self.band + 1).copied().collect()
    }
}

pub fn equivariant_cohomology(model: &CartanModel) -> Result<EquivariantCohomology, GDiffError> {
    let coh = cohomology(model.complex())?;
    let dims = coh.dims();
    let beyond_band = (model.band + 1..dims.len()).collect();
    Ok(EquivariantCohomology { dims, band: model.band, beyond_band, cohomology: coh })
}
