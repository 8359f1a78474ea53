//! Filtrations by symmetric degree (Cartan models) and by iterated contractions.

use super::{build_filtered, FilteredComplex, SpectralSequence};
use crate::gdiff::{CartanModel, GDiffComplex};
use crate::linalg::{Matrix, SparseVec, Subspace};

/// `F_p = ⊕_{2m ≥ p} (A ⊗ S^m g*)^g`, levels `p = 0..=2M`.
pub fn symdegree_filtration(model: &CartanModel) -> FilteredComplex {
    let c = model.complex();
    let tags = model.sym_tags();
    let top = 2 * model.cap();
    let levels = (0..=top)
        .map(|p| {
            (0..c.len())
                .map(|n| {
                    let keep = tags[n].iter().enumerate().filter(|(_, &m)| 2 * m >= p).map(|(i, _)| SparseVec::unit(i));
                    Subspace::from_vectors(c.dim(n), keep)
                })
                .collect()
        })
        .collect();
    build_filtered(c.clone(), levels).expect("d_G does not lower symmetric degree")
}

/// `F_p^n = { x ∈ C^n : i_{e_j} x ∈ F_p^{n-1} for all j }` with `F_p^{p-1} = 0`,
/// i.e. all `(n − p + 1)`-fold contractions of `x` vanish.
pub fn contraction_filtration(c: &GDiffComplex) -> FilteredComplex {
    let n_gen = c.algebra().dim();
    let len = c.len();
    let top = len.saturating_sub(1);
    let contractions: Vec<Vec<Matrix>> = (0..len).map(|n| (0..n_gen).map(|j| c.i(j, n)).collect()).collect();
    let levels = (0..=top)
        .map(|p| {
            let mut lvl: Vec<Subspace> = Vec::with_capacity(len);
            for n in 0..len {
                let s = if p == 0 {
                    Subspace::full(c.dim(n))
                } else if n < p {
                    Subspace::zero(c.dim(n))
                } else {
                    let prev = &lvl[n - 1];
                    let mut s = Subspace::full(c.dim(n));
                    for m in &contractions[n] {
                        s = s.restricted_preimage(m, prev);
                    }
                    s
                };
                lvl.push(s);
            }
            lvl
        })
        .collect();
    build_filtered(c.complex().clone(), levels).expect("contraction levels are subcomplexes")
}

/// Checks that `d_2` of the symmetric-degree spectral sequence is induced by
/// `a ⊗ φ ↦ −Σ_j i_j a ⊗ x_j φ` on every representative of `E_2`.
pub fn symdegree_d2_matches(model: &CartanModel, ss: &SpectralSequence) -> bool {
    let e2 = ss.page(2);
    let a = model.base();
    let layout = model.layout();
    for cell in &e2.cells {
        if cell.dim() == 0 {
            continue;
        }
        let n = cell.n();
        let Some(tgt) = e2.cell(cell.p + 2, cell.q - 1) else { continue };
        let mut delta = Matrix::zeros(layout.dim(n + 1), layout.dim(n));
        for j in 0..a.algebra().dim() {
            delta = delta.sub(&layout.tensor_op(n, &|k| a.i(j, k), -1, &|m| layout.sym_mult(j, m), 1));
        }
        let inv_next = model.invariants(n + 1);
        let cols: Vec<SparseVec> = cell
            .representatives()
            .iter()
            .map(|x| {
                let y = delta.apply(&model.embed(n, x));
                tgt.coords(&inv_next.coords_sparse(&y))
            })
            .collect();
        let want = Matrix::from_cols(tgt.dim(), cols);
        let got = e2.differential(cell.p, cell.q).map(|d| d.matrix.clone()).unwrap_or_else(|| Matrix::zeros(tgt.dim(), cell.dim()));
        if want != got {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gdiff::{cartan_model, equivariant_cohomology};
    use crate::lie::{CeComplex, LieAlgebra};
    use crate::linalg::cohomology_dims;
    use crate::spectral::pages;

    #[test]
    fn point_circle_collapses_at_e1() {
        let g = LieAlgebra::abelian(1);
        let m = cartan_model(&GDiffComplex::point(&g), 2).unwrap();
        let ss = pages(&symdegree_filtration(&m), 2);
        assert!(ss.collapse <= 1);
    }

    #[test]
    fn su2_cartan_e1_equals_e2() {
        let g = LieAlgebra::su2();
        let a = GDiffComplex::from_ce(&CeComplex::trivial(&g));
        let m = cartan_model(&a, 2).unwrap();
        let ss = pages(&symdegree_filtration(&m), 3);
        let h = cohomology_dims(a.complex());
        let inv = [1usize, 0, 1];
        for p in 0..=4usize {
            for q in 0..4i64 {
                let want = if p % 2 == 0 { h[q as usize] * inv[p / 2] } else { 0 };
                assert_eq!(ss.page(1).dim(p, q), want, "E1 ({p},{q})");
                assert_eq!(ss.page(2).dim(p, q), want, "E2 ({p},{q})");
            }
        }
        assert!(symdegree_d2_matches(&m, &ss));
        let eq = equivariant_cohomology(&m).unwrap();
        assert_eq!(ss.limit_dims(), eq.dims);
    }

    #[test]
    fn contraction_filtration_of_su2_ce() {
        let g = LieAlgebra::su2();
        let a = GDiffComplex::from_ce(&CeComplex::trivial(&g));
        let ss = pages(&contraction_filtration(&a), 3);
        for q in 0..4 {
            assert_eq!(ss.page(2).dim(0, q), [1, 0, 0, 1][q as usize]);
        }
        assert_eq!(ss.limit_dims(), vec![1, 0, 0, 1]);
        assert!(ss.infinity().differentials_vanish());
    }
}
