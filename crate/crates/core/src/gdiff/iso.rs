//! Comparison of the Cartan model of `A` with the basic subcomplex of `A ⊗ W^{≤M}`.
//!
//! The map `J(a ⊗ f) = Π_k (1 + T_k)(a ⊗ (-1)^m f)` for `f ∈ S^m`, with
//! `T_k(a ⊗ w) = (-1)^{|a|} i_k a ⊗ θ^k w` and `x_k` read as `F^k`, sends
//! `(A ⊗ S^{≤M} g*)^g` into `(A ⊗ W^{≤M})_b` and commutes with the differentials.

use super::basic::{basic_subcomplex, BasicSubcomplex};
use super::cartan::{cartan_model, CartanModel};
use super::tensor::{tensor_product, TensorProduct};
use super::weil::WeilAlgebra;
use super::{GDiffComplex, GDiffError};
use crate::linalg::{cohomology, Matrix, SparseVec, Subspace};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct WeilCartanComparison {
    pub weil: WeilAlgebra,
    pub tensor: TensorProduct,
    pub basic: BasicSubcomplex,
    pub cartan: CartanModel,
    /// `J` per total degree, from Cartan model coordinates to `A ⊗ W` coordinates.
    pub inclusion: Vec<Matrix>,
    pub basic_dims: Vec<usize>,
    pub equivariant_dims: Vec<usize>,
    pub band: usize,
    /// `J` lands in the basic subcomplex and commutes with the differentials.
    pub chain_map: bool,
    /// `J` induces isomorphisms on cohomology in degrees `0..=band`.
    pub iso_in_band: bool,
}

impl WeilCartanComparison {
    pub fn dims_agree_in_band(&self) -> bool {
        (0..=self.band).all(|d| self.basic_dims.get(d).copied().unwrap_or(0) == self.equivariant_dims.get(d).copied().unwrap_or(0))
    }
}

pub fn weil_cartan_comparison(a: &GDiffComplex, cap: usize) -> Result<WeilCartanComparison, GDiffError> {
    let g = a.algebra();
    let n = g.dim();
    let weil = WeilAlgebra::new(g, cap)?;
    let tensor = tensor_product(a, weil.gdiff())?;
    let basic = basic_subcomplex(&tensor.gdiff)?;
    let cartan = cartan_model(a, cap)?;
    let wl = weil.layout();
    let tl = &tensor.layout;
    let cl = cartan.layout();
    let wprod = weil.gdiff().product().expect("Weil product");
    let theta_left: Vec<Vec<Matrix>> = (0..n)
        .map(|k| {
            let th = weil.theta(k);
            (0..wl.len())
                .map(|q| {
                    let cols = (0..wl.dim(q)).map(|w| wprod.mul(1, &th, q, &SparseVec::unit(w))).collect();
                    Matrix::from_cols(wl.dim(q + 1), cols)
                })
                .collect()
        })
        .collect();
    let sum_t: Vec<Matrix> = (0..tl.len())
        .map(|deg| {
            let mut m: Option<Matrix> = None;
            for k in 0..n {
                let t = tl.tensor_op(deg, &|p| a.i(k, p), -1, &|q| theta_left[k][q].clone(), 1, true);
                m = Some(match m {
                    Some(x) => x.add(&t),
                    None => t,
                });
            }
            m.unwrap_or_else(|| Matrix::zeros(tl.dims()[deg], tl.dims()[deg]))
        })
        .collect();
    // Embedding a ⊗ f ↦ a ⊗ (1 ⊗ f) of the truncated product into A ⊗ W.
    let embed: Vec<Matrix> = (0..cl.len())
        .map(|deg| {
            let rows = tl.dims().get(deg).copied().unwrap_or(0);
            let cols = (0..cl.dim(deg))
                .map(|idx| {
                    let (m, x, s) = cl.decompose(deg, idx);
                    let p = deg - 2 * m;
                    let sign = if m % 2 == 1 { -Scalar::one() } else { Scalar::one() };
                    SparseVec::from_pairs([(tl.index(p, x, 2 * m, wl.index(2 * m, m, 0, s)), sign)])
                })
                .collect();
            Matrix::from_cols(rows, cols)
        })
        .collect();
    let inclusion: Vec<Matrix> = (0..cl.len())
        .map(|deg| {
            // The T_k commute and square to 0, so Π_k (1 + T_k) = exp(Σ_k T_k).
            let base = embed[deg].mul(&cartan.invariants(deg).matrix());
            let mut acc = base.clone();
            let mut term = base;
            let mut fact = Scalar::one();
            for r in 1..=n {
                term = sum_t[deg].mul(&term);
                fact = fact * Scalar::from_int(r as i64);
                acc = acc.add(&term.scale(&fact.recip()));
            }
            acc
        })
        .collect();
    let mut chain_map = true;
    for deg in 0..cl.len().min(tl.len()) {
        let j = &inclusion[deg];
        if j.cols().iter().any(|v| !basic.subspaces[deg].contains(v)) {
            chain_map = false;
        }
        if deg + 1 < cl.len() && deg + 1 < tl.len() {
            let lhs = tensor.gdiff.d(deg).mul(j);
            let rhs = inclusion[deg + 1].mul(&cartan.complex().dn(deg));
            if lhs != rhs {
                chain_map = false;
            }
        }
    }
    let basic_coh = cohomology(&basic.complex)?;
    let cart_coh = cohomology(cartan.complex())?;
    let band = cartan.band();
    let mut iso_in_band = chain_map;
    if chain_map {
        for deg in 0..=band.min(cl.len().saturating_sub(1)) {
            let hd = cart_coh.degree(deg);
            let classes: Vec<SparseVec> = hd
                .representatives()
                .iter()
                .map(|r| basic_coh.degree(deg).class_of(&basic.subspaces[deg].coords_sparse(&inclusion[deg].apply(r))))
                .collect();
            let rank = Subspace::from_vectors(basic_coh.dim(deg), classes).dim();
            if rank != hd.dim() || rank != basic_coh.dim(deg) {
                iso_in_band = false;
            }
        }
    }
    Ok(WeilCartanComparison {
        weil,
        tensor,
        basic_dims: basic_coh.dims(),
        equivariant_dims: cart_coh.dims(),
        basic,
        cartan,
        inclusion,
        band,
        chain_map,
        iso_in_band,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{CeComplex, LieAlgebra};

    #[test]
    fn point_circle() {
        let g = LieAlgebra::abelian(1);
        let c = weil_cartan_comparison(&GDiffComplex::point(&g), 2).unwrap();
        assert!(c.chain_map);
        assert!(c.iso_in_band, "{:?} vs {:?}", c.basic_dims, c.equivariant_dims);
    }

    #[test]
    fn ce_su2() {
        let g = LieAlgebra::su2();
        let c = weil_cartan_comparison(&GDiffComplex::from_ce(&CeComplex::trivial(&g)), 1).unwrap();
        assert!(c.chain_map);
        assert!(c.dims_agree_in_band(), "{:?} vs {:?}", c.basic_dims, c.equivariant_dims);
        assert!(c.iso_in_band);
    }

    #[test]
    fn ce_torus() {
        let g = LieAlgebra::abelian(2);
        let c = weil_cartan_comparison(&GDiffComplex::from_ce(&CeComplex::trivial(&g)), 1).unwrap();
        assert!(c.chain_map);
        assert!(c.iso_in_band, "{:?} vs {:?}", c.basic_dims, c.equivariant_dims);
    }
}
