//! The algebra map `W^{≤M}(g) → A` determined by a linear map `Φ: g* → A^1`.
//!
//! On generators `θ^k ↦ Φ(e^k)` and `F^k ↦ Φ(d_∧ e^k) − d_A Φ(e^k)`, where
//! `Φ(d_∧ e^k)` is evaluated multiplicatively; a basis element
//! `θ^{i_1}⋯θ^{i_r} F^e` goes to the corresponding ordered product in `A`.

use super::weil::WeilAlgebra;
use super::{GDiffComplex, GDiffError};
use crate::basis::mask_indices;
use crate::lie::CeComplex;
use crate::linalg::{Matrix, SparseVec};

#[derive(Clone, Debug)]
pub struct WeilMap {
    /// `blocks[D]` maps `W^D` to `A^D`.
    pub blocks: Vec<Matrix>,
    /// Images of `F^k` in `A^2`.
    pub curvature: Vec<SparseVec>,
}

/// Builds the extension and checks `f ∘ d_W = d_A ∘ f` on every basis element
/// of symmetric degree below the cap (higher ones have truncated differentials).
pub fn weil_universal_map(w: &WeilAlgebra, target: &GDiffComplex, phi: &Matrix) -> Result<WeilMap, GDiffError> {
    let f = weil_universal_map_unchecked(w, target, phi)?;
    let layout = w.layout();
    for deg in 0..layout.len() {
        let dw = w.gdiff().d(deg);
        let next = f.blocks.get(deg + 1);
        for b in layout.blocks(deg) {
            if b.m >= w.cap() {
                continue;
            }
            for r in 0..b.a_dim * b.s_dim {
                let x = b.offset + r;
                let lhs = match next {
                    Some(m) => m.apply(dw.col(x)),
                    None => SparseVec::new(),
                };
                let rhs = if deg < target.len() { target.d(deg).apply(f.blocks[deg].col(x)) } else { SparseVec::new() };
                if lhs != rhs {
                    return Err(GDiffError::NotChainMap(format!("d on W basis element {x} of degree {deg}")));
                }
            }
        }
    }
    Ok(f)
}

pub fn weil_universal_map_unchecked(w: &WeilAlgebra, target: &GDiffComplex, phi: &Matrix) -> Result<WeilMap, GDiffError> {
    let prod = target.product().ok_or(GDiffError::NotMultiplicative)?;
    let unit = target.unit().ok_or(GDiffError::NoUnit)?.clone();
    let g = w.gdiff().algebra();
    let n = g.dim();
    if phi.ncols() != n || phi.nrows() != target.dim(1) {
        return Err(GDiffError::OperatorCount { expected: n });
    }
    let ce = CeComplex::trivial(g);
    let ext = ce.exterior();
    let theta: Vec<SparseVec> = (0..n).map(|k| phi.col(k).clone()).collect();
    // Φ applied multiplicatively to a 2-form on g.
    let phi_two = |v: &SparseVec| -> SparseVec {
        let mut acc = SparseVec::new();
        for (idx, c) in v.iter() {
            let ij = mask_indices(ext.degree(2)[idx]);
            let p = prod.mul(1, &theta[ij[0]], 1, &theta[ij[1]]);
            acc = acc.add_scaled(c, &p);
        }
        acc
    };
    let curvature: Vec<SparseVec> = (0..n)
        .map(|k| {
            let de = ce.complex().dn(1).apply(&SparseVec::unit(k));
            let dphi = if target.len() > 1 { target.d(1).apply(&theta[k]) } else { SparseVec::new() };
            phi_two(&de).sub(&dphi)
        })
        .collect();
    let layout = w.layout();
    let sym = layout.sym();
    let blocks = (0..layout.len())
        .map(|deg| {
            let rows = target.dim(deg);
            let mut cols = vec![SparseVec::new(); layout.dim(deg)];
            if rows == 0 {
                return Matrix::from_cols(rows, cols);
            }
            for b in layout.blocks(deg) {
                for (a, &mask) in ext.degree(b.n).iter().enumerate() {
                    let mut form = unit.clone();
                    let mut d = 0;
                    for i in mask_indices(mask) {
                        form = prod.mul(d, &form, 1, &theta[i]);
                        d += 1;
                    }
                    for (s, e) in sym.degree(b.m).iter().enumerate() {
                        let mut x = form.clone();
                        let mut dx = d;
                        for (k, &pw) in e.iter().enumerate() {
                            for _ in 0..pw {
                                x = prod.mul(dx, &x, 2, &curvature[k]);
                                dx += 2;
                            }
                        }
                        cols[b.offset + a * b.s_dim + s] = if dx == deg { x } else { SparseVec::new() };
                    }
                }
            }
            Matrix::from_cols(rows, cols)
        })
        .collect();
    Ok(WeilMap { blocks, curvature })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LieAlgebra;

    #[test]
    fn zero_phi_kills_positive_degrees() {
        let g = LieAlgebra::su2();
        let w = WeilAlgebra::new(&g, 2).unwrap();
        let a = GDiffComplex::from_ce(&CeComplex::trivial(&g));
        let f = weil_universal_map(&w, &a, &Matrix::zeros(3, 3)).unwrap();
        assert_eq!(f.blocks[0], Matrix::identity(1));
        assert!(f.blocks[1..].iter().all(|m| m.is_zero()));
    }

    #[test]
    fn identity_on_weil() {
        let g = LieAlgebra::su2();
        let w = WeilAlgebra::new(&g, 2).unwrap();
        let phi = Matrix::from_cols(w.gdiff().dim(1), (0..3).map(|k| w.theta(k)).collect());
        let f = weil_universal_map(&w, w.gdiff(), &phi).unwrap();
        for (deg, m) in f.blocks.iter().enumerate() {
            assert_eq!(m, &Matrix::identity(w.gdiff().dim(deg)), "degree {deg}");
        }
        assert_eq!(f.curvature[1], w.curvature(1));
    }

    #[test]
    fn ce_target_has_flat_curvature() {
        let g = LieAlgebra::su2();
        let w = WeilAlgebra::new(&g, 2).unwrap();
        let a = GDiffComplex::from_ce(&CeComplex::trivial(&g));
        let f = weil_universal_map(&w, &a, &Matrix::identity(3)).unwrap();
        assert!(f.curvature.iter().all(|c| c.is_zero()));
        assert_eq!(f.blocks[3].rank(), 1);
    }

    #[test]
    fn non_multiplicative_target() {
        let g = LieAlgebra::su2();
        let w = WeilAlgebra::new(&g, 1).unwrap();
        let a = GDiffComplex::from_ce(&CeComplex::new(&g, &crate::lie::Representation::adjoint(&g)).unwrap());
        assert!(matches!(weil_universal_map(&w, &a, &Matrix::zeros(9, 3)), Err(GDiffError::NotMultiplicative)));
    }
}
