//! Chevalley–Eilenberg complexes.
//!
//! `C^n(g; V) = ∧^n g* ⊗ V`, basis `e^I ⊗ v_a` at index `pos(I) * dim V + a`.
//! The differential is
//! `dφ(ξ_0..ξ_n) = Σ_{i<j} (-1)^{i+j} φ([ξ_i,ξ_j], …) + Σ_k (-1)^k ξ_k φ(…)`,
//! equivalently `d(ω ⊗ v) = d_∧ω ⊗ v + Σ_j e^j ∧ ω ⊗ ρ(e_j) v` with
//! `d_∧ e^k = -Σ_{i<j} c^k_{ij} e^i ∧ e^j`.

use super::rep::exterior_derivation;
use super::{LieAlgebra, LieError, Representation, SubalgebraData};
use crate::basis::{contract_sign, wedge_masks, wedge_sign, ExteriorBasis};
use crate::linalg::{
    cohomology, joint_kernel_within, CochainComplex, Cohomology, GradedSpace, LinalgError, Matrix, SparseVec, Subspace,
};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct CeComplex {
    g: LieAlgebra,
    rep: Representation,
    ext: ExteriorBasis,
    complex: CochainComplex,
}

impl CeComplex {
    pub fn new(g: &LieAlgebra, rep: &Representation) -> Result<Self, LieError> {
        rep.check(g)?;
        let n = g.dim();
        let ext = ExteriorBasis::new(n);
        let dv = rep.dim();
        // d e^k as a list of (mask of e^i ∧ e^j, coefficient).
        let de: Vec<Vec<(u32, Scalar)>> = (0..n)
            .map(|k| {
                let mut out = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        let c = g.c(i, j, k);
                        if !c.is_zero() {
                            out.push(((1u32 << i) | (1 << j), -c));
                        }
                    }
                }
                out
            })
            .collect();
        let mut blocks = Vec::with_capacity(n + 1);
        for deg in 0..=n {
            let rows = ext.dim(deg + 1) * dv;
            let mut cols = Vec::with_capacity(ext.dim(deg) * dv);
            for &mask in ext.degree(deg) {
                let bracket_part: Vec<(u32, Scalar)> = {
                    let mut acc = Vec::new();
                    let mut s = 0;
                    for i in 0..n {
                        if mask & (1 << i) == 0 {
                            continue;
                        }
                        let rest = mask & !(1 << i);
                        let sign = if s % 2 == 0 { 1 } else { -1 };
                        for (pq, c) in &de[i] {
                            if let Some((m, t)) = wedge_masks(*pq, rest) {
                                acc.push((m, c * &Scalar::from_int(sign * t)));
                            }
                        }
                        s += 1;
                    }
                    acc
                };
                for a in 0..dv {
                    let mut pairs = Vec::new();
                    for (m, c) in &bracket_part {
                        pairs.push((ext.pos(*m) * dv + a, c.clone()));
                    }
                    for j in 0..n {
                        if let Some((m, t)) = wedge_sign(j, mask) {
                            let base = ext.pos(m) * dv;
                            for (b, r) in rep.op(j).col(a).iter() {
                                pairs.push((base + b, r * &Scalar::from_int(t)));
                            }
                        }
                    }
                    cols.push(SparseVec::from_pairs(pairs));
                }
            }
            blocks.push(Matrix::from_cols(rows, cols));
        }
        let dims = (0..=n).map(|k| ext.dim(k) * dv).collect();
        let complex = CochainComplex::new(GradedSpace::new(dims), blocks).map_err(LieError::Linalg)?;
        Ok(CeComplex { g: g.clone(), rep: rep.clone(), ext, complex })
    }

    pub fn trivial(g: &LieAlgebra) -> Self {
        Self::new(g, &Representation::trivial(g, 1)).expect("trivial module is valid")
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn module(&self) -> &Representation {
        &self.rep
    }

    pub fn exterior(&self) -> &ExteriorBasis {
        &self.ext
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn top(&self) -> usize {
        self.g.dim()
    }

    /// `i_{e_j}: C^n → C^{n-1}`.
    pub fn contraction(&self, j: usize, n: usize) -> Matrix {
        let dv = self.rep.dim();
        let rows = if n == 0 { 0 } else { self.ext.dim(n - 1) * dv };
        let mut cols = Vec::with_capacity(self.ext.dim(n) * dv);
        for &mask in self.ext.degree(n) {
            let hit = contract_sign(j, mask);
            for a in 0..dv {
                cols.push(match hit {
                    Some((m, t)) => SparseVec::from_pairs([(self.ext.pos(m) * dv + a, Scalar::from_int(t))]),
                    None => SparseVec::new(),
                });
            }
        }
        Matrix::from_cols(rows, cols)
    }

    /// `e^j ∧ · : C^n → C^{n+1}` (acting on the form factor).
    pub fn wedge(&self, j: usize, n: usize) -> Matrix {
        let dv = self.rep.dim();
        let rows = self.ext.dim(n + 1) * dv;
        let mut cols = Vec::with_capacity(self.ext.dim(n) * dv);
        for &mask in self.ext.degree(n) {
            let hit = wedge_sign(j, mask);
            for a in 0..dv {
                cols.push(match hit {
                    Some((m, t)) => SparseVec::from_pairs([(self.ext.pos(m) * dv + a, Scalar::from_int(t))]),
                    None => SparseVec::new(),
                });
            }
        }
        Matrix::from_cols(rows, cols)
    }

    /// `L_{e_j}: C^n → C^n`, the coadjoint action on forms tensored with `ρ`.
    pub fn lie_derivative(&self, j: usize, n: usize) -> Matrix {
        let forms = exterior_derivation(&self.g.coad(j), &self.ext, n);
        let dv = self.rep.dim();
        forms.kron(&Matrix::identity(dv)).add(&Matrix::identity(self.ext.dim(n)).kron(self.rep.op(j)))
    }

    pub fn contraction_of(&self, x: &SparseVec, n: usize) -> Matrix {
        let rows = if n == 0 { 0 } else { self.complex.dim(n - 1) };
        combine(x, |j| self.contraction(j, n), (rows, self.complex.dim(n)))
    }

    pub fn lie_derivative_of(&self, x: &SparseVec, n: usize) -> Matrix {
        let d = self.complex.dim(n);
        combine(x, |j| self.lie_derivative(j, n), (d, d))
    }
}

fn combine(x: &SparseVec, f: impl Fn(usize) -> Matrix, shape: (usize, usize)) -> Matrix {
    let mut m = Matrix::zeros(shape.0, shape.1);
    for (j, c) in x.iter() {
        m = m.add_scaled(c, &f(j));
    }
    m
}

/// The relative complex `C(g, k; V)`, realized as the basic subcomplex for
/// the contractions and Lie derivatives along `k`.
#[derive(Clone, Debug)]
pub struct RelativeComplex {
    pub subspaces: Vec<Subspace>,
    pub complex: CochainComplex,
}

pub fn relative_subcomplex(ce: &CeComplex, k: &SubalgebraData) -> Result<RelativeComplex, LieError> {
    let c = ce.complex();
    let subspaces: Vec<Subspace> = (0..c.len())
        .map(|n| {
            let mut ops = Vec::new();
            for eta in k.basis() {
                if n > 0 {
                    ops.push(ce.contraction_of(eta, n));
                }
                ops.push(ce.lie_derivative_of(eta, n));
            }
            let refs: Vec<&Matrix> = ops.iter().collect();
            joint_kernel_within(&Subspace::full(c.dim(n)), &refs)
        })
        .collect();
    let complex = c.restrict(&subspaces).map_err(|e| match e {
        LinalgError::NotSubcomplex { degree } => LieError::NotSubcomplex { degree },
        other => LieError::Linalg(other),
    })?;
    Ok(RelativeComplex { subspaces, complex })
}

/// Result of [`lie_cohomology`].
#[derive(Clone, Debug)]
pub struct LieCohomology {
    pub dims: Vec<usize>,
    pub cohomology: Cohomology,
    /// `dim H^q(g, k) × dim V^g`, when requested.
    pub predicted: Option<Vec<usize>>,
}

/// `H(g, k; V)`. When `compact_type` is asserted, the factorized prediction
/// `H(g, k) ⊗ V^g` is computed and a mismatch is an error.
pub fn lie_cohomology(
    g: &LieAlgebra,
    k: Option<&SubalgebraData>,
    rep: &Representation,
    compact_type: bool,
) -> Result<LieCohomology, LieError> {
    let ce = CeComplex::new(g, rep)?;
    let complex = match k {
        Some(k) => relative_subcomplex(&ce, k)?.complex,
        None => ce.complex().clone(),
    };
    let coh = cohomology(&complex).map_err(LieError::Linalg)?;
    let dims = coh.dims();
    let predicted = if compact_type {
        let trivial = CeComplex::trivial(g);
        let base = match k {
            Some(k) => relative_subcomplex(&trivial, k)?.complex,
            None => trivial.complex().clone(),
        };
        let hd = crate::linalg::cohomology_dims(&base);
        let inv = rep.invariants().dim();
        let pred: Vec<usize> = hd.iter().map(|h| h * inv).collect();
        if pred != dims {
            return Err(LieError::FactorizationMismatch { computed: dims, predicted: pred });
        }
        Some(pred)
    } else {
        None
    };
    Ok(LieCohomology { dims, cohomology: coh, predicted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::cohomology_dims;

    #[test]
    fn su2_trivial_ranks() {
        let ce = CeComplex::trivial(&LieAlgebra::su2());
        assert_eq!(ce.complex().dn(1).rank(), 3);
        assert_eq!(ce.complex().dn(2).rank(), 0);
        assert_eq!(cohomology_dims(ce.complex()), vec![1, 0, 0, 1]);
    }

    #[test]
    fn d_of_dual_basis_matches_bracket() {
        // d e^2 = -e^0 ∧ e^1 because [e0,e1] = e2.
        let ce = CeComplex::trivial(&LieAlgebra::su2());
        let d1 = ce.complex().dn(1);
        let img = d1.apply(&SparseVec::unit(2));
        assert_eq!(img, SparseVec::from_pairs([(0, -Scalar::one())]));
    }

    #[test]
    fn coadjoint_module_square_zero() {
        let g = LieAlgebra::su2();
        let ce = CeComplex::new(&g, &Representation::coadjoint(&g)).unwrap();
        ce.complex().check_square_zero().unwrap();
        assert_eq!(ce.complex().dims(), &[3, 9, 9, 3]);
    }

    #[test]
    fn cartan_identity_holds_for_natural_operators() {
        let g = LieAlgebra::heisenberg();
        let ce = CeComplex::new(&g, &Representation::adjoint(&g)).unwrap();
        let c = ce.complex();
        for j in 0..3 {
            for n in 0..=3 {
                let di = if n == 0 { Matrix::zeros(c.dim(0), c.dim(0)) } else { c.d_into(n).mul(&ce.contraction(j, n)) };
                let id = ce.contraction(j, n + 1).mul(&c.dn(n));
                assert_eq!(di.add(&id), ce.lie_derivative(j, n), "generator {j}, degree {n}");
            }
        }
    }

    #[test]
    fn relative_dims() {
        let g = LieAlgebra::su2();
        let ce = CeComplex::trivial(&g);
        let circle = SubalgebraData::coordinate(&g, &[2]).unwrap();
        let r = relative_subcomplex(&ce, &circle).unwrap();
        assert_eq!(cohomology_dims(&r.complex), vec![1, 0, 1, 0]);
        let whole = relative_subcomplex(&ce, &SubalgebraData::whole(&g)).unwrap();
        assert_eq!(cohomology_dims(&whole.complex), vec![1, 0, 0, 0]);
        let none = relative_subcomplex(&ce, &SubalgebraData::zero(&g)).unwrap();
        assert_eq!(none.complex.dims(), ce.complex().dims());
    }

    #[test]
    fn factorized_prediction() {
        let g = LieAlgebra::su2();
        let v = Representation::coadjoint(&g).symmetric_power(2);
        let r = lie_cohomology(&g, None, &v, true).unwrap();
        assert_eq!(r.dims, vec![1, 0, 0, 1]);
        assert_eq!(r.predicted, Some(vec![1, 0, 0, 1]));
        let h = lie_cohomology(&LieAlgebra::heisenberg(), None, &Representation::trivial(&LieAlgebra::heisenberg(), 1), false).unwrap();
        assert_eq!(h.dims, vec![1, 2, 2, 1]);
    }

    #[test]
    fn heisenberg_is_not_compact_type() {
        let g = LieAlgebra::heisenberg();
        let r = lie_cohomology(&g, None, &Representation::adjoint(&g), true);
        assert!(matches!(r, Err(LieError::FactorizationMismatch { .. })));
    }
}
