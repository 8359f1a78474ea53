//! Schouten calculus for a polynomial Poisson bivector.
//!
//! Conventions, fixed once here:
//! * `⟨dx_I, ∂_J⟩ = δ_{IJ}`, `i_α` by `⟨β, i_α w⟩ = ⟨α ∧ β, w⟩`.
//! * `β(π^♯ α) = ⟨β ∧ α, π⟩`, so `π^♯ α = −i_α π`, extended multiplicatively.
//! * Schouten bracket with odd variables `ζ_i = ∂_i`:
//!   `[P, Q] = Σ_i (P ∂⃖_{ζ_i})(∂_{x_i} Q) − (∂_{x_i} P)(∂⃗_{ζ_i} Q)`,
//!   which is the Lie bracket on vector fields and gives `[π, f] = π^♯ df`.
//! * `d_π w = −[π, w]`, `ℒ_α = i_α d_π + d_π i_α`.
//! * `{α, β} = L_{π^♯α} β − i_{π^♯β} dα`, hence `{df, dg} = d{f, g}` with
//!   `{f, g} = ⟨dg ∧ df, π⟩ = (π^♯ df) g`.

use super::field::{contract, interior, pairing, Mixed, PolyForm, PolyMultivector};
use super::poly::Poly;
use super::PoissonError;
use crate::basis::mask_indices;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    Constant,
    Linear,
    GeneralNoConstant,
    General,
}

/// Global sign of the Schouten bracket; `Flipped` exists to exercise the identity suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Convention {
    #[default]
    Standard,
    Flipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonStructure {
    pi: PolyMultivector,
    regime: Regime,
    certified: bool,
    convention: Convention,
}

fn right_deriv(p: &PolyMultivector, i: usize) -> PolyMultivector {
    let mut r = PolyMultivector::zero(p.ambient());
    for (m, c) in p.terms() {
        if m & (1 << i) == 0 {
            continue;
        }
        let above = (m >> (i + 1)).count_ones();
        let c = if above.is_multiple_of(2) { c.clone() } else { c.neg() };
        r.add_term(m & !(1 << i), c);
    }
    r
}

/// The Schouten bracket in the standard convention.
pub fn schouten(p: &PolyMultivector, q: &PolyMultivector) -> Result<PolyMultivector, PoissonError> {
    if p.ambient() != q.ambient() {
        return Err(PoissonError::AmbientMismatch { left: p.ambient(), right: q.ambient() });
    }
    let n = p.ambient();
    let mut r = PolyMultivector::zero(n);
    for i in 0..n {
        r = r.add(&right_deriv(p, i).wedge(&q.deriv(i)));
        r = r.sub(&p.deriv(i).wedge(&q.contract_basis(i)));
    }
    Ok(r)
}

/// Exterior derivative of a form.
pub fn exterior_d(beta: &PolyForm) -> PolyForm {
    let n = beta.ambient();
    let mut r = PolyForm::zero(n);
    for i in 0..n {
        r = r.add(&PolyForm::basis(n, i).wedge(&beta.deriv(i)));
    }
    r
}

/// `L_X β = i_X dβ + d i_X β` for a vector field `X`.
pub fn lie_derivative_form_std(x: &PolyMultivector, beta: &PolyForm) -> PolyForm {
    interior(x, &exterior_d(beta)).add(&exterior_d(&interior(x, beta)))
}

/// `ĩ_w β = Σ_j (−1)^{j−1} i_{v_j} β ⊗ v_1 ∧ … v̂_j … ∧ v_q` for `w = c ∂_{j_1} ∧ … ∧ ∂_{j_q}`.
pub fn tilde_i(w: &PolyMultivector, beta: &PolyForm) -> Mixed {
    let n = w.ambient();
    let mut r = Mixed::zero(n);
    for (m, c) in w.terms() {
        for (t, j) in mask_indices(*m).into_iter().enumerate() {
            let ib = beta.contract_basis(j);
            let rest = m & !(1 << j);
            let sign = if t % 2 == 0 { Scalar::one() } else { -Scalar::one() };
            for (fm, fc) in ib.terms() {
                r.add_term(*fm, rest, fc.mul(c).scale(&sign));
            }
        }
    }
    r
}

impl PoissonStructure {
    /// Certifies `[π, π] = 0` and classifies the coefficient degrees.
    pub fn new(pi: PolyMultivector) -> Result<Self, PoissonError> {
        let s = Self::uncertified(pi)?;
        let sq = schouten(&s.pi, &s.pi)?;
        if !sq.is_zero() {
            return Err(PoissonError::NotPoisson { residual: sq.to_string() });
        }
        Ok(PoissonStructure { certified: true, ..s })
    }

    pub fn uncertified(pi: PolyMultivector) -> Result<Self, PoissonError> {
        if !pi.is_zero() && pi.degree() != Some(2) {
            return Err(PoissonError::NotBivector);
        }
        let mut degs = std::collections::BTreeSet::new();
        for (_, c) in pi.terms() {
            for (e, _) in c.terms() {
                degs.insert(e.iter().sum::<u32>());
            }
        }
        let regime = if degs.iter().all(|&d| d == 0) {
            Regime::Constant
        } else if degs.iter().all(|&d| d == 1) {
            Regime::Linear
        } else if !degs.contains(&0) {
            Regime::GeneralNoConstant
        } else {
            Regime::General
        };
        Ok(PoissonStructure { pi, regime, certified: false, convention: Convention::Standard })
    }

    pub fn zero(n: usize) -> Self {
        PoissonStructure::new(PolyMultivector::zero(n)).expect("zero is Poisson")
    }

    /// `∂_x ∧ ∂_y ⊕ …` on `Q^{2k}`.
    pub fn symplectic(k: usize) -> Self {
        let n = 2 * k;
        let mut pi = PolyMultivector::zero(n);
        for i in 0..k {
            pi = pi.add(&PolyMultivector::from_indices(n, &[2 * i, 2 * i + 1], Poly::one(n)));
        }
        PoissonStructure::new(pi).expect("constant symplectic")
    }

    /// The linear structure on `g*`: `π = Σ_{i<j} c^k_{ij} x_k ∂_i ∧ ∂_j`.
    pub fn linear_dual(g: &crate::lie::LieAlgebra) -> Self {
        let n = g.dim();
        let mut pi = PolyMultivector::zero(n);
        for i in 0..n {
            for j in i + 1..n {
                let mut c = Poly::zero(n);
                for k in 0..n {
                    c = c.add(&Poly::var(n, k).scale(&g.c(i, j, k)));
                }
                pi = pi.add(&PolyMultivector::from_indices(n, &[i, j], c));
            }
        }
        PoissonStructure::new(pi).expect("Lie-Poisson structures are Poisson")
    }

    pub fn with_convention(mut self, c: Convention) -> Self {
        self.convention = c;
        self
    }

    pub fn pi(&self) -> &PolyMultivector {
        &self.pi
    }

    pub fn ambient(&self) -> usize {
        self.pi.ambient()
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Schouten bracket under this structure's convention.
    pub fn bracket(&self, p: &PolyMultivector, q: &PolyMultivector) -> PolyMultivector {
        let b = schouten(p, q).expect("same ambient");
        match self.convention {
            Convention::Standard => b,
            Convention::Flipped => b.neg(),
        }
    }

    /// `d_π w = −[π, w]`; requires a certified structure.
    pub fn d_pi(&self, w: &PolyMultivector) -> Result<PolyMultivector, PoissonError> {
        if !self.certified {
            return Err(PoissonError::UncertifiedPoisson);
        }
        Ok(self.d_pi_unchecked(w))
    }

    pub fn d_pi_unchecked(&self, w: &PolyMultivector) -> PolyMultivector {
        self.bracket(&self.pi, w).neg()
    }

    /// `π^♯` on forms of any degree.
    pub fn sharp(&self, beta: &PolyForm) -> PolyMultivector {
        let n = self.ambient();
        let images: Vec<PolyMultivector> = (0..n).map(|i| contract(&PolyForm::basis(n, i), &self.pi).neg()).collect();
        let mut r = PolyMultivector::zero(n);
        for (m, c) in beta.terms() {
            let mut t = PolyMultivector::function(c.clone());
            for i in mask_indices(*m) {
                t = t.wedge(&images[i]);
            }
            r = r.add(&t);
        }
        r
    }

    /// `π^♯(β ⊗ w) = π^♯β ∧ w`.
    pub fn sharp_mixed(&self, x: &Mixed) -> PolyMultivector {
        let n = self.ambient();
        let mut r = PolyMultivector::zero(n);
        for ((fm, vm), c) in x.terms() {
            let b = PolyForm::term(n, *fm, c.clone());
            r = r.add(&self.sharp(&b).wedge(&PolyMultivector::term(n, *vm, Poly::one(n))));
        }
        r
    }

    /// `{f, g} = (π^♯ df) g`.
    pub fn poisson_bracket(&self, f: &Poly, g: &Poly) -> Poly {
        let x = self.sharp(&exterior_d(&PolyForm::function(f.clone())));
        vector_apply(&x, g)
    }

    /// `{α, β} = L_{π^♯α} β − i_{π^♯β} dα` on one-forms.
    pub fn form_bracket(&self, a: &PolyForm, b: &PolyForm) -> PolyForm {
        lie_derivative_form_std(&self.sharp(a), b).sub(&interior(&self.sharp(b), &exterior_d(a)))
    }

    /// `ℒ_α w = i_α d_π w + d_π i_α w`.
    pub fn lie_derivative(&self, a: &PolyForm, w: &PolyMultivector) -> PolyMultivector {
        contract(a, &self.d_pi_unchecked(w)).add(&self.d_pi_unchecked(&contract(a, w)))
    }

    /// `ℒ_α` on forms: the derivation with `ℒ_α f = (π^♯α) f` and `ℒ_α β = {α, β}` on one-forms.
    pub fn lie_derivative_on_form(&self, a: &PolyForm, beta: &PolyForm) -> PolyForm {
        let n = self.ambient();
        let x = self.sharp(a);
        let brackets: Vec<PolyForm> = (0..n).map(|i| self.form_bracket(a, &PolyForm::basis(n, i))).collect();
        let mut r = PolyForm::zero(n);
        for (m, c) in beta.terms() {
            r = r.add(&PolyForm::term(n, *m, vector_apply(&x, c)));
            let idx = mask_indices(*m);
            for t in 0..idx.len() {
                let mut piece = PolyForm::function(c.clone());
                for (s, &i) in idx.iter().enumerate() {
                    let f = if s == t { brackets[i].clone() } else { PolyForm::basis(n, i) };
                    piece = piece.wedge(&f);
                }
                r = r.add(&piece);
            }
        }
        r
    }

    /// Standard Lie derivative `L_X w = [X, w]` of a multivector.
    pub fn lie_derivative_std(&self, x: &PolyMultivector, w: &PolyMultivector) -> PolyMultivector {
        self.bracket(x, w)
    }
}

/// `X f` for a vector field `X`.
pub fn vector_apply(x: &PolyMultivector, f: &Poly) -> Poly {
    let df = exterior_d(&PolyForm::function(f.clone()));
    pairing(&df, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LieAlgebra;

    fn v(n: usize, i: usize, c: Poly) -> PolyMultivector {
        PolyMultivector::term(n, 1 << i, c)
    }

    #[test]
    fn vector_field_bracket() {
        let n = 2;
        let x = Poly::var(n, 0);
        let y = Poly::var(n, 1);
        let b = schouten(&v(n, 1, x.clone()), &v(n, 0, y.clone())).unwrap();
        assert_eq!(b, v(n, 0, x).sub(&v(n, 1, y)));
        let c = PolyMultivector::from_indices(n, &[0, 1], Poly::one(n));
        assert!(schouten(&c, &PolyMultivector::basis(n, 0)).unwrap().is_zero());
    }

    #[test]
    fn su2_structure_is_the_cyclic_bivector() {
        let p = PoissonStructure::linear_dual(&LieAlgebra::su2());
        let n = 3;
        let (x, y, z) = (Poly::var(n, 0), Poly::var(n, 1), Poly::var(n, 2));
        let want = PolyMultivector::from_indices(n, &[0, 1], z)
            .add(&PolyMultivector::from_indices(n, &[1, 2], x))
            .add(&PolyMultivector::from_indices(n, &[2, 0], y));
        assert_eq!(p.pi(), &want);
        assert!(schouten(&want, &want).unwrap().is_zero());
        assert_eq!(p.regime(), Regime::Linear);
    }

    #[test]
    fn hamiltonian_of_x() {
        let p = PoissonStructure::symplectic(1);
        let x = PolyMultivector::function(Poly::var(2, 0));
        assert_eq!(p.d_pi(&x).unwrap(), PolyMultivector::basis(2, 1));
        assert_eq!(p.sharp(&PolyForm::basis(2, 0)), PolyMultivector::basis(2, 1).neg());
        assert!(p.d_pi(p.pi()).unwrap().is_zero());
    }

    #[test]
    fn uncertified_is_rejected() {
        let n = 3;
        let pi = PolyMultivector::from_indices(n, &[0, 1], Poly::var(n, 2)).add(&PolyMultivector::from_indices(n, &[0, 2], Poly::var(n, 1)));
        let bad = PolyMultivector::from_indices(n, &[1, 2], Poly::var(n, 1)).add(&PolyMultivector::from_indices(n, &[0, 1], Poly::var(n, 0)));
        assert!(PoissonStructure::new(pi).is_ok());
        assert!(matches!(PoissonStructure::new(bad.clone()), Err(PoissonError::NotPoisson { .. })));
        let u = PoissonStructure::uncertified(bad).unwrap();
        assert!(matches!(u.d_pi(&PolyMultivector::zero(n)), Err(PoissonError::UncertifiedPoisson)));
    }

    #[test]
    fn form_bracket_examples() {
        let p = PoissonStructure::symplectic(1);
        assert!(p.form_bracket(&PolyForm::basis(2, 0), &PolyForm::basis(2, 1)).is_zero());
        let s = PoissonStructure::linear_dual(&LieAlgebra::su2());
        let n = 3;
        let f = Poly::var(n, 0).pow(2);
        let g = Poly::var(n, 0).mul(&Poly::var(n, 1));
        let df = exterior_d(&PolyForm::function(f.clone()));
        let dg = exterior_d(&PolyForm::function(g.clone()));
        assert_eq!(s.form_bracket(&df, &dg), exterior_d(&PolyForm::function(s.poisson_bracket(&f, &g))));
    }

    #[test]
    fn lie_derivative_of_function_along_exact_form() {
        let p = PoissonStructure::symplectic(1);
        let n = 2;
        let (x, y) = (Poly::var(n, 0), Poly::var(n, 1));
        let dx = exterior_d(&PolyForm::function(x.clone()));
        let l = p.lie_derivative(&dx, &PolyMultivector::function(y.clone()));
        assert_eq!(l, PolyMultivector::function(p.poisson_bracket(&x, &y)));
        assert!(PoissonStructure::zero(2).lie_derivative(&dx, &PolyMultivector::function(y)).is_zero());
    }
}
