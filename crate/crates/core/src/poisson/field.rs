//! Polynomial multivector fields and differential forms on affine `n`-space.
//!
//! Both are sums `Σ_I c_I(x) ∂_I` (resp. `dx_I`) over increasing index sets `I`,
//! stored as bit masks. The pairing is `⟨dx_I, ∂_J⟩ = δ_{IJ}`.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use super::poly::{Mono, Poly};
use crate::basis::{contract_sign, mask_indices, wedge_masks};
use crate::scalar::Scalar;

pub trait Kind: Clone + fmt::Debug + PartialEq + Eq {
    const SYMBOL: &'static str;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vectors;
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covectors;

impl Kind for Vectors {
    const SYMBOL: &'static str = "d";
}
impl Kind for Covectors {
    const SYMBOL: &'static str = "dx";
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Field<K: Kind> {
    n: usize,
    terms: BTreeMap<u32, Poly>,
    _k: PhantomData<K>,
}

pub type PolyMultivector = Field<Vectors>;
pub type PolyForm = Field<Covectors>;

impl<K: Kind> Field<K> {
    pub fn zero(n: usize) -> Self {
        Field { n, terms: BTreeMap::new(), _k: PhantomData }
    }

    /// `c · ∂_I` (or `c · dx_I`) for an index mask.
    pub fn term(n: usize, mask: u32, c: Poly) -> Self {
        let mut f = Self::zero(n);
        f.add_term(mask, c);
        f
    }

    pub fn function(p: Poly) -> Self {
        Self::term(p.nvars(), 0, p)
    }

    /// `∂_i` or `dx_i`.
    pub fn basis(n: usize, i: usize) -> Self {
        Self::term(n, 1 << i, Poly::one(n))
    }

    /// Builds from indices in any order; the sign of the sorting permutation is applied.
    pub fn from_indices(n: usize, idx: &[usize], c: Poly) -> Self {
        let mut out = Self::function(c);
        for &i in idx.iter().rev() {
            out = Self::basis(n, i).wedge(&out);
        }
        out
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mask: u32) -> Poly {
        self.terms.get(&mask).cloned().unwrap_or_else(|| Poly::zero(self.n))
    }

    pub fn add_term(&mut self, mask: u32, c: Poly) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&mask) {
            Some(v) => v.add(&c),
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(mask, v);
        }
    }

    /// Degree when homogeneous.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.count_ones() as usize);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn degree_part(&self, q: usize) -> Self {
        Field { n: self.n, terms: self.terms.iter().filter(|(m, _)| m.count_ones() as usize == q).map(|(m, c)| (*m, c.clone())).collect(), _k: PhantomData }
    }

    /// Highest coefficient degree.
    pub fn coeff_degree(&self) -> Option<u32> {
        self.terms.values().filter_map(|p| p.degree()).max()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|p| p.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        self.map_coeffs(|p| p.scale(s))
    }

    pub fn mul_poly(&self, f: &Poly) -> Self {
        self.map_coeffs(|p| p.mul(f))
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        let mut r = Self::zero(self.n);
        for (m, c) in &self.terms {
            r.add_term(*m, f(c));
        }
        r
    }

    pub fn truncate(&self, k: u32) -> Self {
        self.map_coeffs(|p| p.truncate(k))
    }

    pub fn wedge(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                if let Some((m, s)) = wedge_masks(*m1, *m2) {
                    r.add_term(m, c1.mul(c2).scale(&Scalar::from_int(s)));
                }
            }
        }
        r
    }

    /// Left contraction by the dual basis element: removes index `i`
    /// with sign `(-1)^{#{j ∈ I : j < i}}`.
    pub fn contract_basis(&self, i: usize) -> Self {
        let mut r = Self::zero(self.n);
        for (m, c) in &self.terms {
            if let Some((m2, s)) = contract_sign(i, *m) {
                r.add_term(m2, c.scale(&Scalar::from_int(s)));
            }
        }
        r
    }

    /// Coefficients of each basis component differentiated by `x_i`.
    pub fn deriv(&self, i: usize) -> Self {
        self.map_coeffs(|p| p.deriv(i))
    }

    /// `(mask, monomial) → coefficient` expansion.
    pub fn entries(&self) -> Vec<(u32, Mono, Scalar)> {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            for (e, s) in c.terms() {
                out.push((*m, e.clone(), s.clone()));
            }
        }
        out
    }
}

/// Pairing `⟨β, w⟩ = Σ_I β_I w^I`.
pub fn pairing(beta: &PolyForm, w: &PolyMultivector) -> Poly {
    let mut r = Poly::zero(beta.ambient());
    for (m, c) in beta.terms() {
        r = r.add(&c.mul(&w.coeff(*m)));
    }
    r
}

/// `i_α w` characterized by `⟨β, i_α w⟩ = ⟨α ∧ β, w⟩`.
pub fn contract(alpha: &PolyForm, w: &PolyMultivector) -> PolyMultivector {
    let mut r = PolyMultivector::zero(w.ambient());
    for (m, a) in alpha.terms() {
        // i_{dx_{i1}∧…∧dx_{ik}} = i_{dx_{ik}} ∘ … ∘ i_{dx_{i1}}
        let mut part = w.clone();
        for i in mask_indices(*m) {
            part = part.contract_basis(i);
        }
        r = r.add(&part.mul_poly(a));
    }
    r
}

/// Interior product `i_v β` of a vector field into a form (first slot).
pub fn interior(v: &PolyMultivector, beta: &PolyForm) -> PolyForm {
    let mut r = PolyForm::zero(beta.ambient());
    for (m, a) in v.terms() {
        if m.count_ones() != 1 {
            continue;
        }
        let i = m.trailing_zeros() as usize;
        r = r.add(&beta.contract_basis(i).mul_poly(a));
    }
    r
}

impl<K: Kind> fmt::Display for Field<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let b: Vec<String> = mask_indices(*m).iter().map(|i| format!("{}{i}", K::SYMBOL)).collect();
                if b.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", b.join("^"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Sums of `β ⊗ w` with `β` a form and `w` a multivector, linear over functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mixed {
    n: usize,
    terms: BTreeMap<(u32, u32), Poly>,
}

impl Mixed {
    pub fn zero(n: usize) -> Self {
        Mixed { n, terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, form: u32, vect: u32, c: Poly) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&(form, vect)) {
            Some(v) => v.add(&c),
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert((form, vect), v);
        }
    }

    pub fn tensor(beta: &PolyForm, w: &PolyMultivector) -> Self {
        let mut r = Mixed::zero(beta.ambient());
        for (a, c) in beta.terms() {
            for (b, d) in w.terms() {
                r.add_term(*a, *b, c.mul(d));
            }
        }
        r
    }

    pub fn add(&self, o: &Mixed) -> Mixed {
        let mut r = self.clone();
        for ((a, b), c) in &o.terms {
            r.add_term(*a, *b, c.clone());
        }
        r
    }

    pub fn scale(&self, s: &Scalar) -> Mixed {
        let mut r = Mixed::zero(self.n);
        for ((a, b), c) in &self.terms {
            r.add_term(*a, *b, c.scale(s));
        }
        r
    }

    /// `α ∧ (β ⊗ w) = (α ∧ β) ⊗ w`.
    pub fn wedge_left(alpha: &PolyForm, x: &Mixed) -> Mixed {
        let mut r = Mixed::zero(x.n);
        for (m1, c1) in alpha.terms() {
            for ((a, b), c) in &x.terms {
                if let Some((m, s)) = wedge_masks(*m1, *a) {
                    r.add_term(m, *b, c1.mul(c).scale(&Scalar::from_int(s)));
                }
            }
        }
        r
    }

    /// `(β ⊗ w) ∧ v = β ⊗ (w ∧ v)` on the multivector slot.
    pub fn wedge_vectors_right(x: &Mixed, v: &PolyMultivector) -> Mixed {
        let mut r = Mixed::zero(x.n);
        for ((a, b), c) in &x.terms {
            for (m2, c2) in v.terms() {
                if let Some((m, s)) = wedge_masks(*b, *m2) {
                    r.add_term(*a, m, c.mul(c2).scale(&Scalar::from_int(s)));
                }
            }
        }
        r
    }

    /// `v ∧ (β ⊗ w) = β ⊗ (v ∧ w)` on the multivector slot.
    pub fn wedge_vectors_left(v: &PolyMultivector, x: &Mixed) -> Mixed {
        let mut r = Mixed::zero(x.n);
        for (m1, c1) in v.terms() {
            for ((a, b), c) in &x.terms {
                if let Some((m, s)) = wedge_masks(*m1, *b) {
                    r.add_term(*a, m, c1.mul(c).scale(&Scalar::from_int(s)));
                }
            }
        }
        r
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Poly)> {
        self.terms.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contraction_normalization() {
        let n = 2;
        let dxdy = PolyMultivector::from_indices(n, &[0, 1], Poly::one(n));
        assert_eq!(contract(&PolyForm::basis(n, 0), &dxdy), PolyMultivector::basis(n, 1));
        assert_eq!(contract(&PolyForm::basis(n, 1), &dxdy), PolyMultivector::basis(n, 0).neg());
        let both = PolyForm::from_indices(n, &[0, 1], Poly::one(n));
        assert_eq!(pairing(&both, &dxdy), Poly::one(n));
        assert_eq!(PolyMultivector::from_indices(n, &[1, 0], Poly::one(n)), dxdy.neg());
    }

    #[test]
    fn interior_into_form() {
        let n = 2;
        let f = PolyForm::from_indices(n, &[0, 1], Poly::one(n));
        assert_eq!(interior(&PolyMultivector::basis(n, 1), &f), PolyForm::basis(n, 0).neg());
    }
}
