//! Momentum data: an infinitesimal Poisson action together with its cotangent lift `ã`.

use super::calculus::{exterior_d, schouten, PoissonStructure};
use super::field::{PolyForm, PolyMultivector};
use super::poly::Poly;
use super::PoissonError;
use crate::basis::ExteriorBasis;
use crate::lie::{BialgebraData, LieAlgebra};

/// Validated `(g, δ, π, a, ã, μ)`.
#[derive(Clone, Debug)]
pub struct MomentumData {
    bialgebra: BialgebraData,
    structure: PoissonStructure,
    action: Vec<PolyMultivector>,
    lift: Vec<PolyForm>,
    moment: Option<Vec<Poly>>,
}

/// The natural action of `g` on `S(g)` = functions on `g*`: `x_k ↦ Σ_l c^l_{jk} x_l`.
pub fn coadjoint_fields(g: &LieAlgebra) -> Vec<PolyMultivector> {
    let n = g.dim();
    (0..n)
        .map(|j| {
            let mut v = PolyMultivector::zero(n);
            for k in 0..n {
                let mut c = Poly::zero(n);
                for l in 0..n {
                    c = c.add(&Poly::var(n, l).scale(&g.c(j, k, l)));
                }
                v = v.add(&PolyMultivector::term(n, 1 << k, c));
            }
            v
        })
        .collect()
}

impl MomentumData {
    /// `δ = 0` data: `ã(e_j) = −d μ_j`.
    pub fn from_moment(
        g: &LieAlgebra,
        p: &PoissonStructure,
        action: Vec<PolyMultivector>,
        mu: Vec<Poly>,
    ) -> Result<Self, PoissonError> {
        let lift = mu.iter().map(|m| exterior_d(&PolyForm::function(m.clone())).neg()).collect();
        Self::new(&BialgebraData::zero(g), p, action, lift, Some(mu))
    }

    /// General data with an explicitly supplied lift; `μ` is kept as metadata only.
    pub fn new(
        bialgebra: &BialgebraData,
        p: &PoissonStructure,
        action: Vec<PolyMultivector>,
        lift: Vec<PolyForm>,
        moment: Option<Vec<Poly>>,
    ) -> Result<Self, PoissonError> {
        let md = Self::unchecked(bialgebra, p, action, lift, moment)?;
        md.validate()?;
        Ok(md)
    }

    pub fn unchecked(
        bialgebra: &BialgebraData,
        p: &PoissonStructure,
        action: Vec<PolyMultivector>,
        lift: Vec<PolyForm>,
        moment: Option<Vec<Poly>>,
    ) -> Result<Self, PoissonError> {
        let r = bialgebra.algebra().dim();
        for count in [action.len(), lift.len()] {
            if count != r {
                return Err(PoissonError::GeneratorCount { expected: r, found: count });
            }
        }
        if !p.is_certified() {
            return Err(PoissonError::UncertifiedPoisson);
        }
        let n = p.ambient();
        if action.iter().any(|a| a.ambient() != n || !a.is_zero() && a.degree() != Some(1))
            || lift.iter().any(|a| a.ambient() != n || !a.is_zero() && a.degree() != Some(1))
        {
            return Err(PoissonError::NotBivector);
        }
        Ok(MomentumData { bialgebra: bialgebra.clone(), structure: p.clone(), action, lift, moment })
    }

    /// Runs every check in turn and reports the first failure with its basis index.
    pub fn validate(&self) -> Result<(), PoissonError> {
        let p = &self.structure;
        let g = self.algebra();
        let r = g.dim();
        for j in 0..r {
            if p.sharp(&self.lift[j]) != self.action[j] {
                return Err(PoissonError::MomentMismatch { index: j });
            }
        }
        for i in 0..r {
            for j in i + 1..r {
                let mut rhs = PolyForm::zero(p.ambient());
                for (k, c) in g.bracket_basis(i, j).iter() {
                    rhs = rhs.add(&self.lift[k].scale(c));
                }
                if p.form_bracket(&self.lift[i], &self.lift[j]) != rhs {
                    return Err(PoissonError::NotHomomorphism { i, j });
                }
            }
        }
        for j in 0..r {
            // L_{a(ξ)} π = −a∧a(δξ)
            let lhs = schouten(&self.action[j], p.pi())?;
            if lhs != self.delta_wedge(j, &self.action).neg() {
                return Err(PoissonError::PoissonActionViolation { index: j });
            }
        }
        for j in 0..r {
            if exterior_d(&self.lift[j]) != self.delta_wedge(j, &self.lift) {
                return Err(PoissonError::DDeltaViolation { index: j });
            }
        }
        Ok(())
    }

    /// `x∧x(δ e_j) = Σ_{a<b} δ(e_j)_{ab} x_a ∧ x_b`.
    fn delta_wedge<K: super::field::Kind>(&self, j: usize, x: &[super::field::Field<K>]) -> super::field::Field<K> {
        let ext = ExteriorBasis::new(self.algebra().dim());
        let mut r = super::field::Field::<K>::zero(self.structure.ambient());
        for (row, c) in self.bialgebra.delta().col(j).iter() {
            let m = ext.degree(2)[row];
            let a = m.trailing_zeros() as usize;
            let b = 31 - m.leading_zeros() as usize;
            r = r.add(&x[a].wedge(&x[b]).scale(c));
        }
        r
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.bialgebra.algebra()
    }

    pub fn bialgebra(&self) -> &BialgebraData {
        &self.bialgebra
    }

    pub fn structure(&self) -> &PoissonStructure {
        &self.structure
    }

    pub fn action(&self) -> &[PolyMultivector] {
        &self.action
    }

    pub fn lift(&self) -> &[PolyForm] {
        &self.lift
    }

    pub fn moment(&self) -> Option<&[Poly]> {
        self.moment.as_deref()
    }

    /// `g*` with its linear structure, `μ = id`, coadjoint fields.
    pub fn linear_dual(g: &LieAlgebra) -> Self {
        let n = g.dim();
        let p = PoissonStructure::linear_dual(g);
        let mu = (0..n).map(|k| Poly::var(n, k)).collect();
        Self::from_moment(g, &p, coadjoint_fields(g), mu).expect("identity moment map on a linear dual")
    }

    /// Rotation of the symplectic plane with `μ = (x² + y²)/2`.
    pub fn circle_on_plane() -> Self {
        Self::torus_on_symplectic(1)
    }

    /// `T^k` rotating each plane `(x_j, y_j)` of `Q^{2k}`, `μ_j = (x_j² + y_j²)/2`.
    pub fn torus_on_symplectic(k: usize) -> Self {
        let n = 2 * k;
        let half = crate::Scalar::new(1, 2);
        let mut action = Vec::with_capacity(k);
        let mut mu = Vec::with_capacity(k);
        for j in 0..k {
            let (x, y) = (Poly::var(n, 2 * j), Poly::var(n, 2 * j + 1));
            action.push(PolyMultivector::term(n, 1 << (2 * j + 1), x.clone()).sub(&PolyMultivector::term(n, 1 << (2 * j), y.clone())));
            mu.push(x.pow(2).add(&y.pow(2)).scale(&half));
        }
        Self::from_moment(&LieAlgebra::abelian(k), &PoissonStructure::symplectic(k), action, mu)
            .expect("rotations have quadratic moment maps")
    }

    /// Abelian `g` of dimension 2 with `δ(e_1) = e_1 ∧ e_2` acting trivially on `(Q², 0)`.
    pub fn cobracket_fixture() -> Self {
        let n = 2;
        let g = LieAlgebra::abelian(2);
        let delta = crate::linalg::Matrix::from_int_rows(&[&[1, 0]]);
        let b = BialgebraData::new(&g, delta).expect("abelian cobracket");
        let x = Poly::var(n, 0);
        let a1 = PolyForm::basis(n, 0).mul_poly(&x).add(&PolyForm::basis(n, 1).mul_poly(&x.pow(2).scale(&crate::Scalar::new(1, 2))));
        let a2 = PolyForm::basis(n, 1);
        let zero = vec![PolyMultivector::zero(n); 2];
        Self::new(&b, &PoissonStructure::zero(n), zero, vec![a1, a2], None).expect("d-delta holds by construction")
    }
}
