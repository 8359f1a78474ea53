//! Registry of calculus identities checked on seeded pseudo-random polynomial inputs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::calculus::{exterior_d, lie_derivative_form_std, schouten, tilde_i, vector_apply, PoissonStructure};
use super::field::{contract, interior, pairing, Mixed, PolyForm, PolyMultivector};
use super::poly::{Mono, Poly};
use super::PoissonError;
use crate::scalar::Scalar;

/// Every identity name accepted by [`verify_identity`].
pub const IDENTITY_NAMES: &[&str] = &[
    "schouten-antisymmetry",
    "schouten-jacobi",
    "d-pi-square",
    "bracket",
    "cartan-poisson",
    "ii",
    "leibn",
    "poisson-lie-1",
    "poisson-lie",
    "ti-i",
    "ti-wedge",
    "dual",
    "alt-mod",
    "cartan-module-law",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub count: usize,
    /// Bound on the coefficient degree of every generated input.
    pub max_degree: u32,
    pub seed: u64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { count: 100, max_degree: 2, seed: 0x5eed }
    }
}

/// One batch of random inputs; each identity uses what it needs.
#[derive(Clone, Debug)]
pub struct Sample {
    pub f: Poly,
    pub g: Poly,
    pub alpha: PolyForm,
    pub beta: PolyForm,
    pub gamma: PolyForm,
    pub v: PolyMultivector,
    pub w1: PolyMultivector,
    pub w2: PolyMultivector,
    /// A form of the same degree as `w1`.
    pub form: PolyForm,
}

impl Sample {
    fn describe(&self) -> String {
        format!(
            "f = {}; g = {}; α = {}; β = {}; γ = {}; v = {}; w1 = {}; w2 = {}; form = {}",
            self.f, self.g, self.alpha, self.beta, self.gamma, self.v, self.w1, self.w2, self.form
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityWitness {
    pub sample: usize,
    pub input: String,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub samples: usize,
    pub failure: Option<IdentityWitness>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, max_degree: u32) -> Poly {
    let mut p = Poly::zero(n);
    for _ in 0..rng.gen_range(0..=3) {
        let mut e: Mono = vec![0; n];
        let deg = rng.gen_range(0..=max_degree);
        for _ in 0..deg {
            e[rng.gen_range(0..n)] += 1;
        }
        let c = loop {
            let c = rng.gen_range(-3i64..=3);
            if c != 0 {
                break c;
            }
        };
        p.add_term(e, Scalar::from_int(c));
    }
    p
}

fn random_field<K: super::field::Kind>(rng: &mut ChaCha8Rng, n: usize, q: usize, max_degree: u32) -> super::field::Field<K> {
    let mut r = super::field::Field::<K>::zero(n);
    let masks: Vec<u32> = (0u32..1 << n).filter(|m| m.count_ones() as usize == q).collect();
    for &m in &masks {
        if rng.gen_bool(0.7) {
            r.add_term(m, random_poly(rng, n, max_degree));
        }
    }
    r
}

/// Deterministic inputs for a seed.
pub fn samples(n: usize, cfg: &SampleConfig) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let d = cfg.max_degree;
    (0..cfg.count)
        .map(|_| {
            let q1 = rng.gen_range(0..=n);
            let q2 = rng.gen_range(0..=n);
            Sample {
                f: random_poly(&mut rng, n, d),
                g: random_poly(&mut rng, n, d),
                alpha: random_field(&mut rng, n, 1, d),
                beta: random_field(&mut rng, n, 1, d),
                gamma: random_field(&mut rng, n, 1, d),
                v: random_field(&mut rng, n, 1, d),
                w1: random_field(&mut rng, n, q1, d),
                w2: random_field(&mut rng, n, q2, d),
                form: random_field(&mut rng, n, q1, d),
            }
        })
        .collect()
}

fn sign(q: usize) -> Scalar {
    if q.is_multiple_of(2) {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

fn residual<T: PartialEq + std::fmt::Display + Clone>(lhs: T, rhs: T, sub: impl Fn(&T, &T) -> T) -> Option<String> {
    if lhs == rhs {
        None
    } else {
        Some(sub(&lhs, &rhs).to_string())
    }
}

fn rv(lhs: PolyMultivector, rhs: PolyMultivector) -> Option<String> {
    residual(lhs, rhs, |a, b| a.sub(b))
}

fn rf(lhs: PolyForm, rhs: PolyForm) -> Option<String> {
    residual(lhs, rhs, |a, b| a.sub(b))
}

fn rp(lhs: Poly, rhs: Poly) -> Option<String> {
    residual(lhs, rhs, |a, b| a.sub(b))
}

fn rm(lhs: Mixed, rhs: Mixed) -> Option<String> {
    if lhs == rhs {
        None
    } else {
        Some("mixed tensors differ".into())
    }
}

fn first(checks: impl IntoIterator<Item = Option<String>>) -> Option<String> {
    checks.into_iter().flatten().next()
}

fn deg(w: &PolyMultivector) -> usize {
    w.degree().unwrap_or(0)
}

fn check(name: &str, p: &PoissonStructure, s: &Sample) -> Option<String> {
    let n = p.ambient();
    let l = |a: &PolyForm, w: &PolyMultivector| p.lie_derivative(a, w);
    match name {
        "schouten-antisymmetry" => {
            let (a, b) = (deg(&s.w1), deg(&s.w2));
            let lhs = p.bracket(&s.w1, &s.w2);
            let rhs = p.bracket(&s.w2, &s.w1).scale(&sign((a + 1) * (b + 1))).neg();
            rv(lhs, rhs)
        }
        "schouten-jacobi" => {
            // [P,[Q,R]] = [[P,Q],R] + (−1)^{(p−1)(q−1)} [Q,[P,R]]
            let (a, b) = (deg(&s.w1), deg(&s.w2));
            let r = &s.v;
            let lhs = p.bracket(&s.w1, &p.bracket(&s.w2, r));
            let rhs = p
                .bracket(&p.bracket(&s.w1, &s.w2), r)
                .add(&p.bracket(&s.w2, &p.bracket(&s.w1, r)).scale(&sign((a + 1) * (b + 1))));
            rv(lhs, rhs)
        }
        "d-pi-square" => rv(p.d_pi_unchecked(&p.d_pi_unchecked(&s.w1)), PolyMultivector::zero(n)),
        "bracket" => {
            let b = |x: &PolyForm, y: &PolyForm| p.form_bracket(x, y);
            let df = exterior_d(&PolyForm::function(s.f.clone()));
            let dg = exterior_d(&PolyForm::function(s.g.clone()));
            let ab = b(&s.alpha, &s.beta);
            first([
                rf(ab.clone(), b(&s.beta, &s.alpha).neg()),
                rf(
                    b(&s.alpha, &b(&s.beta, &s.gamma)),
                    b(&ab, &s.gamma).add(&b(&s.beta, &b(&s.alpha, &s.gamma))),
                ),
                rf(b(&df, &dg), exterior_d(&PolyForm::function(p.poisson_bracket(&s.f, &s.g)))),
                rv(p.sharp(&ab), schouten(&p.sharp(&s.alpha), &p.sharp(&s.beta)).ok()?),
            ])
        }
        "cartan-poisson" => {
            let x = p.sharp(&s.alpha);
            let df = exterior_d(&PolyForm::function(s.f.clone()));
            first([
                rv(l(&s.alpha, &PolyMultivector::function(s.f.clone())), PolyMultivector::function(vector_apply(&x, &s.f))),
                rv(l(&df, &PolyMultivector::function(s.g.clone())), PolyMultivector::function(p.poisson_bracket(&s.f, &s.g))),
            ])
        }
        "ii" => {
            let lhs = contract(&p.form_bracket(&s.alpha, &s.beta), &s.w1);
            let rhs = l(&s.alpha, &contract(&s.beta, &s.w1)).sub(&contract(&s.beta, &l(&s.alpha, &s.w1)));
            rv(lhs, rhs)
        }
        "leibn" => {
            let lhs = l(&s.alpha, &s.w1.wedge(&s.w2));
            let rhs = l(&s.alpha, &s.w1).wedge(&s.w2).add(&s.w1.wedge(&l(&s.alpha, &s.w2)));
            rv(lhs, rhs)
        }
        "poisson-lie-1" => {
            let x = p.sharp(&s.alpha);
            let da = exterior_d(&s.alpha);
            let rhs = schouten(&x, &s.v).ok()?.add(&p.sharp(&interior(&s.v, &da)));
            rv(l(&s.alpha, &s.v), rhs)
        }
        "poisson-lie" => {
            let x = p.sharp(&s.alpha);
            let da = exterior_d(&s.alpha);
            let rhs = schouten(&x, &s.w1).ok()?.add(&p.sharp_mixed(&tilde_i(&s.w1, &da)));
            rv(l(&s.alpha, &s.w1), rhs)
        }
        "ti-i" => {
            let t = tilde_i(&s.w1, &s.alpha);
            let both = Mixed::tensor(&PolyForm::function(Poly::one(n)), &contract(&s.alpha, &s.w1));
            let tv = tilde_i(&s.v, &s.form);
            let iv = Mixed::tensor(&interior(&s.v, &s.form), &PolyMultivector::function(Poly::one(n)));
            first([rm(t, both), rm(tv, iv)])
        }
        "ti-wedge" => {
            let a = deg(&s.w1);
            let lhs = tilde_i(&s.w1.wedge(&s.w2), &s.form);
            let rhs = Mixed::wedge_vectors_right(&tilde_i(&s.w1, &s.form), &s.w2)
                .add(&Mixed::wedge_vectors_left(&s.w1, &tilde_i(&s.w2, &s.form)).scale(&sign(a)));
            rm(lhs, rhs)
        }
        "dual" => {
            let x = p.sharp(&s.alpha);
            let lhs = vector_apply(&x, &pairing(&s.form, &s.w1));
            let rhs = pairing(&p.lie_derivative_on_form(&s.alpha, &s.form), &s.w1)
                .add(&pairing(&s.form, &l(&s.alpha, &s.w1)));
            rp(lhs, rhs)
        }
        "alt-mod" => {
            let x = p.sharp(&s.alpha);
            rv(p.sharp(&lie_derivative_form_std(&x, &s.beta)), l(&s.alpha, &p.sharp(&s.beta)))
        }
        "cartan-module-law" => {
            let ab = p.form_bracket(&s.alpha, &s.beta);
            let lhs = l(&ab, &s.w1);
            let rhs = l(&s.alpha, &l(&s.beta, &s.w1)).sub(&l(&s.beta, &l(&s.alpha, &s.w1)));
            rv(lhs, rhs)
        }
        _ => unreachable!("filtered by verify_identity"),
    }
}

/// Checks a named identity on every sample; stops at the first failing input.
pub fn verify_identity_on(name: &str, p: &PoissonStructure, inputs: &[Sample]) -> Result<IdentityReport, PoissonError> {
    if !IDENTITY_NAMES.contains(&name) {
        return Err(PoissonError::UnknownIdentity(name.to_string()));
    }
    if !p.is_certified() {
        return Err(PoissonError::UncertifiedPoisson);
    }
    let failure = inputs.iter().enumerate().find_map(|(k, s)| {
        check(name, p, s).map(|residual| IdentityWitness { sample: k, input: s.describe(), residual })
    });
    Ok(IdentityReport { identity: name.to_string(), samples: inputs.len(), failure })
}

/// Checks a named identity on seeded pseudo-random inputs.
pub fn verify_identity(name: &str, p: &PoissonStructure, cfg: &SampleConfig) -> Result<IdentityReport, PoissonError> {
    verify_identity_on(name, p, &samples(p.ambient(), cfg))
}

/// Runs the whole registry.
pub fn verify_all(p: &PoissonStructure, cfg: &SampleConfig) -> Vec<IdentityReport> {
    let inputs = samples(p.ambient(), cfg);
    IDENTITY_NAMES
        .iter()
        .map(|name| verify_identity_on(name, p, &inputs).expect("registered name"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LieAlgebra;
    use crate::poisson::Convention;

    fn small() -> SampleConfig {
        SampleConfig { count: 20, max_degree: 2, seed: 7 }
    }

    fn report(p: &PoissonStructure) {
        let bad: Vec<_> = verify_all(p, &small()).into_iter().filter(|r| !r.passed()).collect();
        assert!(bad.is_empty(), "{:#?}", bad.iter().map(|r| (&r.identity, &r.failure.as_ref().unwrap().residual)).collect::<Vec<_>>());
    }

    #[test]
    fn zero_structure() {
        report(&PoissonStructure::zero(3));
    }

    #[test]
    fn symplectic_plane() {
        report(&PoissonStructure::symplectic(1));
    }

    #[test]
    fn su2_dual() {
        report(&PoissonStructure::linear_dual(&LieAlgebra::su2()));
    }

    #[test]
    fn flipped_convention_breaks_module_law() {
        let p = PoissonStructure::linear_dual(&LieAlgebra::su2()).with_convention(Convention::Flipped);
        let r = verify_identity("cartan-module-law", &p, &small()).unwrap();
        assert!(r.failure.is_some());
    }

    #[test]
    fn unknown_name() {
        let p = PoissonStructure::zero(2);
        assert!(matches!(verify_identity("nope", &p, &small()), Err(PoissonError::UnknownIdentity(_))));
    }
}
