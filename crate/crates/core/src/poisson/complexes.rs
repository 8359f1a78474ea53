//! Finite Poisson, equivariant Poisson and μ-tangent complexes, and the momentum spectral sequence.

use std::collections::BTreeSet;

use serde::Serialize;

use super::calculus::{exterior_d, schouten, PoissonStructure, Regime};
use super::field::{contract, interior, Covectors, Field, Kind, PolyForm, Vectors};
use super::model::{Model, Truncation};
use super::momentum::MomentumData;
use super::PoissonError;
use crate::gdiff::{
    basic_subcomplex, cartan_model, equivariant_cohomology, locally_free_connection, GDiffComplex,
};
use crate::lie::{CeComplex, LieAlgebra, Representation, SubalgebraData};
use crate::linalg::{cohomology_dims, joint_kernel_within, CochainComplex, LinalgError, Matrix, SparseVec, Subspace};
use crate::spectral::{contraction_filtration, pages, SpectralSequence};

/// Which finite piece of the polynomial complex to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ModelSpec {
    /// Coefficient degree `≤ N`.
    UpTo(u32),
    /// One weight slice; the weight of `x^e ∂_I` is `|e| + λ|I|` with `λ` fixed by the data.
    Slice(i64),
}

fn coefficient_degrees<K: Kind>(f: &Field<K>) -> BTreeSet<u32> {
    f.entries().iter().map(|(_, e, _)| e.iter().sum::<u32>()).collect()
}

fn homogeneous_degree<'a, K: Kind + 'a>(fs: impl IntoIterator<Item = &'a Field<K>>) -> Result<Option<u32>, ()> {
    let mut all = BTreeSet::new();
    for f in fs {
        all.extend(coefficient_degrees(f));
    }
    match all.len() {
        0 => Ok(None),
        1 => Ok(all.into_iter().next()),
        _ => Err(()),
    }
}

/// Weight exponent `λ` preserved by `d_π`.
pub fn structure_lambda(p: &PoissonStructure) -> Result<i64, PoissonError> {
    match homogeneous_degree([p.pi()]) {
        Ok(None) => Ok(0),
        Ok(Some(c)) => Ok(1 - c as i64),
        Err(()) => Err(PoissonError::UnsupportedRegime("inhomogeneous π has no weight slices".into())),
    }
}

/// Weight exponent `λ` preserved by `d_π` and every `i_{ã(ξ)}`.
pub fn momentum_lambda(md: &MomentumData) -> Result<i64, PoissonError> {
    let lift = homogeneous_degree(md.lift().iter())
        .map_err(|_| PoissonError::UnsupportedRegime("inhomogeneous lift ã has no weight slices".into()))?;
    let pi = homogeneous_degree([md.structure().pi()])
        .map_err(|_| PoissonError::UnsupportedRegime("inhomogeneous π has no weight slices".into()))?;
    match (pi, lift) {
        (None, None) => Ok(0),
        (None, Some(a)) => Ok(a as i64),
        (Some(c), None) => Ok(1 - c as i64),
        (Some(c), Some(a)) if a as i64 == 1 - c as i64 => Ok(a as i64),
        (Some(c), Some(a)) => Err(PoissonError::UnsupportedRegime(format!(
            "π of coefficient degree {c} and ã of degree {a} share no weight grading"
        ))),
    }
}

#[derive(Clone, Debug)]
pub struct PoissonComplex {
    pub model: Model<Vectors>,
    pub complex: CochainComplex,
    /// `true` when the model is a genuine subcomplex (or slice) of the polynomial complex.
    pub exact: bool,
    /// Coefficient degrees not influenced by the truncation, for quotient models.
    pub band: Option<u32>,
}

fn linalg(e: LinalgError) -> PoissonError {
    PoissonError::Linalg(e)
}

/// `(𝒳^⋆, d_π)` on a finite model chosen by regime.
pub fn poisson_complex(p: &PoissonStructure, spec: ModelSpec) -> Result<PoissonComplex, PoissonError> {
    if !p.is_certified() {
        return Err(PoissonError::UncertifiedPoisson);
    }
    let n = p.ambient();
    let (model, strict, band) = match spec {
        ModelSpec::Slice(w) => (Model::slice(n, structure_lambda(p)?, w), true, None),
        ModelSpec::UpTo(max) => match p.regime() {
            Regime::Constant | Regime::Linear => {
                let lambda = structure_lambda(p)?;
                (Model::new(n, Truncation::UpTo { lambda, max: max as i64 }), true, None)
            }
            Regime::GeneralNoConstant => {
                let dmax = coefficient_degrees(p.pi()).into_iter().max().unwrap_or(1);
                (Model::truncated(n, max), false, Some(max.saturating_sub(dmax - 1)))
            }
            Regime::General => {
                return Err(PoissonError::UnsupportedRegime(
                    "π with both a constant and a nonconstant part must be split before truncation".into(),
                ))
            }
        },
    };
    let d = model.operator(&model, 1, strict, |w| p.d_pi_unchecked(w))?;
    let complex = CochainComplex::checked(model.space(), d).map_err(linalg)?;
    Ok(PoissonComplex { model, complex, exact: strict, band })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoissonCohomology {
    pub dims: Vec<usize>,
    pub exact: bool,
    pub band: Option<u32>,
}

pub fn poisson_cohomology(p: &PoissonStructure, spec: ModelSpec) -> Result<PoissonCohomology, PoissonError> {
    let c = poisson_complex(p, spec)?;
    Ok(PoissonCohomology { dims: cohomology_dims(&c.complex), exact: c.exact, band: c.band })
}

/// One coefficient-degree slice of the linear structure on `g*` next to `C^⋆(g; S^k g)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiePoissonSlice {
    pub k: u32,
    pub poisson_dims: Vec<usize>,
    pub ce_dims: Vec<usize>,
    /// `dim H^q(g) · dim (S^k g)^g`.
    pub predicted: Vec<usize>,
    /// `d_π` equals `d_CE` under `x^e ∂_I ↦ (−1)^q e^I ⊗ x^e`.
    pub isomorphic: bool,
}

pub fn lie_poisson_slice(g: &LieAlgebra, k: u32) -> Result<LiePoissonSlice, PoissonError> {
    let p = PoissonStructure::linear_dual(g);
    let pc = poisson_complex(&p, ModelSpec::Slice(k as i64))?;
    let module = Representation::adjoint(g).symmetric_power(k as usize);
    let ce = CeComplex::new(g, &module)?;
    let isomorphic = (0..=g.dim()).all(|q| pc.complex.dn(q) == ce.complex().dn(q).neg());
    let h = cohomology_dims(CeComplex::trivial(g).complex());
    let inv = module.invariants().dim();
    Ok(LiePoissonSlice {
        k,
        poisson_dims: cohomology_dims(&pc.complex),
        ce_dims: cohomology_dims(ce.complex()),
        predicted: h.iter().map(|d| d * inv).collect(),
        isomorphic,
    })
}

/// The multivector complex of one weight slice as a `g`-differential complex via `(d_π, i_{ã}, ℒ_{ã})`.
#[derive(Clone, Debug)]
pub struct PoissonGDiff {
    pub weight: i64,
    pub model: Model<Vectors>,
    pub complex: GDiffComplex,
}

pub fn poisson_gdiff(md: &MomentumData, weight: i64) -> Result<PoissonGDiff, PoissonError> {
    let lambda = momentum_lambda(md)?;
    let p = md.structure();
    let model = Model::<Vectors>::slice(p.ambient(), lambda, weight);
    let d = model.operator(&model, 1, true, |w| p.d_pi_unchecked(w))?;
    let complex = CochainComplex::checked(model.space(), d).map_err(linalg)?;
    let mut is = Vec::new();
    let mut ls = Vec::new();
    for a in md.lift() {
        is.push(model.operator(&model, -1, true, |w| contract(a, w))?);
        ls.push(model.operator(&model, 0, true, |w| p.lie_derivative(a, w))?);
    }
    let mut gd = GDiffComplex::new(md.algebra(), complex, is, ls)?;
    let one = super::field::PolyMultivector::function(super::poly::Poly::one(p.ambient()));
    if let Ok(u) = model.coords(0, &one) {
        if !u.is_zero() {
            gd = gd.with_unit(u);
        }
    }
    Ok(PoissonGDiff { weight, model, complex: gd })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivariantPoissonReport {
    pub weight: i64,
    pub dims: Vec<usize>,
    pub band: usize,
    /// A connection exists on the slice containing the constants.
    pub locally_free: bool,
    pub basic_dims: Option<Vec<usize>>,
}

impl EquivariantPoissonReport {
    pub fn band_dims(&self) -> Vec<usize> {
        self.dims.iter().take(self.band + 1).copied().collect()
    }

    /// Equivariant and basic dims agree in the band (only meaningful when locally free).
    pub fn agrees_with_basic(&self) -> Option<bool> {
        let b = self.basic_dims.as_ref()?;
        Some((0..=self.band).all(|n| self.dims.get(n).copied().unwrap_or(0) == b.get(n).copied().unwrap_or(0)))
    }
}

/// `H_{π,K}` of one weight slice through the Cartan model with symmetric cap `cap`.
pub fn equivariant_poisson_cohomology(
    md: &MomentumData,
    weight: i64,
    cap: usize,
    sub: Option<&SubalgebraData>,
) -> Result<EquivariantPoissonReport, PoissonError> {
    let restrict = |c: &GDiffComplex| match sub {
        Some(k) => c.restrict_to(k),
        None => c.clone(),
    };
    let gd = restrict(&poisson_gdiff(md, weight)?.complex);
    let model = cartan_model(&gd, cap)?;
    let eq = equivariant_cohomology(&model)?;
    let unit_slice = restrict(&poisson_gdiff(md, 0)?.complex);
    let locally_free = unit_slice.unit().is_some() && locally_free_connection(&unit_slice)?.is_some();
    let basic_dims = if locally_free {
        Some(cohomology_dims(&basic_subcomplex(&gd)?.complex))
    } else {
        None
    };
    Ok(EquivariantPoissonReport { weight, dims: eq.dims.clone(), band: eq.band, locally_free, basic_dims })
}

/// Invariant fields tangent to the μ-fibres on one slice.
#[derive(Clone, Debug)]
pub struct MuTangent {
    pub subspaces: Vec<Subspace>,
    pub complex: CochainComplex,
    pub dims: Vec<usize>,
    pub cohomology_dims: Vec<usize>,
    /// `ℒ_{ã(ξ)} = L_{a(ξ)}` on the joint kernel of the contractions.
    pub lie_operators_agree: bool,
}

pub fn mu_tangent_complex(md: &MomentumData, weight: i64) -> Result<MuTangent, PoissonError> {
    let pg = poisson_gdiff(md, weight)?;
    let gd = &pg.complex;
    let model = &pg.model;
    let r = md.algebra().dim();
    let mut mu_sub = Vec::new();
    let mut basic = Vec::new();
    let mut agree = true;
    for q in 0..gd.len() {
        let is: Vec<Matrix> = if q > 0 { (0..r).map(|j| gd.i(j, q)).collect() } else { vec![] };
        let refs: Vec<&Matrix> = is.iter().collect();
        let horizontal = joint_kernel_within(&Subspace::full(gd.dim(q)), &refs);
        let la: Vec<Matrix> = md
            .action()
            .iter()
            .map(|a| {
                let shifted = model.operator(model, 0, true, |w| schouten(a, w).expect("same ambient"))?;
                Ok(shifted[q].clone())
            })
            .collect::<Result<_, PoissonError>>()?;
        for (j, m) in la.iter().enumerate() {
            let lj = gd.l(j, q);
            agree &= horizontal.basis().iter().all(|v| m.apply(v) == lj.apply(v));
        }
        let la_refs: Vec<&Matrix> = la.iter().collect();
        let ls: Vec<Matrix> = (0..r).map(|j| gd.l(j, q)).collect();
        let ls_refs: Vec<&Matrix> = ls.iter().collect();
        let x = joint_kernel_within(&horizontal, &la_refs);
        let b = joint_kernel_within(&horizontal, &ls_refs);
        if !(x.contains_space(&b) && b.contains_space(&x)) {
            return Err(PoissonError::BasicMismatch(format!("degree {q}")));
        }
        mu_sub.push(x);
        basic.push(b);
    }
    let complex = gd.complex().restrict(&mu_sub).map_err(linalg)?;
    let dims = mu_sub.iter().map(|s| s.dim()).collect();
    Ok(MuTangent { cohomology_dims: cohomology_dims(&complex), subspaces: mu_sub, complex, dims, lie_operators_agree: agree })
}

#[derive(Clone, Debug)]
pub struct MomentumSpectralSequence {
    pub ss: SpectralSequence,
    pub lie_dims: Vec<usize>,
    pub mu_dims: Vec<usize>,
    pub mu_cohomology: Vec<usize>,
    pub poisson_dims: Vec<usize>,
}

impl MomentumSpectralSequence {
    /// `dim E_1^{pq} = dim H^q(g) · dim 𝒳^p(μ)`.
    pub fn e1_matches(&self) -> bool {
        self.page_matches(1, &self.mu_dims)
    }

    /// `dim E_2^{pq} = dim H^q(g) · dim H^p(𝒳(μ))`.
    pub fn e2_matches(&self) -> bool {
        self.page_matches(2, &self.mu_cohomology)
    }

    fn page_matches(&self, r: usize, col: &[usize]) -> bool {
        let page = self.ss.page(r);
        (0..col.len()).all(|p| {
            (0..self.lie_dims.len()).all(|q| page.dim(p, q as i64) == self.lie_dims[q] * col[p])
        })
    }

    pub fn converges(&self) -> bool {
        let lim = self.ss.limit_dims();
        (0..self.poisson_dims.len()).all(|n| lim.get(n).copied().unwrap_or(0) == self.poisson_dims[n])
    }
}

/// The filtration by iterated contractions with `ã(ξ)`, on one weight slice.
pub fn momentum_spectral_sequence(md: &MomentumData, weight: i64, r_max: usize) -> Result<MomentumSpectralSequence, PoissonError> {
    let pg = poisson_gdiff(md, weight)?;
    let fc = contraction_filtration(&pg.complex);
    let ss = pages(&fc, r_max);
    let mu = mu_tangent_complex(md, weight)?;
    Ok(MomentumSpectralSequence {
        ss,
        lie_dims: cohomology_dims(CeComplex::trivial(md.algebra()).complex()),
        mu_dims: mu.dims,
        mu_cohomology: mu.cohomology_dims,
        poisson_dims: cohomology_dims(pg.complex.complex()),
    })
}

/// Polynomial de Rham complex on the slice `|e| + k = w`.
pub fn de_rham_complex(n: usize, weight: i64) -> Result<(Model<Covectors>, CochainComplex), PoissonError> {
    let model = Model::<Covectors>::slice(n, 1, weight);
    let d = model.operator(&model, 1, true, exterior_d)?;
    let c = CochainComplex::checked(model.space(), d).map_err(linalg)?;
    Ok((model, c))
}

/// Forms on one slice as a `g`-differential complex via `(d, i_{a}, L_{a})`.
pub fn de_rham_gdiff(md: &MomentumData, weight: i64) -> Result<(Model<Covectors>, GDiffComplex), PoissonError> {
    let (model, c) = de_rham_complex(md.structure().ambient(), weight)?;
    let mut is = Vec::new();
    let mut ls = Vec::new();
    for a in md.action() {
        is.push(model.operator(&model, -1, true, |b| interior(a, b))?);
        ls.push(model.operator(&model, 0, true, |b| super::calculus::lie_derivative_form_std(a, b))?);
    }
    Ok((model, GDiffComplex::new(md.algebra(), c, is, ls)?))
}

/// `Ψ = (−1)^k π^♯` from forms to multivectors on matching slices.
#[derive(Clone, Debug)]
pub struct SharpComparison {
    pub blocks: Vec<Matrix>,
    pub chain_map: bool,
    pub intertwines_operators: bool,
    pub isomorphism: bool,
    pub de_rham_dims: Vec<usize>,
    pub poisson_dims: Vec<usize>,
}

pub fn sharp_comparison(md: &MomentumData, weight: i64) -> Result<SharpComparison, PoissonError> {
    let p = md.structure();
    let (fm, forms) = de_rham_gdiff(md, weight)?;
    let pg = poisson_gdiff(md, weight)?;
    let raw = fm.operator(&pg.model, 0, true, |b| p.sharp(b))?;
    let blocks: Vec<Matrix> = raw
        .into_iter()
        .enumerate()
        .map(|(k, m)| if k % 2 == 0 { m } else { m.neg() })
        .collect();
    let mv = &pg.complex;
    let len = blocks.len();
    let chain_map = (0..len).all(|k| {
        let next = blocks.get(k + 1).cloned().unwrap_or_else(|| Matrix::zeros(0, forms.dim(k + 1)));
        next.mul(&forms.d(k)) == mv.d(k).mul(&blocks[k])
    });
    let r = md.algebra().dim();
    let intertwines_operators = (0..len).all(|k| {
        (0..r).all(|j| {
            let li = blocks[k].mul(&forms.l(j, k)) == mv.l(j, k).mul(&blocks[k]);
            let ii = k == 0 || blocks[k - 1].mul(&forms.i(j, k)) == mv.i(j, k).mul(&blocks[k]);
            li && ii
        })
    });
    let isomorphism = blocks.iter().all(|b| b.nrows() == b.ncols() && b.rank() == b.nrows());
    Ok(SharpComparison {
        blocks,
        chain_map,
        intertwines_operators,
        isomorphism,
        de_rham_dims: cohomology_dims(forms.complex()),
        poisson_dims: cohomology_dims(mv.complex()),
    })
}

/// `d_π` on an explicit element, through the model (for callers holding coordinates).
pub fn apply_d_pi(pc: &PoissonComplex, q: usize, v: &SparseVec) -> SparseVec {
    pc.complex.dn(q).apply(v)
}

/// Contractions of a one-form on a model, as matrices per degree.
pub fn contraction_matrices(model: &Model<Vectors>, a: &PolyForm) -> Result<Vec<Matrix>, PoissonError> {
    model.operator(model, -1, true, |w| contract(a, w))
}
