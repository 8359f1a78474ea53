//! Polynomial Poisson geometry: Schouten calculus, Poisson and equivariant Poisson cohomology.

pub mod calculus;
pub mod complexes;
pub mod expr;
pub mod field;
pub mod identities;
pub mod model;
pub mod momentum;
pub mod poly;
pub mod product_line;

pub use calculus::{exterior_d, schouten, tilde_i, vector_apply, Convention, PoissonStructure, Regime};
pub use identities::{verify_all, verify_identity, IdentityReport, SampleConfig, IDENTITY_NAMES};
pub use momentum::{coadjoint_fields, MomentumData};
pub use complexes::{
    de_rham_complex, de_rham_gdiff, equivariant_poisson_cohomology, lie_poisson_slice, momentum_spectral_sequence,
    mu_tangent_complex, poisson_cohomology, poisson_complex, poisson_gdiff, sharp_comparison, EquivariantPoissonReport,
    LiePoissonSlice, ModelSpec, MomentumSpectralSequence, MuTangent, PoissonCohomology, PoissonComplex, PoissonGDiff,
    SharpComparison,
};
pub use expr::parse_poly;
pub use product_line::{build_product_line_model, ProductLineModel, ProductLineReport};
pub use field::{contract, interior, pairing, Mixed, PolyForm, PolyMultivector};
pub use poly::Poly;

use crate::gdiff::GDiffError;
use crate::lie::LieError;
use crate::linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PoissonError {
    #[error("operands live on Q^{left} and Q^{right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("structure is not a bivector")]
    NotBivector,
    #[error("[π, π] = {residual} is nonzero")]
    NotPoisson { residual: String },
    #[error("structure has not been certified as Poisson")]
    UncertifiedPoisson,
    #[error("unknown identity {0}")]
    UnknownIdentity(String),
    #[error("identity {identity} fails on input {input}")]
    IdentityFailure { identity: String, input: String },
    #[error("π^♯ ã(e{}) differs from the action vector field", .index + 1)]
    MomentMismatch { index: usize },
    #[error("ã is not a Lie algebra homomorphism on (e{}, e{})", .i + 1, .j + 1)]
    NotHomomorphism { i: usize, j: usize },
    #[error("action field a(e{}) is not Poisson: L_a π ≠ 0", .index + 1)]
    PoissonActionViolation { index: usize },
    #[error("d ã(e{0}) differs from ã∧ã(δ e{0})", .index + 1)]
    DDeltaViolation { index: usize },
    #[error("model is not closed under the operator from degree {degree}")]
    ModelNotClosed { degree: usize },
    #[error("regime {0} is not supported for finite models")]
    UnsupportedRegime(String),
    #[error("tangent complex {0} mismatch between ã and a")]
    BasicMismatch(String),
    #[error("roots of the defining polynomial are not distinct")]
    DuplicateRoots,
    #[error("could not parse expression: {0}")]
    Parse(String),
    #[error("expected {expected} generators, found {found}")]
    GeneratorCount { expected: usize, found: usize },
    #[error(transparent)]
    GDiff(#[from] GDiffError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
