//! Lie algebras, representations, bialgebras and Chevalley–Eilenberg cohomology.

mod algebra;
mod bialgebra;
mod ce;
pub mod rep;
mod subalgebra;

pub use algebra::{BracketEntry, LieAlgebra};
pub use bialgebra::BialgebraData;
pub use ce::{lie_cohomology, relative_subcomplex, CeComplex, LieCohomology, RelativeComplex};
pub use rep::Representation;
pub use subalgebra::SubalgebraData;

use crate::linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("basis index out of range for dimension {dim}")]
    IndexOutOfRange { dim: usize },
    #[error("bracket table is not antisymmetric at (e{}, e{})", .i + 1, .j + 1)]
    Antisymmetry { i: usize, j: usize },
    #[error("Jacobi identity fails on (e{}, e{}, e{})", .i + 1, .j + 1, .l + 1)]
    JacobiViolation { i: usize, j: usize, l: usize },
    #[error("representation needs {generators} operators of size {dim}x{dim}")]
    RepresentationShape { dim: usize, generators: usize },
    #[error("representation does not respect the bracket of (e{}, e{})", .i + 1, .j + 1)]
    RepresentationInvalid { i: usize, j: usize },
    #[error("cobracket must be a {expected:?} matrix, found {found:?}")]
    CobracketShape { expected: (usize, usize), found: (usize, usize) },
    #[error("cobracket is not a 1-cocycle on (e{}, e{})", .i + 1, .j + 1)]
    CocycleViolation { i: usize, j: usize },
    #[error("dual bracket violates Jacobi on (e^{}, e^{}, e^{})", .i + 1, .j + 1, .l + 1)]
    DualJacobiViolation { i: usize, j: usize, l: usize },
    #[error("span is not closed under the bracket: basis vectors {a}, {b}")]
    NotSubalgebra { a: usize, b: usize },
    #[error("complement is not a direct summand")]
    ComplementNotDirect,
    #[error("complement is not stable: bracket of subalgebra vector {a} with complement vector {b}")]
    ComplementNotStable { a: usize, b: usize },
    #[error("no invariant complement exists")]
    NoInvariantComplement,
    #[error("relative complex is not closed under d in degree {degree}")]
    NotSubcomplex { degree: usize },
    #[error("cohomology {computed:?} differs from factorized prediction {predicted:?}")]
    FactorizationMismatch { computed: Vec<usize>, predicted: Vec<usize> },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
