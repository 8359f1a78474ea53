//! Exact-rational graded linear algebra.

mod echelon;
mod graded;
mod matrix;
mod vector;

pub use echelon::{Echelon, Quotient, Solver, Subspace};
pub use graded::{
    cohomology, cohomology_dims, cohomology_unchecked, homotopy_witness, invariant_projection, joint_kernel,
    joint_kernel_within, rank_kernel_image, subquotient, Cohomology, CohomologyDegree, CochainComplex,
    GradedSpace, InvariantProjection, LinearMap, RankKernelImage,
};
pub use matrix::Matrix;
pub use vector::{Accumulator, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("d∘d ≠ 0 from degree {degree}: entry ({row}, {col}) of d_{{n+1}} d_n is nonzero")]
    DifferentialNotSquareZero { degree: usize, col: usize, row: usize },
    #[error("block in degree {degree} has shape {found:?}, expected {expected:?}")]
    ShapeMismatch { degree: usize, expected: (usize, usize), found: (usize, usize) },
    #[error("graded spaces of composed maps do not match")]
    IncompatibleSpaces,
    #[error("denominator is not contained in numerator")]
    NotContained,
    #[error("subspace is not closed under d in degree {degree}")]
    NotSubcomplex { degree: usize },
    #[error("not reductive: invariants dim {invariants}, image sum dim {images}, intersection dim {meet}")]
    NotReductive { invariants: usize, images: usize, meet: usize },
}
