//! G-differential complexes, Weil and Cartan models.

mod basic;
mod cartan;
mod complex;
mod iso;
mod layout;
mod low;
mod tensor;
mod universal;
mod weil;

pub use basic::{basic_subcomplex, is_connection, locally_free_connection, BasicSubcomplex};
pub use cartan::{cartan_model, cartan_model_unchecked, equivariant_cohomology, CartanModel, EquivariantCohomology};
pub use complex::{AxiomCheck, AxiomReport, GDiffComplex, ProductTable, Witness, IDENTITIES};
pub use layout::{Block, SymLayout};
pub use low::{low_degree, LowDegreeReport};
pub use tensor::{tensor_product, TensorLayout, TensorProduct};
pub use iso::{weil_cartan_comparison, WeilCartanComparison};
pub use universal::{weil_universal_map, weil_universal_map_unchecked, WeilMap};
pub use weil::{weil_algebra, WeilAlgebra, WeilReport};

use crate::linalg::LinalgError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GDiffError {
    #[error("identity {identity} fails for generators {:?} in degree {}", witness.labels(), witness.degree)]
    AxiomFailure { identity: String, witness: Witness },
    #[error("expected {expected} operators of each kind")]
    OperatorCount { expected: usize },
    #[error("invariant subspace is not preserved by the differential")]
    NotInvariant,
    #[error("d_G squared differs from the curvature term in degree {degree}")]
    CartanSquare { degree: usize },
    #[error("subspaces are not a subcomplex at degree {degree}")]
    NotSubcomplex { degree: usize },
    #[error("complexes are over different Lie algebras")]
    MismatchedAlgebra,
    #[error("complex carries no product")]
    NotMultiplicative,
    #[error("complex carries no unit")]
    NoUnit,
    #[error("map fails to commute with {0}")]
    NotChainMap(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
