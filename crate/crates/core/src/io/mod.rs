//! Task files, schema validation, result reports and the example registry behind the CLI.

mod examples;
mod report;
mod run;
pub mod schema;

pub use examples::{parse_roots, parse_slices, run_example, ExampleParams, EXAMPLES};
pub use report::{Check, Format, PageTable, ResultReport, Table};
pub use run::{run_compute, run_file, validate_input, Kind, Options, TaskFile, KINDS};
pub use schema::{At, Doc};

use serde_json::{json, Value};

use crate::gdiff::GDiffError;
use crate::lie::LieError;
use crate::linalg::LinalgError;
use crate::poisson::PoissonError;
use crate::spectral::SpectralError;

pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_MATH: i32 = 3;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TaskError {
    /// Input does not match the schema; `pointer` is a JSON pointer into the document.
    #[error("schema violation at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("{message}")]
    Math { message: String, witness: Option<Value> },
    #[error("unknown example {0}")]
    UnknownExample(String),
    #[error("{0}")]
    Io(String),
}

impl TaskError {
    pub fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        let pointer = pointer.into();
        let pointer = if pointer.is_empty() { "/".to_string() } else { pointer };
        TaskError::Schema { pointer, message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            TaskError::Math { .. } => EXIT_MATH,
            _ => EXIT_SCHEMA,
        }
    }

    /// Machine-readable error document.
    pub fn to_json(&self) -> Value {
        let body = match self {
            TaskError::Schema { pointer, message } => json!({"kind": "schema", "pointer": pointer, "message": message}),
            TaskError::Math { message, witness } => {
                let mut v = json!({"kind": "math", "message": message});
                if let Some(w) = witness {
                    v["witness"] = w.clone();
                }
                v
            }
            TaskError::UnknownExample(name) => {
                json!({"kind": "schema", "message": self.to_string(), "example": name, "known": EXAMPLES})
            }
            TaskError::Io(m) => json!({"kind": "io", "message": m}),
        };
        json!({ "error": body })
    }
}

fn labels(idx: &[usize]) -> Value {
    Value::from(idx.iter().map(|i| format!("e{}", i + 1)).collect::<Vec<_>>())
}

fn math(message: String, witness: Option<Value>) -> TaskError {
    TaskError::Math { message, witness }
}

impl From<LinalgError> for TaskError {
    fn from(e: LinalgError) -> Self {
        let w = match &e {
            LinalgError::DifferentialNotSquareZero { degree, col, row } => {
                Some(json!({"degree": degree, "row": row, "column": col}))
            }
            LinalgError::ShapeMismatch { degree, expected, found } => {
                Some(json!({"degree": degree, "expected": [expected.0, expected.1], "found": [found.0, found.1]}))
            }
            LinalgError::NotSubcomplex { degree } => Some(json!({ "degree": degree })),
            _ => None,
        };
        math(e.to_string(), w)
    }
}

impl From<LieError> for TaskError {
    fn from(e: LieError) -> Self {
        let w = match &e {
            LieError::JacobiViolation { i, j, l } => Some(json!({"identity": "jacobi", "generators": labels(&[*i, *j, *l])})),
            LieError::Antisymmetry { i, j } => Some(json!({"identity": "antisymmetry", "generators": labels(&[*i, *j])})),
            LieError::RepresentationInvalid { i, j } => {
                Some(json!({"identity": "representation", "generators": labels(&[*i, *j])}))
            }
            LieError::CocycleViolation { i, j } => Some(json!({"identity": "cocycle", "generators": labels(&[*i, *j])})),
            LieError::DualJacobiViolation { i, j, l } => {
                Some(json!({"identity": "dual-jacobi", "generators": labels(&[*i, *j, *l])}))
            }
            LieError::FactorizationMismatch { computed, predicted } => {
                Some(json!({"computed": computed, "predicted": predicted}))
            }
            LieError::Linalg(inner) => return inner.clone().into(),
            _ => None,
        };
        math(e.to_string(), w)
    }
}

impl From<GDiffError> for TaskError {
    fn from(e: GDiffError) -> Self {
        let w = match &e {
            GDiffError::AxiomFailure { identity, witness } => Some(json!({
                "identity": identity,
                "generators": witness.labels(),
                "degree": witness.degree,
                "basis": witness.basis,
            })),
            GDiffError::Linalg(inner) => return inner.clone().into(),
            _ => None,
        };
        math(e.to_string(), w)
    }
}

impl From<PoissonError> for TaskError {
    fn from(e: PoissonError) -> Self {
        let w = match &e {
            PoissonError::NotPoisson { residual } => Some(json!({"identity": "[pi,pi]=0", "residual": residual})),
            PoissonError::MomentMismatch { index } => Some(json!({"identity": "moment", "generators": labels(&[*index])})),
            PoissonError::NotHomomorphism { i, j } => Some(json!({"identity": "homomorphism", "generators": labels(&[*i, *j])})),
            PoissonError::PoissonActionViolation { index } => {
                Some(json!({"identity": "poisson-action", "generators": labels(&[*index])}))
            }
            PoissonError::DDeltaViolation { index } => Some(json!({"identity": "d-delta", "generators": labels(&[*index])})),
            PoissonError::IdentityFailure { identity, input } => Some(json!({"identity": identity, "input": input})),
            PoissonError::GDiff(inner) => return inner.clone().into(),
            PoissonError::Lie(inner) => return inner.clone().into(),
            PoissonError::Linalg(inner) => return inner.clone().into(),
            _ => None,
        };
        math(e.to_string(), w)
    }
}

impl From<SpectralError> for TaskError {
    fn from(e: SpectralError) -> Self {
        math(e.to_string(), None)
    }
}
