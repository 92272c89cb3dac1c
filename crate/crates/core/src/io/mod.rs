//! Documents, corpus generation, automorphism search, DOT export and the
//! fuzz driver.

mod automorphism;
mod dot;
mod fuzz;
mod generate;
mod report;
mod schema;

use thiserror::Error;

use crate::action::ActionError;
use crate::complex::ComplexError;

pub use automorphism::{automorphism_search, MAX_SEARCH_VERTICES};
pub use dot::{export_dot, Overlays};
pub use fuzz::{run_fuzz, FuzzReport, Suite, SuiteOutcome};
pub use generate::{case_seed, generate_case, generate_complex, Expectation, Family, FuzzCase, Generated};
pub use report::{
    certificate_to_json, classification_to_json, cube_to_json, outcome_to_json, triple_to_json, word_to_json,
};
pub use schema::{
    hyperplane_from_json, hyperplane_list_from_json, hyperplane_to_json, vertex_from_arg, vertex_from_json,
    vertex_to_json, ActionDocument, ComplexDocument, GeneratorDocument,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("malformed JSON in {0}")]
    Json(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("automorphism search takes at most {max} vertices, got {found}")]
    SizeExceeded { found: usize, max: usize },
    #[error("generation failed: {0}")]
    GenerationFailed(String),
    #[error("invalid arguments: {0}")]
    InvalidArguments(String),
}
