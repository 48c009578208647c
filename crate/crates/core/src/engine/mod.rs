//! λ-bracket calculus on normal-form states.

mod calculus;
pub mod presentation;
pub mod properties;
pub mod state;
pub mod syntax;

pub use calculus::Engine;
pub use presentation::{GeneratorKind, GeneratorSpec, Lattice, Parity, Presentation, PresentationBuilder, Weight};
pub use state::{Factor, LambdaPoly, LatVec, Monomial, State};
pub use syntax::{parse, print, print_lambda, Expr};

use crate::scalars::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("unknown identifier `{0}`")]
    UnknownGenerator(String),
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{0}")]
    NonOrthogonal(String),
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
