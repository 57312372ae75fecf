//! Text formats: the polynomial grammar, derivation spec files and
//! machine-readable reports.

mod format;
mod parse;
mod report;
mod spec;

use thiserror::Error;

use crate::poly::PolyError;

pub use format::format_poly;
pub use parse::parse_poly;
pub use report::{emit_report, Format, Report};
pub use report::{CertifyOutcome, GeneratorOutcome, PolyReport};
pub use spec::{parse_derivation_spec, render_derivation_spec, DerivationSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{line}:{col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("{line}:{col}: unknown variable `{name}`")]
    UnknownVariable {
        name: String,
        line: usize,
        col: usize,
    },
    #[error("{line}:{col}: negative exponent")]
    NegativeExponent { line: usize, col: usize },
    #[error("{line}:{col}: exponent too large")]
    ExponentOverflow { line: usize, col: usize },
    #[error("line {line}: {msg}")]
    Spec { line: usize, msg: String },
    #[error("missing image line `d({0}) = ...`")]
    MissingImage(String),
    #[error(transparent)]
    Context(#[from] PolyError),
}
