use thiserror::Error;

use crate::complex::Face;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed face {0:?}: vertices must be strictly increasing and non-empty")]
    MalformedFace(Vec<u32>),
    #[error("face {0} is not in the complex")]
    MissingFace(Face),
    #[error("face {0} is not free")]
    NotFree(Face),
    #[error("certificate step {index} is invalid: {reason}")]
    InvalidStep { index: usize, reason: String },
    #[error("certificate ends at a complex different from its target")]
    TargetMismatch,
    #[error("L is not a subcomplex of M (face {0})")]
    NotSubcomplex(Face),
    #[error("constraint face {0} is removed by the collapse of L")]
    ConstraintViolated(Face),
    #[error("label {0}: {1}")]
    BadLabel(String, String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid formula: {0}")]
    Formula(String),
    #[error("assignment does not satisfy the formula")]
    Unsatisfied,
    #[error("grid complex is inconsistent: {0}")]
    Grid(String),
    #[error("gadget contract violated: {0}")]
    Contract(String),
    #[error("{0}")]
    Other(String),
}
