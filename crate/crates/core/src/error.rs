use thiserror::Error;

use crate::elliptic::GreenSolveReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("lattice axis of length {0} is too small (need at least 2)")]
    DegenerateLattice(usize),

    #[error("degree error: {0}")]
    DegreeError(String),

    #[error("matrix is not in su(n) (defect {defect:e})")]
    NotInAlgebra { defect: f64 },

    #[error("conjugate gradients did not converge: {0:?}")]
    ConvergenceError(GreenSolveReport),

    #[error("covariant Laplacian has a numerical kernel (reducible connection): {0:?}")]
    IrreducibilityError(GreenSolveReport),

    #[error("constraint violated: {what} residual {residual:e} exceeds {limit:e}")]
    ConstraintViolation { what: &'static str, residual: f64, limit: f64 },

    #[error("non-finite state at step {step}")]
    NumericalBlowup { step: usize },

    #[error("snapshot format error at byte {offset}: {msg}")]
    FormatError { offset: usize, msg: String },

    #[error("config line {line}: key `{key}`: {msg}")]
    Config { line: usize, key: String, msg: String },

    #[error("invalid value for `{key}`: {msg}")]
    Validation { key: String, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
