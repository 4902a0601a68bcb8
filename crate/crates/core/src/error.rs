use thiserror::Error;

/// Errors produced by the derivative calculus, objectives, solvers and checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// `alpha + beta` is exactly zero; the closed form has a pole there and the
    /// caller must take the zero branch instead.
    #[error("degenerate sum: alpha + beta = 0 (alpha = {alpha}, beta = {beta})")]
    DegenerateSum { alpha: f64, beta: f64 },

    /// A point (or a finite-difference probe) left the open domain, or the
    /// objective returned a non-finite value.
    #[error("point {x} is outside the domain ({lo}, {hi}) or evaluates to a non-finite value")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("bad run configuration: {0}")]
    BadConfig(String),

    #[error("trace does not fit this check: {0}")]
    BadTrace(String),

    #[error("unknown objective `{0}`")]
    UnknownObjective(String),
}

pub type Result<T> = std::result::Result<T, Error>;
