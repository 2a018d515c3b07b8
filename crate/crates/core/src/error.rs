use thiserror::Error;

/// Errors raised by the geometric and measure-theoretic operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("unsupported shape: {0}")]
    Shape(String),

    #[error("measurable space mismatch: {0}")]
    Space(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("{what} of size {size} exceeds the cap {cap}")]
    Cap { what: &'static str, size: usize, cap: usize },

    #[error("direction set cannot control the multimeasure: {0}")]
    Control(String),

    #[error("not absolutely continuous at atom {atom}")]
    NotAbsolutelyContinuous { atom: usize },

    #[error("pair is not consistent; witness atoms {atoms:?}")]
    Consistency { atoms: Vec<usize> },

    #[error("no derivative at atom {atom} ({reason}); best coefficient {best_c}, residual {residual}")]
    NoDerivative {
        atom: usize,
        best_c: f64,
        residual: f64,
        reason: String,
    },

    #[error("event table is not additive: M(A ∪ B) ≠ M(A) ⊕ M(B) for A = {a:?}, B = {b:?}; support gap {gap} at {direction:?}")]
    Additivity {
        a: Vec<usize>,
        b: Vec<usize>,
        direction: Vec<f64>,
        gap: f64,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
