use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported dimension n = {0}")]
    UnsupportedDimension(usize),

    #[error("polynomial is not in the minor span; offending monomials: {}", .monomials.join(", "))]
    NotInSpan { monomials: Vec<String> },

    #[error("zero polynomial has no root pattern")]
    ZeroPolynomial,

    #[error("chart change produced the zero polynomial")]
    DegenerateChart,

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("no rational sample point found within {attempts} attempts")]
    NoSamplePoint { attempts: usize },

    #[error("pullback of the form vanishes identically")]
    ZeroPullback,

    #[error("B_omega is not proportional to the symplectic form")]
    ProportionalityViolation,

    #[error("travelling-wave substitution vanishes identically")]
    ZeroReduction,

    #[error("equation is not in the E+F space")]
    NotInEF,

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("equation must not be the zero polynomial")]
    ZeroEquation,

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed equation file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
