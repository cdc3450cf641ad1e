use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("polynomial is not divisible by s")]
    NotDivisible,

    #[error("form is not homogeneous")]
    NotHomogeneous,

    #[error("the zero polynomial has no homogeneous degree")]
    ZeroPolynomial,

    #[error("coefficient degree {degree} exceeds the target degree {target}")]
    DegreeTooHigh { degree: u32, target: u32 },

    #[error("form degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("form is not in the range of the Hodge star on polynomial forms")]
    NotInRange,

    #[error("result does not have polynomial coefficients; input is not in the claimed space")]
    NotPolynomialResult,

    #[error("operation requires polynomial coefficients, found an s-localized form")]
    NotPolynomial,

    #[error("parameter out of range: {0}")]
    ParameterRange(String),

    #[error("P^- spaces are not constructed for r = 0")]
    ExcludedR0,

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("unknown variable `{name}` at byte {position}")]
    UnknownVariable { name: String, position: usize },
}

impl Error {
    pub(crate) fn range(msg: impl Into<String>) -> Self {
        Error::ParameterRange(msg.into())
    }

    /// True for errors raised by the expression parser.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::UnknownVariable { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
