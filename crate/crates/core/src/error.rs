use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("leading coefficient of divisor is not a unit")]
    ZeroDivisor,
    #[error("zero element has no degree")]
    ZeroElement,
    #[error("degree too small: {0}")]
    DegreeTooSmall(String),
    #[error("q is not quasi-monic in y")]
    NotQuasiMonic,
    #[error("presentation is not in reduced form")]
    NotReducedForm,
    #[error("inexact division")]
    InexactDivision,
    #[error("(e, u) is not a point of the diagonal group")]
    NotInGroup,
    #[error("not a derivation, Leibniz residual {residual}")]
    NotADerivation { residual: String },
    #[error("shape data does not extend to a derivation")]
    NotExtendable,
    #[error("derivation is locally nilpotent")]
    IsLocallyNilpotent,
    #[error("a and g are both zero")]
    BothZero,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("residual constraints not resolved: {0}")]
    UnsupportedResidual(String),
    #[error("internal consistency check failed: {0}")]
    InvariantViolated(String),
    #[error("parse error at {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("presentations differ")]
    PresentationMismatch,
}

impl Error {
    /// Stable identifier used in reports.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::ZeroDivisor => "ZeroDivisor",
            Error::ZeroElement => "ZeroElement",
            Error::DegreeTooSmall(_) => "DegreeTooSmall",
            Error::NotQuasiMonic => "NotQuasiMonic",
            Error::NotReducedForm => "NotReducedForm",
            Error::InexactDivision => "InexactDivision",
            Error::NotInGroup => "NotInGroup",
            Error::NotADerivation { .. } => "NotADerivation",
            Error::NotExtendable => "NotExtendable",
            Error::IsLocallyNilpotent => "IsLocallyNilpotent",
            Error::BothZero => "BothZero",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::UnsupportedResidual(_) => "UnsupportedResidual",
            Error::InvariantViolated(_) => "InvariantViolated",
            Error::Parse { .. } => "ParseError",
            Error::PresentationMismatch => "PresentationMismatch",
        }
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
