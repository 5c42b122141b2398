use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact division: divisor does not divide the dividend")]
    InexactDivision,
    #[error("both operators are zero")]
    BothZero,
    #[error("empty input")]
    EmptyInput,
    #[error("expected a non-constant differential polynomial")]
    ConstantInput,
    #[error("not linear in the derivatives of {0}")]
    NotLinear(String),
    #[error("{0} does not occur")]
    VariableAbsent(String),
    #[error("fraction is not reduced: numerator and denominator are proportional")]
    NotReduced,
    #[error("degenerate Mobius transformation: ad - bc = 0")]
    DegenerateMobius,
    #[error("improper parametrization: {0}")]
    Improper(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parametrization does not lie on the curve")]
    NotOnCurve,
    #[error("syntax error at offset {offset}: {message} (near `{token}`)")]
    Syntax {
        offset: usize,
        token: String,
        message: String,
    },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
