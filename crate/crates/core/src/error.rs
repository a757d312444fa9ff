use thiserror::Error;

/// Errors surfaced by the exact-arithmetic and verification layers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("modulus {0} must be odd")]
    EvenModulus(u64),

    #[error("modulus {0} must be at least 3")]
    ModulusTooSmall(u64),

    #[error("modulus {0} is not squarefree; no real primitive character exists")]
    NotSquarefree(u64),

    #[error("hypothesis violation: {0}")]
    Hypothesis(String),

    #[error("cyclotomic context mismatch: order {0} vs order {1}")]
    ContextMismatch(u64, u64),

    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(u64),

    #[error("field order {requested} exceeds the configured cap {cap}")]
    FieldOrderExceeded { requested: u64, cap: u64 },

    #[error("{divisor} does not divide the field order {order}")]
    OrderNotDivisible { divisor: u64, order: u64 },

    #[error("element is not rational")]
    NotRational,

    #[error("element is not a rational multiple of sqrt({0})")]
    NotSqrtMultiple(u64),

    #[error("element does not lie in Q + Q*sqrt({0})")]
    NotInQuadraticField(u64),

    #[error("unknown sum family tag `{0}`")]
    UnknownFamily(String),

    #[error("family {family} expects parameters ({expected}), got {got} value(s)")]
    ParamArity {
        family: String,
        expected: String,
        got: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors caused by the caller's input rather than a defect in
    /// the arithmetic itself (CLI maps these to exit code 2).
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}
