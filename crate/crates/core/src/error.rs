use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u128),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("field order overflows the 127-bit exponent budget")]
    OrderOverflow,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    CtxMismatch,
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("{ell} does not divide the multiplicative group order {group_order}")]
    LNotDividingGroupOrder { ell: u128, group_order: u128 },
    #[error("no element of order {0} exists in this field")]
    NoSuchRoot(u128),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("could not factor {0} within the factorization budget")]
    FactorizationBudgetExceeded(u128),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("characteristic 2 is not supported for this operation")]
    EvenCharacteristic,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("root of unity must be nonzero")]
    ZeroZeta,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("seed vanishes at the pole sigma(infinity)")]
    PoleAtSeed,
    #[error("{0} is a square in the base field")]
    NotNonSquare(String),
    #[error("x^2 - x - c is reducible for c = {0}")]
    ReducibleModulus(String),
    #[error("internal error: coefficients failed to descend to the base field")]
    InternalDescentFailure,
    #[error("iterate {m} vanishes at the pole sigma(infinity)")]
    PoleAtIterate { m: usize },
    #[error("iterate {m} has degree {got}, expected {expected}")]
    DegreeDropped {
        m: usize,
        expected: usize,
        got: usize,
    },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
