use thiserror::Error;

/// Errors raised by the algebraic kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid modulus {0}: must be a prime")]
    InvalidModulus(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not invertible in characteristic {1}")]
    NotInvertible(String, u64),

    #[error("requires characteristic zero (field is GF({0}))")]
    NeedsCharZero(u64),

    #[error("order {index} exceeds truncation order {order}")]
    OrderExceeded { index: usize, order: usize },

    #[error("Hasse-Schmidt axiom violated: {0}")]
    HasseSchmidtAxiom(String),

    #[error("derivation does not descend: image of generator {0} is not in the relations ideal")]
    DerivationDoesNotDescend(String),

    #[error("ideal {ideal} does not contain the relations (missing {missing})")]
    MissingRelations { ideal: String, missing: String },

    #[error("open set D({0}) is empty")]
    EmptyOpen(String),

    #[error("the unit ideal has no trajectory")]
    UnitIdeal,

    #[error("jet variable `{0}` is at the truncation order and cannot be differentiated")]
    JetOrderExceeded(String),

    #[error("ring map is not differential: {0}")]
    NotDifferential(String),

    #[error("sections incompatible on patches ({0}, {1})")]
    IncompatiblePatches(usize, usize),

    #[error("fraction {0} is not constant")]
    NotConstant(String),

    #[error("identity check failed: {0}")]
    IdentityFailed(String),

    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
