use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic not prime: {0}")]
    CharacteristicNotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field too large: {0}")]
    FieldTooLarge(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch")]
    FieldMismatch,
    #[error("μ_{0} not in field")]
    RootsOfUnityMissing(u64),
    #[error("p equals characteristic (p = {0})")]
    PEqualsCharacteristic(u64),
    #[error("incompatible fields: {0}")]
    IncompatibleFields(String),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("no degree-1 infinite place guaranteed: gcd(e, deg f) = {0}")]
    NoRationalInfinitePlace(u64),
    #[error("singular model: f is not squarefree")]
    SingularModel,
    #[error("wildly ramified model unsupported: characteristic divides e")]
    WildlyRamified,
    #[error("pole order of zero undefined")]
    PoleOrderOfZero,
    #[error("curve mismatch")]
    CurveMismatch,
    #[error("extension too large: {size} elements exceeds budget {budget}")]
    ExtensionTooLarge { size: u128, budget: u64 },
    #[error("counts violate functional equation: {0}")]
    InconsistentCounts(String),
    #[error("witness must be non-constant")]
    ConstantWitness,
    #[error("search needs {candidates} candidates, budget is {budget}")]
    BudgetExceeded { candidates: u128, budget: u64 },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Error {
        Error::Parse { pos, msg: msg.into() }
    }
}
