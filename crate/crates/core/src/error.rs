use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed number literal `{0}`")]
    MalformedNumber(String),
    #[error("zero is not an admissible element")]
    Zero,
    #[error("division by zero in literal `{0}`")]
    ZeroDenominator(String),
    #[error("cannot factor `{0}`: it has a prime factor beyond the 64-bit trial-division range")]
    Unfactorable(String),
    #[error("operation requires a nonempty set")]
    EmptySet,
    #[error("{0} is already a member of the set")]
    AlreadyMember(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} already divides an element of the set")]
    PrimePresent(u64),
    #[error("invalid base {0}: must be positive and different from 1")]
    InvalidBase(String),
    #[error("{element} is not an integer power of {base}")]
    NotAPower { element: String, base: String },
    #[error("element {0} is not positive")]
    NonPositive(String),
    #[error("invalid multiplier ratio {0}: absolute value must be at least 1 and the ratio must differ from 1")]
    InvalidRatio(String),
    #[error("decoded multiplier sequence repeats element {0}")]
    DuplicateElement(String),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("supplied level {supplied} disagrees with recomputed k-special level {actual}")]
    LevelMismatch { supplied: u64, actual: u64 },
    #[error("sequence is not strictly increasing in absolute value at index {0}")]
    NotIncreasing(usize),
    #[error("set is not MPTQ")]
    NotMptq,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("checkpoint does not match this search: {0}")]
    CheckpointMismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
