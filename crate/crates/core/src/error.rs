use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("inadmissible Cartan type {family}_{rank}: {reason}")]
    InadmissibleType {
        family: char,
        rank: u32,
        reason: String,
    },

    #[error("unknown Cartan family '{0}' (expected one of A, B, C, D, E, F, G)")]
    UnknownFamily(String),

    #[error("invalid Cartan matrix: {0}")]
    InvalidCartanMatrix(String),

    #[error("malformed field profile '{text}': {reason}")]
    MalformedProfile { text: String, reason: String },

    #[error("signature mismatch: degree {degree} != r1 + 2*r2 = {r1} + 2*{r2}")]
    SignatureMismatch { degree: u32, r1: u32, r2: u32 },

    #[error("zero is not allowed here")]
    ZeroInput,

    #[error("invalid rational '{0}'")]
    InvalidRational(String),

    #[error("place {0} is not a place of Q")]
    NotRationalPlace(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("empty quadratic form")]
    EmptyForm,

    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("no witness: {0}")]
    NoWitness(String),

    #[error("malformed table line {line}: {reason}")]
    MalformedTable { line: usize, reason: String },

    #[error("cross-validation precondition failed: {0}")]
    Precondition(String),

    #[error("overflow in exact integer arithmetic")]
    Overflow,
}
