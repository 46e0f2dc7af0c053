use thiserror::Error;

/// Errors raised by the kernel. Variants name the offending input where one exists.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scalars from different fields were mixed ({0} vs {1})")]
    MixedFields(String, String),
    #[error("ambient dimension is zero or could not be inferred")]
    EmptyAmbient,
    #[error("ambient dimension mismatch: expected {expected}, got {got}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0} is too large (must be below 2^31)")]
    ModulusTooLarge(u64),
    #[error("characteristic 2 is not supported for Leibniz algebras")]
    FieldCharTwo,
    #[error("basis index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("duplicate bracket entry [e{0}, e{1}]")]
    DuplicateBracket(usize, usize),
    #[error("fields differ: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,
    #[error("subspace is not closed under the bracket")]
    NotASubalgebra,
    #[error("algebra '{0}' satisfies neither the left nor the right Leibniz identity")]
    NoConvention(String),
    #[error("operation needs a prime field, got {0}")]
    NotFiniteField(String),
    #[error("enumeration estimate {estimate} exceeds guard {guard}")]
    EnumerationTooLarge { estimate: u128, guard: u64 },
    #[error("ideal must be proper")]
    NotProper,
    #[error("chain term {0} is not a two-sided ideal")]
    ChainNotAnIdeal(usize),
    #[error("chain term {0} is not contained in term {prev}", prev = .0 - 1)]
    NotDescending(usize),
    #[error("unknown lazy family '{0}'")]
    UnknownFamily(String),
    #[error("bad family parameters: {0}")]
    BadParams(String),
    #[error("bad depth {depth}: {reason}")]
    BadDepth { depth: usize, reason: String },
    #[error("unknown chain rule '{rule}' for family '{family}'")]
    UnknownRule { family: String, rule: String },
    #[error("rule application leaves the index domain: {0}")]
    OutsideIndexDomain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
