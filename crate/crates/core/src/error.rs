use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{0} is a limit ordinal and has no predecessor")]
    NoPredecessor(String),

    #[error("enumeration bound exceeded: need {needed}, bound is {bound}")]
    BoundExceeded { needed: String, bound: usize },

    #[error("element index {index} out of range for a poset of {n} elements")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("order relation has a cycle through {0} and {1}")]
    Cycle(usize, usize),

    #[error("poset is empty")]
    EmptyPoset,

    #[error("sum with a left operand that has no maximum")]
    SumWithoutMaximum,

    #[error("expression contains the infinite chain {0}")]
    InfiniteChain(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid ring element: {0}")]
    InvalidElement(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("map is not well defined: relation column {column} is not sent into the target relations")]
    NotWellDefined { column: usize },

    #[error("not a short exact sequence: {0}")]
    NotExact(String),

    #[error("module is infinite")]
    InfiniteModule,

    #[error("not a complex: composition at index {index} is nonzero")]
    NotAComplex { index: usize },

    #[error("index {index} out of range for a complex of length {len}")]
    ComplexIndex { index: usize, len: usize },

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },

    #[error("invalid input: {0}")]
    Invalid(String),
}
