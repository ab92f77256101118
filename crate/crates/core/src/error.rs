use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed braid word: {0}")]
    Parse(String),

    #[error("a braid needs at least one strand")]
    NoStrands,

    #[error("letter {letter} out of range for a {n_strands}-strand braid (need 1 <= |k| <= {max})", max = .n_strands - 1)]
    LetterOutOfRange { letter: i32, n_strands: usize },

    #[error("{crossings} crossings exceeds the configured cap of {cap} (raise it with --max-crossings)")]
    CapExceeded { crossings: usize, cap: usize },

    #[error("cube vertex has {got} bits but the diagram has {expected} crossings")]
    VertexLength { got: usize, expected: usize },

    #[error("a resolution with {0} circles cannot be enumerated (limit is 63)")]
    TooManyCircles(usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("differentials do not compose to zero: {0}")]
    NotAComplex(String),

    #[error("chain map contract violated: {0}")]
    ChainMap(String),

    #[error("basepoint index {index} out of range 1..={n}")]
    BasepointOutOfRange { index: usize, n: usize },

    #[error("dense oracle refuses {0} generators (limit 4096)")]
    OracleTooLarge(usize),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}
