use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("modulus mismatch: {left} vs {right}")]
    Modulus { left: u32, right: u32 },

    #[error("{0} is not a supported prime modulus (need a prime with 2 <= p < 65536)")]
    NotPrime(u64),

    #[error("enumeration of {requested} elements exceeds the cap of {cap}")]
    SizeCap { requested: u128, cap: u64 },

    #[error("invalid input: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("legendre prime pool exhausted (bound {bound}); enlarge the pool and retry")]
    PoolExhausted { bound: u64 },

    #[error("rejection sampler exceeded {cap} proposals from state {state}")]
    SamplerDiagnostics { state: u64, cap: u64 },

    #[error("numerical certification failed: {0}")]
    Certification(String),

    #[error("io: {0}")]
    Io(String),
}

impl Error {
    /// True for the cap/size family, which the CLI maps to its own exit code.
    pub fn is_size_error(&self) -> bool {
        matches!(self, Error::SizeCap { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
