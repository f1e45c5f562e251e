use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A caller-supplied argument violates an operation's precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Evaluation point outside the open unit disk.
    #[error("point {re} + {im}i lies outside the open unit disk")]
    OutsideDisk { re: f64, im: f64 },

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("coefficient index (n={n}, k={k}) out of range")]
    IndexOutOfRange { n: usize, k: usize },

    #[error("duplicate coefficient index (n={n}, k={k})")]
    DuplicateIndex { n: usize, k: usize },

    /// Grid does not match the normalization required by the selected case.
    #[error("normalization mismatch: {0}")]
    Normalization(String),

    /// M is below the floor required by the selected theorem.
    #[error("M = {m} is below the required floor {floor}")]
    BelowFloor { m: f64, floor: f64 },

    #[error("no sign change found in [{lo}, {hi}]")]
    NoRoot { lo: f64, hi: f64 },

    #[error("function vanishes at the left endpoint {lo}")]
    DegenerateLeftEndpoint { lo: f64 },

    /// The schlicht-disk construction needs 0 < sigma <= 1.
    #[error("sigma = {0} lies outside (0, 1]")]
    SigmaOutOfRange(f64),

    #[error("grid file: {0}")]
    Format(String),
}

impl Error {
    /// True for errors that come from solving rather than from bad input.
    pub fn is_domain_failure(&self) -> bool {
        matches!(
            self,
            Error::NoRoot { .. } | Error::DegenerateLeftEndpoint { .. } | Error::SigmaOutOfRange(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
