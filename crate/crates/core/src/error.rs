use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid quantum numbers (n={n}, l={l}, m={m})")]
    InvalidQuantumNumbers { n: u32, l: u32, m: i32 },

    #[error("square root of negative rational {0}")]
    NegativeRadicand(String),

    #[error("integral of r^k p(r) e^(-a r) diverges for a = {0}")]
    DivergentIntegral(String),

    /// An exact invariant of an assembled object does not hold.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("operator {block} - z is not safely invertible at z = {z} (condition estimate {condition:.3e})")]
    Singular {
        block: &'static str,
        z: String,
        condition: f64,
    },

    #[error("{what} did not converge after {iterations} iterations: {trace}")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
        trace: String,
    },

    #[error("line {line}: {message}")]
    Config { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
