use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed symbol: {0}")]
    MalformedSymbol(String),

    #[error("Fourier index {index} exceeds the configured maximum {max}")]
    IndexOutOfRange { index: i64, max: i64 },

    #[error("symbol is not Fredholm: |a| = {modulus:.3e} below margin {margin:.3e} at angle {angle:.6}")]
    NotFredholm { modulus: f64, margin: f64, angle: f64 },

    #[error("winding number under-resolved: argument step {step:.3} rad at angle {angle:.6}; increase samples")]
    UnderResolved { step: f64, angle: f64 },

    #[error("invalid self-map: |phi(0)| = {modulus} is not below 1")]
    InvalidSelfMap { modulus: f64 },

    #[error("quadrature did not reach tolerance {tolerance:.1e}: achieved {achieved:.3e} with {nodes} nodes")]
    QuadratureNotConverged { achieved: f64, tolerance: f64, nodes: usize },

    #[error("matrix decomposition failed: {0}")]
    Decomposition(String),

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

impl Error {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse { input: input.to_string(), reason: reason.into() }
    }
}
