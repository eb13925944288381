use thiserror::Error;

/// Errors surfaced by the baseband pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied value violates an operation precondition.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// Buffers or sequences have incompatible dimensions or rates.
    #[error("shape mismatch: {0}")]
    Shape(String),
    /// Unknown PRN or unsupported channel in the code registry.
    #[error("code registry: {0}")]
    Registry(String),
    /// A configuration invariant does not hold.
    #[error("configuration: {0}")]
    Config(String),
    /// Operation requires state that was not retained or established.
    #[error("state: {0}")]
    State(String),
    /// Input lies outside the mathematical domain of a closed form.
    #[error("domain: {0}")]
    Domain(String),
    /// A numerical routine failed to converge or degenerated.
    #[error("numerical: {0}")]
    Numerical(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    /// Malformed on-disk data (bad sidecar, truncated sample file, ...).
    #[error("format: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
