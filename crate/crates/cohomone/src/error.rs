use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("degenerate metric: {0}")]
    DegenerateMetric(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("generation failed: {0}")]
    Generation(String),
    #[error("integration failed: {0}")]
    Integration(String),
    #[error("configuration error: {0}")]
    Configuration(String),
    #[error("class-one hypotheses not satisfied: {0}")]
    HypothesisFailure(String),
    #[error("profile format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
