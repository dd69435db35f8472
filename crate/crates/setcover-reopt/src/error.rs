use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Toolkit-wide error type.
///
/// [`Error::code`] yields the stable one-line code the CLI prints on the
/// diagnostic stream; domain errors map to exit code 1.
#[derive(Debug, Error)]
pub enum Error {
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("invalid rational `{0}`")]
    InvalidRational(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid name `{name}`: {reason}")]
    InvalidName { name: String, reason: String },
    #[error("unknown set `{0}`")]
    UnknownSet(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("too large for the exact solver: {0}")]
    TooLarge(String),
    #[error("time limit exceeded")]
    TimeLimit,
    #[error("quality claim refuted: {0}")]
    QualityRefuted(String),
    #[error("invalid gadget run: {0}")]
    InvalidRun(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Overflow(_) => "overflow",
            Error::InvalidRational(_) => "bad-rational",
            Error::Parse { .. } => "parse",
            Error::InvalidName { .. } => "bad-name",
            Error::UnknownSet(_) => "unknown-set",
            Error::UnknownElement(_) => "unknown-element",
            Error::InvalidInstance(_) => "invalid-instance",
            Error::Infeasible(_) => "infeasible",
            Error::Precondition(_) => "precondition",
            Error::TooLarge(_) => "too-large",
            Error::TimeLimit => "time-limit",
            Error::QualityRefuted(_) => "quality-refuted",
            Error::InvalidRun(_) => "invalid-run",
            Error::Unsupported(_) => "unsupported",
            Error::Io(_) => "io",
        }
    }
}
