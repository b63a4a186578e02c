use crate::flows::FlowError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error(transparent)]
    Flow(#[from] FlowError),

    /// A constructive step could not be carried out. `case` is the trace of
    /// case labels that led to the failing step.
    #[error("tree construction failed in {case}: {reason}")]
    Construction { case: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_owned(),
            reason: reason.into(),
        }
    }

    pub(crate) fn construction(case: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Construction {
            case: case.into(),
            reason: reason.into(),
        }
    }
}
