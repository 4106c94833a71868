use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate event {0}")]
    DuplicateEvent(String),
    #[error("monomial {monomial} references undeclared event {event}")]
    UnknownEventInMonomial { monomial: String, event: String },
    #[error("duplicate monomial {0}")]
    DuplicateMonomial(String),
    #[error("scenario has {events} events, limit is {limit}")]
    ScenarioTooLarge { events: usize, limit: usize },
    #[error("scenario declares no events")]
    NoEvents,
    #[error("empty input")]
    EmptyInput,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("resource exhausted: {0}")]
    ResourceExhausted(String),
    #[error("integer overflow in exact arithmetic ({0})")]
    Overflow(&'static str),
    #[error("inequality has an all-zero coefficient vector")]
    ZeroInequality,
    #[error("complementing {event} needs monomial {missing}, which is not in the basis")]
    MissingCompanionMonomial { event: String, missing: String },
    #[error("permutation maps monomial {0} outside the basis")]
    BasisNotClosed(String),
    #[error("model does not define a probability for {0}")]
    UnsupportedMonomial(String),
    #[error("no probability for monomial {0}")]
    MissingProbability(String),
    #[error("unknown preset {0}")]
    UnknownPreset(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
