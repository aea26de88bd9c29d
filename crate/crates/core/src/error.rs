use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed number: {0}")]
    MalformedNumber(String),
    #[error("coordinate outside unit square: ({0}, {1})")]
    OutsideUnitSquare(String, String),
    #[error("duplicate point: ({0}, {1})")]
    DuplicatePoint(String, String),
    #[error("origin required")]
    OriginRequired,
    #[error("line {line}: {source}")]
    Line {
        line: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("malformed line {line}: {text:?}")]
    MalformedLine { line: usize, text: String },
    #[error("invalid rectangle: {0}")]
    InvalidRect(String),
    #[error("instance too large: {points} points, limit {limit}")]
    TooLarge { points: usize, limit: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("not a permutation of 1..{0}")]
    NotPermutation(usize),
    #[error("rounding collision at index {0}")]
    RoundingCollision(usize),
    #[error("premise not met: {0}")]
    PremiseNotMet(String),
    #[error("node budget exhausted before optimality was proven")]
    BudgetExhausted,
    #[error("inconsistent overlay: {0}")]
    InconsistentOverlay(String),
}

impl Error {
    pub(crate) fn at_line(self, line: usize) -> Error {
        Error::Line {
            line,
            source: Box::new(self),
        }
    }

    /// Unwraps line context, returning the underlying error.
    pub fn root(&self) -> &Error {
        match self {
            Error::Line { source, .. } => source.root(),
            e => e,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
