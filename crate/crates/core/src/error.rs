use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("letter {letter} is not in the alphabet {alphabet}")]
    Alphabet { letter: String, alphabet: String },

    #[error("the stable letter s has no exponent sum in F(a,b)xF(c,d)")]
    StableLetter,

    #[error("not a K-path: {0}")]
    NotKPath(String),

    #[error("invalid edge path: {0}")]
    Path(String),

    #[error("vertex budget of {budget} exceeded")]
    Budget { budget: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("malformed diagram: {0}")]
    Diagram(String),

    #[error("no detour found: {0}")]
    Detour(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(what: &'static str, input: impl Into<String>) -> Self {
        Error::Parse {
            what,
            input: input.into(),
        }
    }
}
