use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("self-loop on `{0}`")]
    SelfLoop(String),
    #[error("c-edges are not transitive: ({0},{1}) and ({1},{2}) but not ({0},{2})")]
    EcProperty(String, String, String),
    #[error("empty graph")]
    EmptyGraph,
    #[error("enumeration bound {requested} exceeds cap {cap}")]
    AboveCap { requested: usize, cap: usize },
    #[error("words live over different graphs")]
    GraphMismatch,
    #[error("operation undefined on the trivial word")]
    TrivialWord,
    #[error("input word is not geodesic")]
    NotGeodesic,
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("shape violation: {0}")]
    Shape(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
