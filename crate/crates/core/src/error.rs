use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot access {}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("duplicate document id {0}")]
    DuplicateDocId(u32),

    #[error("collection is empty")]
    EmptyCollection,

    #[error("line {line}: reference to unknown node `{id}`")]
    DanglingReference { line: usize, id: String },

    #[error("unsupported index header `{0}`")]
    VersionMismatch(String),

    #[error("document {doc}: terms {terms:?} cannot be made to resolve to `{rc}`")]
    Unresolvable { doc: u32, rc: String, terms: Vec<String> },

    #[error("query is empty after normalization")]
    EmptyQuery,

    #[error("query mixes `{0}` and `{1}`; only one operator kind per query is supported")]
    MixedOperators(&'static str, &'static str),

    #[error("NOT query needs at least one positive term")]
    NotWithoutBase,

    #[error("idf undefined for df = 0")]
    DivisionByZeroDf,

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("precision undefined: nothing retrieved")]
    EmptyRetrieved,

    #[error("recall undefined: no relevant documents")]
    EmptyRelevant,

    #[error("no relevance judgments for query `{0}`")]
    MissingQrel(String),

    #[error("no runs to report")]
    EmptyReport,
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
