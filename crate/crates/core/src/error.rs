use thiserror::Error;

/// Errors raised by parsing, validation and the algorithms of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("no valid step index for state {state} and word {word} at (k,l)=({k},{l})")]
    NoStepIndex {
        k: usize,
        l: usize,
        state: String,
        word: String,
    },

    #[error("relation is not right invariant: {0}")]
    NotRightInvariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
