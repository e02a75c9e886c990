use thiserror::Error;

/// Errors produced while reading automata or running the decision procedure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("unknown letter `{0}`")]
    UnknownLetter(String),

    #[error("the two automata are not over the same alphabet")]
    AlphabetMismatch,

    #[error("stem length k = {0} is not supported; k must be at least 1")]
    UnsupportedStemLength(usize),

    #[error("refusing to enumerate {candidates} candidate words (limit {limit}); pass --force to override")]
    TooManyCandidates { candidates: u128, limit: u128 },

    /// A structural property that the construction guarantees did not hold.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
