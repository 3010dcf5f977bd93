use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid automaton: {0}")]
    InvalidDfa(String),
    #[error("nondeterministic transition from state {state} on symbol `{symbol}`")]
    NonDeterministic { state: usize, symbol: String },
    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),
    #[error("alphabets differ: {0}")]
    AlphabetMismatch(String),
    #[error("invalid language family parameters: {0}")]
    InvalidFamily(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("edge {0} carries no orientation")]
    MissingOrientation(usize),
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error("invalid face census: {0}")]
    InvalidCensus(String),
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("invalid emulator: {0}")]
    InvalidEmulator(String),
    #[error("cannot lift symbol `{symbol}` at total vertex {vertex}: no arc into the required fiber")]
    Lift { vertex: usize, symbol: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parameter out of range: {0}")]
    Domain(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
