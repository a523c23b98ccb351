use thiserror::Error;
use zdd::ZddError;

/// A problem in a circuit or device description, with its 1-based line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown qubit `{0}`")]
    UnknownQubit(String),
    #[error("qubit `{0}` declared twice")]
    DuplicateQubit(String),
    #[error("gate repeats operand `{0}`")]
    RepeatedOperand(String),
    #[error("self-loop on `{0}`")]
    SelfLoop(String),
    #[error("{0}")]
    Malformed(String),
}

impl ParseError {
    pub(crate) fn new(line: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, kind }
    }

    pub(crate) fn malformed(line: usize, msg: impl Into<String>) -> Self {
        ParseError::new(line, ParseErrorKind::Malformed(msg.into()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("circuit needs {pseudo} qubits but the device only has {physical}")]
    Infeasible { pseudo: usize, physical: usize },

    #[error("two-qubit gate #{index} (circuit position {position}) has no placement on any device edge")]
    UnmappableGate { index: usize, position: usize },

    #[error("mapping engine has {actual} variables, expected {expected}")]
    UniverseMismatch { expected: u32, actual: u32 },

    #[error("gate #{0} is not a two-qubit gate")]
    NotTwoQubit(usize),

    #[error("SWAP layer uses physical qubit {0} more than once")]
    OverlappingLayer(usize),

    #[error("invalid score weights: {0}")]
    InvalidWeights(String),

    #[error(transparent)]
    Zdd(#[from] ZddError),
}
