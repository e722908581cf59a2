use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Error class of a failure, used by the CLI to choose an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Parameter,
    Compute,
    Io,
}

impl ErrorClass {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorClass::Parse => 2,
            ErrorClass::Parameter => 3,
            ErrorClass::Compute => 4,
            ErrorClass::Io => 5,
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("line {line}: self-loop on node {node}")]
    SelfLoop { line: usize, node: usize },

    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("node {0} is not present in the graph")]
    NodeAbsent(usize),

    #[error("metrics are undefined for graphs with fewer than 2 nodes (got {0})")]
    UndefinedMetrics(usize),

    #[error("elasticity is undefined: initial throughput is zero")]
    UndefinedElasticity,

    #[error("graph too large for the concurrent-flow LP: {0}")]
    LpTooLarge(String),

    #[error("linear program failed: {0}")]
    Lp(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse { .. } | Error::SelfLoop { .. } | Error::DuplicateEdge { .. } => {
                ErrorClass::Parse
            }
            Error::Parameter(_) | Error::NodeAbsent(_) => ErrorClass::Parameter,
            Error::UndefinedMetrics(_)
            | Error::UndefinedElasticity
            | Error::LpTooLarge(_)
            | Error::Lp(_) => ErrorClass::Compute,
            Error::Io(_) => ErrorClass::Io,
        }
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
