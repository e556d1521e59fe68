use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: undeclared variable `{name}`")]
    UndeclaredVariable {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("{line}: node `{name}` is defined more than once")]
    DuplicateNode { name: String, line: usize },
    #[error("network has no nodes")]
    EmptyNetwork,
    #[error("network has {names} names but {functions} update functions")]
    ArityMismatch { names: usize, functions: usize },
    #[error("node index {index} out of range for a network of {nodes} nodes")]
    NodeOutOfRange { index: usize, nodes: usize },
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("node {0} appears in both the zero and the one set of a control")]
    OverlappingControl(usize),
    #[error("control cannot flip node {node}: it already holds value {value}")]
    InconsistentControl { node: usize, value: u8 },
    #[error("network has {nodes} nodes; the explicit state space is limited to {max}")]
    TooManyNodes { nodes: usize, max: usize },
    #[error("target set is empty")]
    EmptyTarget,
    #[error("unknown attractor id {0}")]
    UnknownAttractor(usize),
    #[error("source and target attractor must differ")]
    SameSourceTarget,
    #[error("schedule has {controls} controls but {intermediates} intermediate attractors")]
    ScheduleLength {
        controls: usize,
        intermediates: usize,
    },
}
