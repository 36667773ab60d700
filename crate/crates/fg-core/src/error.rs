use thiserror::Error;

use crate::Vertex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoreError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("unknown graph name `{name}` at {line}:{col}")]
    UnknownGraph {
        name: String,
        line: usize,
        col: usize,
    },
    #[error("graph `{graph}`: edge endpoint {vertex} is not a declared vertex")]
    UndeclaredEndpoint { graph: String, vertex: String },
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("graph `{graph}`: duplicate vertex {vertex}")]
    DuplicateVertex { graph: String, vertex: String },
    #[error("graph `{0}` has no vertices")]
    EmptyGraph(String),
    #[error("graph `{graph}`: vertex {vertex} has arity {found}, expected {expected}")]
    MixedArity {
        graph: String,
        vertex: String,
        expected: usize,
        found: usize,
    },
    #[error("no formula named `{0}`")]
    UnknownFormula(String),
    #[error("{0} is not a vertex of the formula")]
    NotAVertex(Vertex),
    #[error("component count exceeds cap {cap}")]
    ComponentCap { cap: usize },
    #[error("size cap exceeded: more than {cap} vertices")]
    SizeCap { cap: usize },
    #[error("bad vertex literal `{0}`")]
    BadTuple(String),
    #[error("bad edge list line {line}: {msg}")]
    BadEdgeList { line: usize, msg: String },
}

impl CoreError {
    /// True for errors raised by a size or count guard rather than bad input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            CoreError::ComponentCap { .. } | CoreError::SizeCap { .. }
        )
    }
}
