use fg_core::{CoreError, Vertex};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgoError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("self-loop at {0}: independence is undefined")]
    SelfLoop(Vertex),
    #[error("base graph `{0}` is not symmetric; clique counting needs undirected graphs")]
    NotSymmetric(String),
    #[error(
        "base graph `{0}` has multi-label vertices; the FPT counter needs single-label leaves"
    )]
    WideLeaf(String),
    #[error("{count} decompositions exceed the cap of {cap}; use the naive method")]
    DecompositionCap { count: u128, cap: usize },
    #[error("clique size {0} is out of range (1..=11)")]
    CliqueSize(usize),
    #[error("search visited more than {cap} states")]
    StateCap { cap: usize },
    #[error("{0} is not a vertex of the formula")]
    NotAVertex(Vertex),
}

impl AlgoError {
    /// True for errors raised by a size guard.
    pub fn is_cap(&self) -> bool {
        match self {
            AlgoError::Core(e) => e.is_cap(),
            AlgoError::StateCap { .. } | AlgoError::DecompositionCap { .. } => true,
            _ => false,
        }
    }
}
