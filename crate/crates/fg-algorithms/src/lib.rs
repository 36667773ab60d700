//! Algorithms on factored graphs: LFMIS, clique counting and reachability.

mod cliques;
mod error;
mod lfmis;
mod reach;

pub use cliques::{
    count_cliques_fpt, count_cliques_naive, pairs, CliqueCount, CliqueOptions, Decomposition,
    IeStrategy, DEFAULT_MAX_DECOMPOSITIONS,
};
pub use error::AlgoError;
pub use lfmis::{
    lfmis_greedy, lfmis_greedy_indices, lfmis_implicit, lfmis_member, Engine, LfmisResult,
};
pub use reach::{
    reach, reach_detailed, ReachMethod, ReachOptions, ReachOutcome, Strategy, DEFAULT_MAX_STATES,
};
