//! Compilers from machines and orthogonal-vector instances to factored graph
//! problems, together with the direct simulators used to check them.

mod compiled;
mod consistency;
mod error;
mod kov;
mod ntm;
mod path;
mod syntax;
mod tm;
mod tm_lfmis;

pub use compiled::{CompiledInstance, Query};
pub use consistency::{
    consistency, tile_name, tiles, ConsistencyTable, Direction, Tile, TileState, TileSymbol,
};
pub use error::{ConventionViolation, ReductionError};
pub use kov::{compile_kov_reach, solve_kov_brute, KovInstance, KovLabels, KovVertex};
pub use ntm::{
    compile_ntm_reach, compile_ntm_reach_with, segment_len, simulate_ntm_config_graph, Config,
    HeadMove, NtmCompileOptions, NtmLabels, NtmSpec, NtmTransition, SubConfig, DEFAULT_MAX_CONFIGS,
    DEFAULT_MAX_FACTOR,
};
pub use path::{build_factored_path, build_grid, digits_of, PathDirection};
pub use tm::{
    simulate_tm, validate_tm_convention, ExecutionTrace, Move, TmSpec, TraceCell, Transition,
    BLANK, DEFAULT_MAX_STEPS,
};
pub use tm_lfmis::{
    compile_tm_lfmis, compile_tm_lfmis_with, GridShape, TileLabels, TmCompileOptions,
};
