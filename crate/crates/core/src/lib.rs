//! Pebble motion on trees: solvers for the labeled, unlabeled, motion
//! planning and gather-holes problems, with and without trans-shipment
//! vertices, plus a plan validator and a brute-force oracle.

pub mod caterpillar;
pub mod error;
pub mod generate;
pub mod harness;
pub mod instance;
pub mod io;
pub mod oracle;
pub mod plan;
pub mod pmt;
pub mod tree;
pub mod unlabeled;

pub use caterpillar::{
    build_caterpillar_sets, procedure_a, procedure_b, solve_motion_planning,
    CaterpillarDecomposition,
};
pub use error::SolveError;
pub use generate::{generate_random_instance, generate_with_attempts, random_tree, GenerateError};
pub use harness::{
    aggregate, run_instance, run_sweep, write_csv, BenchConfig, BenchError, BenchKind, BenchRow,
    InstanceRecord,
};
pub use instance::{
    assumption_threshold, check_assumption, Instance, Problem, ProblemKind, Threshold,
};
pub use io::{parse_instance, serialize_instance, ParseError, PlanFile};
pub use oracle::{bfs_solve, reachable_states, OracleOutcome, SearchLimits};
pub use plan::{
    apply_move, apply_plan, bring_hole, move_pebble, replay, reverse_plan, vertex_crossings,
    Configuration, ConfigurationError, Move, MoveError, Occupant, PebbleId, Plan, PlanError,
    ValidationReport, Variant,
};
pub use pmt::{intermediate_targets, solve, solve_pmt, IntermediateTargets};
pub use tree::{
    analyze, closest_subset, Corridor, CorridorProfile, Tree, TreeError, TreeView, Vertex,
    VertexKind,
};
pub use unlabeled::{gather_holes, solve_unlabeled};
