//! Outerplanar diameter improvement: decide whether a graph can be completed
//! to an outerplanar graph of bounded diameter, build such completions, and
//! compute the optimum bound.

pub mod completion;
pub mod connected;
pub mod disconnected;
pub mod ecc;
pub mod error;
pub mod extremal;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod report;

pub use ecc::{
    combine_triangle, diameter_guard, ecc_pair, ecc_vertex, le_pairecc, minimal_alternatives, PairEcc,
    PairEccSet,
};
pub use completion::{verify_completion, Completion, CompletionDefect};
pub use connected::{
    branch_ecc, complete_connected, ecc_star, ecc_star_with, enumerate_splits, enumerate_triples, opdi_connected,
    opdi_connected_with, opdi_value_connected, reconstruct_completion, reduce_branches, solve_rooted,
    BranchReduction, DpKey, DpTable, SolverOptions, Split,
};
pub use disconnected::{
    complete, component_profiles, decide, escalated_ecc, min_radius, minimum_completion, opdi_disconnected,
    opdi_value, ComponentProfile,
};
pub use error::{Error, Result};
pub use extremal::{
    brute_force_max_parallel_matching, gen_obstruction, is_parallel_matching, max_parallel_matching,
    maximum_parallel_matching, outer_order, star_triangulate, verify_obstruction, Family, ObstructionSpec,
    ParallelMatching,
};
pub use generate::{random_maximal, random_outerplanar};
pub use report::{Answer, RunReport};
pub use oracle::{
    enumerate_maximal_outerplanar, oracle_decide, oracle_ecc_star, oracle_opdi, oracle_pair_ecc_star,
    MaximalOuterplanar, ORACLE_CAP,
};
pub use graph::{
    block_decomposition, boundary, branches_at, connected_components, diameter, is_outerplanar,
    outerplanarity_violation, BlockTree, Branch, Dist, EdgeError, Graph, OuterplanarViolation, ParseError,
    Vertex,
};
