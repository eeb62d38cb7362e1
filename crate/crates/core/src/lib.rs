//! Grid-path (VPG/CPG) representations and the algorithmic toolchain built
//! on them: intersection-graph extraction, caterpillar branch decompositions
//! with certified mm/mim-width bounds, exact Independent Set and Dominating
//! Set solvers for bounded-mim-width inputs, Baker-shifting approximation
//! schemes, and constructive instance transformations with exact optimum
//! offsets.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so everything here is safe to share across threads.

pub mod decomp;
pub mod error;
pub mod format;
pub mod graph;
pub mod lab;
pub mod matching;
pub mod ptas;
pub mod rep;
pub mod solve;

pub use decomp::{
    build_caterpillar_decomposition, build_decomposition, decomposition_mim_width,
    decomposition_mm_width, endpoint_normalize, intersection_point_order, path_order_keys,
    width_profile, BranchDecomposition, CutProfile, PathOrderKey,
};
pub use error::{Error, Result};
pub use format::{
    format_rational, parse_rational, parse_representation, serialize_decomposition,
    serialize_edge_list, serialize_representation, serialize_solution,
};
pub use graph::{
    clique_augment, connected_components, intersection_graph, structural_checks, BitSet, Cut,
    Graph, StructuralChecks,
};
pub use lab::{
    audit_b0cpg_properties, gen_b0cpg_subcubic, gen_random_vpg, gen_split_graph_rep,
    normalize_b0cpg, reduce_full, split_vertex_ds, split_vertex_is, RandomVpgParams, SplitReport,
};
pub use matching::{cut_max_induced_matching, cut_max_matching, hopcroft_karp, MimBudget};
pub use ptas::{
    baker_ds, baker_is, build_windows, check_window_invariants, compute_v_sets, compute_x_sets,
    ds_window_length, window_variants, ColumnProfile, PtasConfig, PtasOutcome, ShiftConfigDs,
    ShiftConfigIs, ShiftDiag, VariantKind, Window,
};
pub use rep::{
    build_intersection_index, grid_edge_load, horizontal_part, induced_subrepresentation,
    path_points, refine_grid, validate, Constraints, EdgeLoad, Flavor, GridEdge, GridPath,
    GridPoint, GridRep, HorizontalPart, IntersectionIndex, ValidationReport, Violation,
};
pub use solve::{
    brute_force_ds, brute_force_ds_with, brute_force_is, brute_force_is_with,
    enumerate_neighbor_classes, solve_ds_bd, solve_is_bd, solve_rep, verify_solution, CutSide,
    NeighborClass, OracleBudget, ProblemKind, Solution, SolveConfig,
};
