//! Construction, validation, measurement, and serialization of generalized
//! hypertree decompositions.
//!
//! A hypergraph is a set of named vertices and named hyperedges; a
//! decomposition is a tree of nodes carrying a bag (vertex set) and a cover
//! (edge set) whose union contains the bag. The crate provides:
//!
//! - [`hypergraph`]: the immutable hypergraph type, primal graph,
//!   connectivity, and acyclicity by ear/subsumption reduction;
//! - [`formats`]: bit-exact `.hg`/`.ghd` text formats and DOT export;
//! - [`decomposition`]: the decomposition type, the condition validator,
//!   and width;
//! - [`cover`]: greedy and exact minimum edge covers of vertex sets;
//! - [`heuristics`]: elimination-ordering heuristics and bucket elimination
//!   that always produce valid decompositions;
//! - [`exact`]: an exact width oracle for desk-scale verification.
//!
//! Everything is deterministic: inputs (and seeds) fix outputs byte for
//! byte. All values are immutable after construction and every operation is
//! a pure function, so concurrent use needs no synchronization.

pub mod cover;
pub mod decomposition;
pub mod exact;
pub mod formats;
pub mod heuristics;
pub mod hypergraph;

pub use cover::{exact_cover, greedy_cover, CoverError, CoverResult};
pub use decomposition::{
    lint, stats, validate, ConditionVerdict, Decomposition, DecompositionError, DecompositionNode,
    NodeId, ValidationReport,
};
pub use exact::{decide_ghw_le_k, ghw_exact, ExactError, ExactResult, DEFAULT_VERTEX_LIMIT};
pub use formats::{
    parse_ghd, parse_hg, serialize_ghd, serialize_hg, to_dot, DotError, DotInput, GhdParseError,
    HgParseError, ParseDiagnostic,
};
pub use heuristics::{
    bucket_elimination, decompose, decompose_ordering, elimination_order, order_mcs,
    order_min_degree, order_min_fill, order_random, prune_subsumed, CoverMode, EliminationOrder,
    Heuristic, TreeDecomposition,
};
pub use hypergraph::{GyoReduction, Hypergraph, HypergraphError, PrimalGraph};
