//! Minimum-weight graphs whose every `k` vertices span weight at least `w`.
//!
//! `Φ(n, k, w)` is the set of complete graphs on `n` vertices with
//! non-negative integer edge weights in which each `k`-vertex subgraph has
//! total weight at least `w`; `φ(n, k, w)` is the least total weight in it.

mod graph;
mod search;

pub use graph::{
    degree_bound_witness, is_member, min_k_subgraph_weight, partition_graph, phi4_formula,
    phi4_witness, total_weight, WeightedGraph,
};
pub use search::{
    mantel_relation, phi_exact, phi_exact_with, phi_table_with, solve_with, Budget, NodeCounter,
    Outcome, PhiSearch, Runner, SearchControl, SearchOptions, SearchResult, SearchStatus, DIVE_CAP,
};
