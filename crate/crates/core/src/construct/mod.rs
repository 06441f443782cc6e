//! Constructive procedures: Δ-maximizing witnesses, sparse/dense coset
//! classification with its Cayley-graph diagnostic, and the growth searches
//! for large half-size subsets.

mod cosets;
mod growth;
mod witness;

pub use cosets::{
    classify_cosets, dense_graph, growth_dichotomy, CosetClass, CosetKind, DenseGraph,
    DichotomyReport, GraphShape,
};
pub use growth::{
    best_half_subset, best_half_subset_with_cap, greedy_grow, GrowthStep, GrowthTrace,
    EXHAUSTIVE_HALF_CAP,
};
pub use witness::{hard_diagnostic, witness_easy, witness_hard, HardDiagnostic, Witness};
