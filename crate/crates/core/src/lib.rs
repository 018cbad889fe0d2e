//! Distance-based topological indices (Wiener, hyper-Wiener, Harary), the
//! extremal graph families attached to Hamiltonicity edge-count results,
//! exact Hamiltonicity oracles, and a harness that checks index-based
//! sufficient conditions against those oracles on exhaustive and sampled
//! corpora.

pub mod conditions;
pub mod exact;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod hamiltonicity;
pub mod harness;
pub mod metrics;

pub use families::{generate_family, FamilyGraph, FamilyKind, FamilyParams};
pub use graph::{
    bipartite_join, bipartite_union, complement, disjoint_union, join, quasi_complement,
    BipartiteGraph, Graph, GraphError,
};
pub use hamiltonicity::{
    Engine, HamiltonicityProfile, Oracle, OracleConfig, OracleError, Property,
};
