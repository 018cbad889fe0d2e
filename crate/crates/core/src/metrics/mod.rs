//! All-pairs distances, connectivity and the distance-based indices.

mod connectivity;
mod distance;
mod indices;

use thiserror::Error;

pub(crate) use connectivity::for_each_subset;
pub use connectivity::{
    is_k_connected, local_vertex_connectivity, vertex_connectivity, vertex_connectivity_exhaustive,
    vertex_connectivity_flow, EXHAUSTIVE_LIMIT,
};
pub use distance::{all_pairs_distances, is_connected, DistanceMatrix};
pub(crate) use distance::{full_mask, masks_connected};
pub use indices::{
    index_triple, indices, indices_from_distances, partial_index_triple, IndexReport, IndexTriple,
    PartialTriple,
};

use crate::graph::Graph;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum MetricsError {
    #[error("graph is disconnected; distance indices are undefined")]
    DisconnectedGraph,
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("exact value does not fit in 128-bit arithmetic")]
    Overflow,
}

/// `δ(G)`; the graph with no vertices has no minimum degree.
pub fn min_degree(g: &Graph) -> Result<usize, MetricsError> {
    g.min_degree().ok_or(MetricsError::EmptyGraph)
}

pub fn edge_count(g: &Graph) -> usize {
    g.edge_count()
}
