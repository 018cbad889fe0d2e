use std::cell::OnceCell;

use super::GraphRef;
use crate::graph::{complement, quasi_complement, Graph};
use crate::metrics::{partial_index_triple, vertex_connectivity, MetricsError, PartialTriple};

/// Lazily computed invariants of one graph, shared by every entry evaluated
/// on it.
pub struct GraphFacts<'a> {
    g: GraphRef<'a>,
    kappa: OnceCell<usize>,
    complement: OnceCell<Result<PartialTriple, MetricsError>>,
    quasi: OnceCell<Result<PartialTriple, MetricsError>>,
}

impl<'a> GraphFacts<'a> {
    pub fn new(g: GraphRef<'a>) -> Self {
        GraphFacts {
            g,
            kappa: OnceCell::new(),
            complement: OnceCell::new(),
            quasi: OnceCell::new(),
        }
    }

    pub fn graph_ref(&self) -> GraphRef<'a> {
        self.g
    }

    pub fn graph(&self) -> &'a Graph {
        self.g.graph()
    }

    pub fn edge_count(&self) -> usize {
        self.graph().edge_count()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.graph().min_degree()
    }

    pub fn vertex_connectivity(&self) -> usize {
        *self.kappa.get_or_init(|| vertex_connectivity(self.graph()))
    }

    /// Indices of `Ḡ`. The outer error means `Ḡ` is disconnected or empty.
    pub fn complement_indices(&self) -> &Result<PartialTriple, MetricsError> {
        self.complement
            .get_or_init(|| partial_index_triple(&complement(self.graph())))
    }

    /// Indices of `Ĝ`, when the input carries a bipartition.
    pub fn quasi_complement_indices(&self) -> Option<&Result<PartialTriple, MetricsError>> {
        match self.g {
            GraphRef::Bipartite(b) => Some(
                self.quasi
                    .get_or_init(|| partial_index_triple(quasi_complement(b).graph())),
            ),
            GraphRef::General(_) => None,
        }
    }
}
