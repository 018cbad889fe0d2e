//! Corpus construction and end-to-end verification of the catalog against
//! the oracles.

mod closed_forms;
mod enumerate;
mod ingest;
mod report;
mod sample;
mod verify;

use thiserror::Error;

pub use closed_forms::{
    check_closed_form, closed_forms, verify_closed_forms, ClosedForm, ClosedFormCheck, Target,
};
pub use enumerate::{
    enumerate_bipartite_graphs, enumerate_labeled_graphs, BipartiteGraphs, EnumFilter,
    LabeledGraphs, BIPARTITE_MAX_CELLS, GENERAL_MAX_ORDER,
};
pub use ingest::{ingest_graph6, two_coloring, Ingested, Malformed};
pub use report::{bound_csv, coverage_csv, without_timestamps, JsonlWriter, COVERAGE_HEADER};
pub use sample::{
    random_connected_graph, rng, sample_random_bipartite, sample_random_graphs,
    sample_spanning_subgraphs, SampleModel, RETRY_BUDGET,
};
pub use verify::{
    verify_corpus, verify_corpus_with, BoundCoverage, CheckedVerdict, EntryCoverage, Finding,
    FindingKind, MembershipResult, OracleResults, RecordPolicy, Status, VerificationRecord,
    VerificationReport, VerifyOptions,
};

use crate::conditions::GraphRef;
use crate::families::FamilyGraph;
use crate::graph::{BipartiteGraph, Graph};
use crate::graph6::{encode, Graph6Error};
use crate::metrics::is_connected;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HarnessError {
    #[error("labeled enumeration supports at most {max} vertices, got {n}")]
    OrderCap { n: usize, max: usize },
    #[error("bipartite enumeration needs a * b <= {max}, got {a} x {b}")]
    BipartiteCap { a: usize, b: usize, max: usize },
    #[error("no sample met the filter within {tries} attempts")]
    RetryBudget { tries: usize },
    #[error("probability {0} is outside [0, 1]")]
    Probability(f64),
    #[error("no connected graph on {n} vertices has {m} edges")]
    EdgeCount { n: usize, m: usize },
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
}

/// A corpus member, with its bipartition when it has one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorpusGraph {
    General(Graph),
    Bipartite(BipartiteGraph),
}

impl CorpusGraph {
    pub fn as_ref(&self) -> GraphRef<'_> {
        match self {
            CorpusGraph::General(g) => GraphRef::General(g),
            CorpusGraph::Bipartite(b) => GraphRef::Bipartite(b),
        }
    }

    pub fn graph(&self) -> &Graph {
        self.as_ref().graph()
    }

    /// graph6 string of the underlying graph.
    pub fn id(&self) -> String {
        encode(self.graph())
    }

    pub fn bipartition(&self) -> Option<Vec<usize>> {
        match self {
            CorpusGraph::General(_) => None,
            CorpusGraph::Bipartite(b) => Some(b.x().to_vec()),
        }
    }

    pub fn classes(&self) -> Vec<String> {
        let mut tags = Vec::new();
        match self {
            CorpusGraph::General(_) => tags.push("general"),
            CorpusGraph::Bipartite(b) => {
                tags.push("bipartite");
                if b.is_balanced() {
                    tags.push("balanced");
                } else if b.part_sizes().0.abs_diff(b.part_sizes().1) == 1 {
                    tags.push("nearly-balanced");
                }
            }
        }
        if is_connected(self.graph()) {
            tags.push("connected");
        }
        tags.into_iter().map(String::from).collect()
    }
}

impl From<Graph> for CorpusGraph {
    fn from(g: Graph) -> Self {
        CorpusGraph::General(g)
    }
}

impl From<BipartiteGraph> for CorpusGraph {
    fn from(b: BipartiteGraph) -> Self {
        CorpusGraph::Bipartite(b)
    }
}

impl From<FamilyGraph> for CorpusGraph {
    fn from(f: FamilyGraph) -> Self {
        match f {
            FamilyGraph::General(g) => CorpusGraph::General(g),
            FamilyGraph::Bipartite(b) => CorpusGraph::Bipartite(b),
        }
    }
}
