//! Seeded random corpora. Every stream is a pure function of its seed.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{CorpusGraph, HarnessError};
use crate::graph::{BipartiteGraph, Graph};

/// Attempts allowed per emitted graph before a filter counts as unsatisfiable.
pub const RETRY_BUDGET: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "model")]
pub enum SampleModel {
    /// Each pair independently with probability `p`.
    UniformEdge { p: f64 },
    /// `UniformEdge` samples, rejecting those with `δ < min_degree`.
    FixedMinDegree { p: f64, min_degree: usize },
}

impl SampleModel {
    fn parts(self) -> Result<(f64, usize), HarnessError> {
        let (p, d) = match self {
            SampleModel::UniformEdge { p } => (p, 0),
            SampleModel::FixedMinDegree { p, min_degree } => (p, min_degree),
        };
        if !(0.0..=1.0).contains(&p) {
            return Err(HarnessError::Probability(p));
        }
        Ok((p, d))
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gnp(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("pairs are in range")
}

fn bipartite_gnp(rng: &mut ChaCha8Rng, a: usize, b: usize, p: f64) -> BipartiteGraph {
    let mut edges = Vec::new();
    for i in 0..a {
        for j in 0..b {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    BipartiteGraph::from_biadjacency(a, b, edges).expect("cells are in range")
}

fn rejection<T>(
    count: usize,
    min_degree: usize,
    mut draw: impl FnMut() -> T,
    graph: impl Fn(&T) -> &Graph,
) -> Result<Vec<T>, HarnessError> {
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut tries = 0;
        loop {
            let g = draw();
            if graph(&g).min_degree().unwrap_or(0) >= min_degree {
                out.push(g);
                break;
            }
            tries += 1;
            if tries == RETRY_BUDGET {
                return Err(HarnessError::RetryBudget { tries });
            }
        }
    }
    Ok(out)
}

/// `count` graphs on `n` vertices drawn from `model`.
pub fn sample_random_graphs(
    n: usize,
    count: usize,
    model: SampleModel,
    seed: u64,
) -> Result<Vec<Graph>, HarnessError> {
    let (p, d) = model.parts()?;
    let mut rng = rng(seed);
    rejection(count, d, || gnp(&mut rng, n, p), |g| g)
}

/// `count` bipartite graphs with parts `a`, `b` drawn from `model`.
pub fn sample_random_bipartite(
    a: usize,
    b: usize,
    count: usize,
    model: SampleModel,
    seed: u64,
) -> Result<Vec<BipartiteGraph>, HarnessError> {
    let (p, d) = model.parts()?;
    let mut rng = rng(seed);
    rejection(count, d, || bipartite_gnp(&mut rng, a, b, p), |g| g.graph())
}

/// Random spanning subgraphs of `base` keeping each edge with probability
/// `keep`; bipartitions are preserved.
pub fn sample_spanning_subgraphs(
    base: &CorpusGraph,
    count: usize,
    keep: f64,
    seed: u64,
) -> Result<Vec<CorpusGraph>, HarnessError> {
    if !(0.0..=1.0).contains(&keep) {
        return Err(HarnessError::Probability(keep));
    }
    let mut rng = rng(seed);
    let g = base.graph();
    let edges: Vec<_> = g.edges().collect();
    Ok((0..count)
        .map(|_| {
            let kept = edges.iter().copied().filter(|_| rng.gen_bool(keep));
            let h = Graph::from_edges(g.order(), kept).expect("edges of base");
            match base {
                CorpusGraph::General(_) => CorpusGraph::General(h),
                CorpusGraph::Bipartite(b) => CorpusGraph::Bipartite(
                    BipartiteGraph::from_parts(h, b.x().to_vec(), b.y().to_vec())
                        .expect("subgraph keeps the bipartition"),
                ),
            }
        })
        .collect())
}

/// Connected graph with exactly `m` edges: a random recursive tree on a
/// shuffled labeling plus uniformly chosen extra pairs.
pub fn random_connected_graph(n: usize, m: usize, seed: u64) -> Result<Graph, HarnessError> {
    let max = n * n.saturating_sub(1) / 2;
    if n == 0 || m + 1 < n || m > max {
        return Err(HarnessError::EdgeCount { n, m });
    }
    let mut rng = rng(seed);
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(&mut rng);
    let mut edges = HashSet::with_capacity(m);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let (u, v) = (label[i], label[j]);
        edges.insert((u.min(v), u.max(v)));
    }
    while edges.len() < m {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            edges.insert((u.min(v), u.max(v)));
        }
    }
    let mut edges: Vec<_> = edges.into_iter().collect();
    edges.sort_unstable();
    Ok(Graph::from_edges(n, edges).expect("pairs are in range"))
}
