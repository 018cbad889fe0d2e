//! Exhaustive labeled enumeration, in edge-mask order.

use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::graph::{BipartiteGraph, Graph};
use crate::metrics::{full_mask, masks_connected, vertex_connectivity};

/// Largest order for exhaustive enumeration of general graphs.
pub const GENERAL_MAX_ORDER: usize = 7;
/// Largest biadjacency size `a * b` for exhaustive bipartite enumeration.
pub const BIPARTITE_MAX_CELLS: usize = 26;

/// Filters applied during enumeration. For bipartite streams
/// `connected_complement` refers to the quasi-complement.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumFilter {
    pub min_degree: usize,
    pub connected: bool,
    pub connected_complement: bool,
    /// Require `κ(G) >= min_connectivity` (and more than that many vertices).
    pub min_connectivity: usize,
}

impl EnumFilter {
    fn admits(&self, masks: &[u64], complement: impl FnOnce() -> Vec<u64>) -> bool {
        let n = masks.len();
        if masks
            .iter()
            .any(|m| (m.count_ones() as usize) < self.min_degree)
        {
            return false;
        }
        let all = full_mask(n);
        if self.connected && !masks_connected(masks, all) {
            return false;
        }
        if self.connected_complement && !masks_connected(&complement(), all) {
            return false;
        }
        if self.min_connectivity > 0 {
            let c = self.min_connectivity;
            if n <= c || vertex_connectivity(&Graph::from_masks(masks)) < c {
                return false;
            }
        }
        true
    }
}

/// Every labeled graph on `n` vertices passing `filter`. Bit `i` of the
/// running mask is the `i`-th pair `(u, v)`, `u < v`, in lexicographic order.
pub fn enumerate_labeled_graphs(
    n: usize,
    filter: EnumFilter,
) -> Result<LabeledGraphs, HarnessError> {
    if n > GENERAL_MAX_ORDER {
        return Err(HarnessError::OrderCap {
            n,
            max: GENERAL_MAX_ORDER,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Ok(LabeledGraphs {
        n,
        end: 1u64 << pairs.len(),
        pairs,
        next: 0,
        filter,
    })
}

pub struct LabeledGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next: u64,
    end: u64,
    filter: EnumFilter,
}

impl Iterator for LabeledGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        let mut masks = vec![0u64; self.n];
        while self.next < self.end {
            let edges = self.next;
            self.next += 1;
            masks.iter_mut().for_each(|m| *m = 0);
            for (i, &(u, v)) in self.pairs.iter().enumerate() {
                if edges >> i & 1 == 1 {
                    masks[u] |= 1 << v;
                    masks[v] |= 1 << u;
                }
            }
            let all = full_mask(self.n);
            let complement = || {
                (0..self.n)
                    .map(|v| !masks[v] & all & !(1 << v))
                    .collect::<Vec<_>>()
            };
            if self.filter.admits(&masks, complement) {
                return Some(Graph::from_masks(&masks));
            }
        }
        None
    }
}

/// Every labeled bipartite graph with `X = 0..a`, `Y = a..a+b` passing
/// `filter`. Rows of the biadjacency matrix are restricted to those meeting
/// the degree bound up front; the last row varies fastest.
pub fn enumerate_bipartite_graphs(
    a: usize,
    b: usize,
    filter: EnumFilter,
) -> Result<BipartiteGraphs, HarnessError> {
    if a * b > BIPARTITE_MAX_CELLS || a + b > 64 {
        return Err(HarnessError::BipartiteCap {
            a,
            b,
            max: BIPARTITE_MAX_CELLS,
        });
    }
    let rows: Vec<u64> = (0..1u64 << b)
        .filter(|r| r.count_ones() as usize >= filter.min_degree)
        .collect();
    let done = rows.is_empty() && a > 0;
    Ok(BipartiteGraphs {
        a,
        b,
        counter: vec![0; a],
        rows,
        done,
        filter,
    })
}

pub struct BipartiteGraphs {
    a: usize,
    b: usize,
    rows: Vec<u64>,
    counter: Vec<usize>,
    done: bool,
    filter: EnumFilter,
}

impl BipartiteGraphs {
    fn advance(&mut self) {
        for i in (0..self.a).rev() {
            self.counter[i] += 1;
            if self.counter[i] < self.rows.len() {
                return;
            }
            self.counter[i] = 0;
        }
        self.done = true;
    }
}

impl Iterator for BipartiteGraphs {
    type Item = BipartiteGraph;

    fn next(&mut self) -> Option<BipartiteGraph> {
        let (a, b) = (self.a, self.b);
        let mut masks = vec![0u64; a + b];
        while !self.done {
            masks.iter_mut().for_each(|m| *m = 0);
            for i in 0..a {
                let row = self.rows[self.counter[i]];
                masks[i] = row << a;
                let mut bits = row;
                while bits != 0 {
                    masks[a + bits.trailing_zeros() as usize] |= 1 << i;
                    bits &= bits - 1;
                }
            }
            self.advance();
            let xs = full_mask(a);
            let ys = full_mask(a + b) & !xs;
            let quasi = || {
                (0..a + b)
                    .map(|v| {
                        let other = if v < a { ys } else { xs };
                        !masks[v] & other
                    })
                    .collect::<Vec<_>>()
            };
            if self.filter.admits(&masks, quasi) {
                return Some(BipartiteGraph::standard(Graph::from_masks(&masks), a));
            }
        }
        None
    }
}
