use std::collections::VecDeque;

use super::distance::{full_mask, masks_connected};
use crate::graph::Graph;

/// Orders at or below this use exhaustive subset deletion.
pub const EXHAUSTIVE_LIMIT: usize = 10;

/// Vertex connectivity `κ(G)`, with `κ(K_n) = n - 1`.
pub fn vertex_connectivity(g: &Graph) -> usize {
    if g.order() <= EXHAUSTIVE_LIMIT {
        vertex_connectivity_exhaustive(g)
    } else {
        vertex_connectivity_flow(g)
    }
}

/// `G` is `k`-connected iff `κ(G) >= k` (which forces `|V| > k`).
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    vertex_connectivity(g) >= k
}

fn is_complete(g: &Graph) -> bool {
    let n = g.order();
    g.edge_count() == n * n.saturating_sub(1) / 2
}

/// Smallest number of deleted vertices that disconnects the graph, found by
/// trying every subset in order of size. Requires `n <= 64`.
pub fn vertex_connectivity_exhaustive(g: &Graph) -> usize {
    let n = g.order();
    if is_complete(g) {
        return n.saturating_sub(1);
    }
    assert!(n <= 64, "exhaustive vertex connectivity needs n <= 64");
    let masks = g.masks().expect("order checked");
    let all = full_mask(n);
    for size in 0..n {
        let mut found = false;
        for_each_subset(n, size, |deleted| {
            if !masks_connected(&masks, all & !deleted) {
                found = true;
            }
            found
        });
        if found {
            return size;
        }
    }
    unreachable!("a non-complete graph has a separating set")
}

/// Calls `f` on every `size`-subset of `0..n` (as a mask) until `f` returns true.
pub(crate) fn for_each_subset(n: usize, size: usize, mut f: impl FnMut(u64) -> bool) {
    if size > n {
        return;
    }
    if size == 0 {
        f(0);
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        let mask = idx.iter().fold(0u64, |m, &i| m | 1 << i);
        if f(mask) {
            return;
        }
        // advance to the next combination in lexicographic order
        let mut i = size;
        while i > 0 && idx[i - 1] == n - size + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Unit-capacity flow network with every vertex split into `in -> out`.
struct SplitNetwork {
    head: Vec<usize>,
    next: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<u32>,
}

impl SplitNetwork {
    const NONE: usize = usize::MAX;

    fn new(g: &Graph, s: usize, t: usize) -> Self {
        let n = g.order();
        let mut net = SplitNetwork {
            head: vec![Self::NONE; 2 * n],
            next: Vec::new(),
            to: Vec::new(),
            cap: Vec::new(),
        };
        let big = n as u32 + 1;
        for v in 0..n {
            let c = if v == s || v == t { big } else { 1 };
            net.arc(2 * v, 2 * v + 1, c);
        }
        for (u, v) in g.edges() {
            net.arc(2 * u + 1, 2 * v, big);
            net.arc(2 * v + 1, 2 * u, big);
        }
        net
    }

    fn arc(&mut self, a: usize, b: usize, c: u32) {
        for (from, to, cap) in [(a, b, c), (b, a, 0)] {
            self.to.push(to);
            self.cap.push(cap);
            self.next.push(self.head[from]);
            self.head[from] = self.to.len() - 1;
        }
    }

    fn max_flow(&mut self, source: usize, sink: usize, limit: usize) -> usize {
        let nodes = self.head.len();
        let mut flow = 0;
        let mut via = vec![Self::NONE; nodes];
        while flow < limit {
            via.fill(Self::NONE);
            let mut queue = VecDeque::from([source]);
            let mut reached = false;
            while let Some(u) = queue.pop_front() {
                let mut e = self.head[u];
                while e != Self::NONE {
                    let v = self.to[e];
                    if self.cap[e] > 0 && v != source && via[v] == Self::NONE {
                        via[v] = e;
                        if v == sink {
                            reached = true;
                            break;
                        }
                        queue.push_back(v);
                    }
                    e = self.next[e];
                }
                if reached {
                    break;
                }
            }
            if !reached {
                break;
            }
            let mut v = sink;
            while v != source {
                let e = via[v];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                v = self.to[e ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// Maximum number of internally disjoint `s`–`t` paths for non-adjacent `s, t`,
/// capped at `limit`.
pub fn local_vertex_connectivity(g: &Graph, s: usize, t: usize, limit: usize) -> usize {
    debug_assert!(s != t && !g.has_edge(s, t));
    let mut net = SplitNetwork::new(g, s, t);
    net.max_flow(2 * s + 1, 2 * t, limit)
}

/// `κ(G)` as the minimum local connectivity over non-adjacent pairs. Only pairs
/// whose first vertex is among the first `κ + 1` need to be examined.
pub fn vertex_connectivity_flow(g: &Graph) -> usize {
    let n = g.order();
    if is_complete(g) {
        return n.saturating_sub(1);
    }
    let mut best = n - 1;
    let mut i = 0;
    while i <= best && i < n {
        for j in i + 1..n {
            if !g.has_edge(i, j) {
                best = best.min(local_vertex_connectivity(g, i, j, best));
                if best == 0 {
                    return 0;
                }
            }
        }
        i += 1;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{disjoint_union, BipartiteGraph};

    #[test]
    fn small_examples() {
        assert_eq!(vertex_connectivity(&Graph::cycle(5)), 2);
        assert_eq!(vertex_connectivity(&Graph::complete(5)), 4);
        assert_eq!(vertex_connectivity(&Graph::path(4)), 1);
        assert_eq!(vertex_connectivity(&Graph::empty(3)), 0);
        assert_eq!(vertex_connectivity(&Graph::complete(1)), 0);
        let k34 = BipartiteGraph::complete(3, 4).into_graph();
        assert_eq!(vertex_connectivity_flow(&k34), 3);
        assert_eq!(vertex_connectivity_exhaustive(&k34), 3);
    }

    fn brute_force_kappa(g: &Graph) -> usize {
        // independent oracle: try every subset, take the smallest disconnecting one
        let n = g.order();
        let masks = g.masks().unwrap();
        let all = full_mask(n);
        let mut best = n - 1;
        for deleted in 0..=all {
            let rest = all & !deleted;
            if rest.count_ones() >= 2 && !masks_connected(&masks, rest) {
                best = best.min(deleted.count_ones() as usize);
            }
        }
        best
    }

    #[test]
    fn petersen_is_three_connected() {
        let g = Graph::petersen();
        assert_eq!(brute_force_kappa(&g), 3);
        assert_eq!(vertex_connectivity_exhaustive(&g), 3);
        assert_eq!(vertex_connectivity_flow(&g), 3);
    }

    #[test]
    fn flow_on_larger_graphs() {
        let g = disjoint_union(&Graph::complete(7), &Graph::complete(6));
        assert_eq!(vertex_connectivity(&g), 0);
        assert_eq!(vertex_connectivity(&Graph::cycle(30)), 2);
        let wheel = crate::graph::join(&Graph::complete(1), &Graph::cycle(20));
        assert_eq!(vertex_connectivity(&wheel), 3);
    }

    #[test]
    fn subsets_enumerated_once() {
        let mut seen = Vec::new();
        for_each_subset(5, 2, |m| {
            seen.push(m);
            false
        });
        assert_eq!(seen.len(), 10);
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 10);
        let mut count = 0;
        for_each_subset(4, 4, |_| {
            count += 1;
            false
        });
        assert_eq!(count, 1);
    }
}
