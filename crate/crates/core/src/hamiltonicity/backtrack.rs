//! Depth-first path extension with feasibility pruning.
//!
//! At every node the unvisited set `R` and current end `c` must still admit
//! a spanning path of `G[R ∪ {c}]` starting at `c`. The search rejects a node
//! when `G[R]` is disconnected, when some vertex has no usable neighbour,
//! when two vertices are forced to be the final vertex, or when a cut vertex
//! of `G[R ∪ {c}]` separates it into three pieces or cuts every allowed final
//! vertex off on `c`'s side.

use super::full;

struct Search<'a> {
    masks: &'a [u64],
    /// The last vertex of the path must lie in this set.
    finals: u64,
    /// Vertex that may only be visited last.
    reserved: Option<usize>,
    path: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, start: usize) -> bool {
        let n = self.masks.len();
        self.path.clear();
        self.path.push(start);
        let rest = full(n) & !(1 << start);
        if rest == 0 {
            return self.finals >> start & 1 == 1;
        }
        self.extend(start, rest)
    }

    fn extend(&mut self, c: usize, rest: u64) -> bool {
        if rest == 0 {
            return self.finals >> c & 1 == 1;
        }
        let step = self.masks[c] & rest;
        if step == 0 || !self.feasible(c, rest) {
            return false;
        }
        let mut options = step;
        if let Some(t) = self.reserved {
            if rest != 1 << t {
                options &= !(1 << t);
            }
        }
        let mut order: Vec<(u32, usize)> = Vec::with_capacity(options.count_ones() as usize);
        let mut o = options;
        while o != 0 {
            let u = o.trailing_zeros() as usize;
            o &= o - 1;
            order.push(((self.masks[u] & rest).count_ones(), u));
        }
        // fewest onward choices first
        order.sort_unstable();
        for (_, u) in order {
            self.path.push(u);
            if self.extend(u, rest & !(1 << u)) {
                return true;
            }
            self.path.pop();
        }
        false
    }

    fn feasible(&self, c: usize, rest: u64) -> bool {
        let masks = self.masks;
        let live = rest | 1 << c;
        let mut forced = None;
        let mut r = rest;
        while r != 0 {
            let u = r.trailing_zeros() as usize;
            r &= r - 1;
            match (masks[u] & live).count_ones() {
                0 => return false,
                1 => {
                    if forced.is_some() || self.finals >> u & 1 == 0 {
                        return false;
                    }
                    forced = Some(u);
                }
                _ => {}
            }
        }
        if let (Some(f), Some(t)) = (forced, self.reserved) {
            if f != t {
                return false;
            }
        }
        if !connected(masks, rest) {
            return false;
        }
        if rest.count_ones() >= 3 {
            return self.cuts_ok(c, live);
        }
        true
    }

    /// Articulation points of `G[live]` via an iterative low-link search from `c`.
    fn cuts_ok(&self, c: usize, live: u64) -> bool {
        let masks = self.masks;
        let n = masks.len();
        let mut disc = [0u32; 64];
        let mut low = [0u32; 64];
        let mut parent = [usize::MAX; 64];
        // reachable final vertices inside each DFS subtree
        let mut sub_finals = [0u64; 64];
        let mut pending = [0u64; 64];
        let mut separated = [0u8; 64];
        let mut time = 1u32;
        let mut stack: Vec<usize> = Vec::with_capacity(n);
        disc[c] = time;
        low[c] = time;
        pending[c] = masks[c] & live;
        stack.push(c);
        while let Some(&v) = stack.last() {
            if pending[v] != 0 {
                let w = pending[v].trailing_zeros() as usize;
                pending[v] &= pending[v] - 1;
                if disc[w] == 0 {
                    time += 1;
                    disc[w] = time;
                    low[w] = time;
                    parent[w] = v;
                    pending[w] = masks[w] & live & !(1 << v);
                    stack.push(w);
                } else {
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            stack.pop();
            sub_finals[v] |= self.finals & 1 << v;
            let p = parent[v];
            if p == usize::MAX {
                continue;
            }
            low[p] = low[p].min(low[v]);
            sub_finals[p] |= sub_finals[v];
            if p != c && low[v] >= disc[p] {
                // p separates v's subtree from c, so the path crosses p once,
                // finishes inside that subtree and leaves no room for another
                separated[p] += 1;
                if separated[p] > 1 || sub_finals[v] == 0 {
                    return false;
                }
            }
        }
        true
    }
}

fn connected(masks: &[u64], allowed: u64) -> bool {
    crate::metrics::masks_connected(masks, allowed)
}

fn leaves(masks: &[u64]) -> u64 {
    let mut out = 0;
    for (v, &m) in masks.iter().enumerate() {
        if m.count_ones() == 1 {
            out |= 1 << v;
        }
    }
    out
}

pub(crate) fn hamiltonian_cycle(masks: &[u64]) -> Option<Vec<usize>> {
    let n = masks.len();
    if n < 3 || masks.iter().any(|m| m.count_ones() < 2) || !connected(masks, full(n)) {
        return None;
    }
    let mut s = Search {
        masks,
        finals: masks[0],
        reserved: None,
        path: Vec::with_capacity(n),
    };
    s.run(0).then_some(s.path)
}

fn path_from(masks: &[u64], start: usize) -> Option<Vec<usize>> {
    let mut s = Search {
        masks,
        finals: full(masks.len()),
        reserved: None,
        path: Vec::with_capacity(masks.len()),
    };
    s.run(start).then_some(s.path)
}

pub(crate) fn hamiltonian_path(masks: &[u64]) -> Option<Vec<usize>> {
    let n = masks.len();
    if n == 0 || !connected(masks, full(n)) {
        return None;
    }
    let ends = leaves(masks);
    if ends.count_ones() > 2 {
        return None;
    }
    // a degree-one vertex is always an end, so it can serve as the start
    if ends != 0 {
        return path_from(masks, ends.trailing_zeros() as usize);
    }
    (0..n).find_map(|s| path_from(masks, s))
}

pub(crate) fn traceable_from_every_vertex(masks: &[u64]) -> bool {
    let n = masks.len();
    if n == 0 || !connected(masks, full(n)) {
        return false;
    }
    if n == 1 {
        return true;
    }
    if leaves(masks) != 0 {
        // the unique neighbour of a leaf can never be an end when n >= 3
        return n == 2;
    }
    let mut covered = 0u64;
    for s in 0..n {
        if covered >> s & 1 == 1 {
            continue;
        }
        match path_from(masks, s) {
            Some(p) => covered |= 1 << s | 1 << p[n - 1],
            None => return false,
        }
    }
    true
}

fn path_between(masks: &[u64], s: usize, t: usize) -> bool {
    let mut search = Search {
        masks,
        finals: 1 << t,
        reserved: Some(t),
        path: Vec::with_capacity(masks.len()),
    };
    search.run(s)
}

pub(crate) fn hamilton_connected(masks: &[u64], parallel: bool) -> bool {
    let n = masks.len();
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if !connected(masks, full(n)) {
        return false;
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|s| (s + 1..n).map(move |t| (s, t)))
        .collect();
    if parallel {
        use rayon::prelude::*;
        pairs.par_iter().all(|&(s, t)| path_between(masks, s, t))
    } else {
        pairs.iter().all(|&(s, t)| path_between(masks, s, t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{BipartiteGraph, Graph};

    fn m(g: &Graph) -> Vec<u64> {
        g.masks().unwrap()
    }

    #[test]
    fn simple_cases() {
        assert!(hamiltonian_cycle(&m(&Graph::cycle(6))).is_some());
        assert!(hamiltonian_cycle(&m(&Graph::petersen())).is_none());
        assert!(hamiltonian_path(&m(&Graph::petersen())).is_some());
        let star = BipartiteGraph::complete(1, 3).into_graph();
        assert!(hamiltonian_path(&m(&star)).is_none());
        assert!(hamilton_connected(&m(&Graph::complete(4)), false));
        assert!(!hamilton_connected(&m(&Graph::cycle(6)), false));
        assert!(traceable_from_every_vertex(&m(&Graph::cycle(5))));
        assert!(!traceable_from_every_vertex(&m(&Graph::path(4))));
    }

    #[test]
    fn witness_visits_every_vertex() {
        let g = Graph::petersen();
        let p = hamiltonian_path(&m(&g)).unwrap();
        let mut seen = p.clone();
        seen.sort();
        assert_eq!(seen, (0..10).collect::<Vec<_>>());
        for w in p.windows(2) {
            assert!(g.has_edge(w[0], w[1]));
        }
    }
}
