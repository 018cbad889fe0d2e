use rayon::prelude::*;

use crate::graph::Graph;

/// Hop distance matrix. Unreachable pairs hold [`DistanceMatrix::UNREACHABLE`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub const UNREACHABLE: u32 = u32::MAX;

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.d[i * self.n + j]
    }

    /// `Some(d)` for reachable pairs.
    pub fn distance(&self, i: usize, j: usize) -> Option<u32> {
        let d = self.get(i, j);
        (d != Self::UNREACHABLE).then_some(d)
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.d[i * self.n..(i + 1) * self.n]
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.row(0).iter().all(|&d| d != Self::UNREACHABLE)
    }

    /// Largest finite distance (0 for graphs with at most one vertex).
    pub fn diameter(&self) -> Option<u32> {
        if !self.is_connected() {
            return None;
        }
        Some(self.d.iter().copied().max().unwrap_or(0))
    }

    /// `hist[d]` = number of unordered pairs at distance `d >= 1`, plus the
    /// number of unreachable unordered pairs.
    pub fn pair_histogram(&self) -> (Vec<u64>, u64) {
        let mut hist = vec![0u64; 2];
        let mut unreachable = 0;
        for i in 0..self.n {
            for &d in &self.row(i)[i + 1..] {
                if d == Self::UNREACHABLE {
                    unreachable += 1;
                } else {
                    let d = d as usize;
                    if hist.len() <= d {
                        hist.resize(d + 1, 0);
                    }
                    hist[d] += 1;
                }
            }
        }
        (hist, unreachable)
    }
}

fn bfs_into(g: &Graph, source: usize, out: &mut [u32]) {
    let words = g.row_words();
    out.fill(DistanceMatrix::UNREACHABLE);
    let mut visited = vec![0u64; words];
    let mut frontier = vec![0u64; words];
    let mut next = vec![0u64; words];
    visited[source / 64] |= 1 << (source % 64);
    frontier[source / 64] |= 1 << (source % 64);
    out[source] = 0;
    let mut level = 0u32;
    loop {
        next.fill(0);
        for (wi, &fw) in frontier.iter().enumerate() {
            let mut w = fw;
            while w != 0 {
                let v = wi * 64 + w.trailing_zeros() as usize;
                w &= w - 1;
                for (nw, rw) in next.iter_mut().zip(g.row(v)) {
                    *nw |= rw;
                }
            }
        }
        let mut any = false;
        for (nw, vw) in next.iter_mut().zip(visited.iter_mut()) {
            *nw &= !*vw;
            *vw |= *nw;
            any |= *nw != 0;
        }
        if !any {
            break;
        }
        level += 1;
        for (wi, &nw) in next.iter().enumerate() {
            let mut w = nw;
            while w != 0 {
                out[wi * 64 + w.trailing_zeros() as usize] = level;
                w &= w - 1;
            }
        }
        std::mem::swap(&mut frontier, &mut next);
    }
}

/// Breadth-first search from every vertex, frontier expansion over the
/// packed adjacency rows. Sources are processed in parallel for larger graphs.
pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.order();
    let mut d = vec![0u32; n * n];
    if n >= 128 {
        d.par_chunks_mut(n.max(1))
            .enumerate()
            .for_each(|(s, row)| bfs_into(g, s, row));
    } else {
        for (s, row) in d.chunks_mut(n.max(1)).enumerate() {
            bfs_into(g, s, row);
        }
    }
    DistanceMatrix { n, d }
}

/// Single BFS connectivity test. The graph with no vertices counts as connected.
pub fn is_connected(g: &Graph) -> bool {
    let n = g.order();
    if n <= 1 {
        return true;
    }
    if let Some(masks) = g.masks() {
        return masks_connected(&masks, full_mask(n));
    }
    let mut out = vec![0u32; n];
    bfs_into(g, 0, &mut out);
    out.iter().all(|&d| d != DistanceMatrix::UNREACHABLE)
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Whether the subgraph induced by `allowed` is connected (empty counts as connected).
pub(crate) fn masks_connected(masks: &[u64], allowed: u64) -> bool {
    if allowed == 0 {
        return true;
    }
    let start = allowed & allowed.wrapping_neg();
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= masks[v];
        }
        next &= allowed & !seen;
        seen |= next;
        frontier = next;
    }
    seen == allowed
}

/// Pair-distance histogram of a graph of order at most 64, or `None` if it is
/// disconnected. `hist[d]` counts unordered pairs at distance `d`.
pub(crate) fn masks_histogram(masks: &[u64]) -> Option<Vec<u64>> {
    let n = masks.len();
    let all = full_mask(n);
    let mut hist = vec![0u64; 2];
    for s in 0..n {
        let mut seen = 1u64 << s;
        let mut frontier = seen;
        let mut level = 0usize;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= masks[v];
            }
            next &= !seen;
            seen |= next;
            frontier = next;
            level += 1;
            // count only partners with a larger index so each pair is seen once
            let count = (next >> s >> 1).count_ones() as u64;
            if count > 0 {
                if hist.len() <= level {
                    hist.resize(level + 1, 0);
                }
                hist[level] += count;
            }
        }
        if seen != all {
            return None;
        }
    }
    Some(hist)
}
