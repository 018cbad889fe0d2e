//! Bitmask dynamic programming over vertex subsets.
//!
//! `ends[mask]` is the set of vertices `v` such that some path visits exactly
//! the vertices of `mask` and finishes at `v`. Seeding only one start vertex
//! restricts the table to paths from that vertex.

use super::full;

/// Largest order the tables support (`2^n` entries of one `u32`).
pub const MAX_ORDER: usize = 30;

pub(crate) fn end_table(masks: &[u64], start: Option<usize>) -> Vec<u32> {
    let n = masks.len();
    debug_assert!(n <= MAX_ORDER);
    let mut ends = vec![0u32; 1usize << n];
    match start {
        Some(s) => ends[1 << s] = 1 << s,
        None => {
            for v in 0..n {
                ends[1 << v] = 1 << v;
            }
        }
    }
    for mask in 1usize..(1 << n) {
        let e = ends[mask];
        if e == 0 {
            continue;
        }
        let mut reach = 0u64;
        let mut f = e;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            reach |= masks[v];
        }
        let mut grow = reach & !(mask as u64);
        while grow != 0 {
            let u = grow.trailing_zeros() as usize;
            grow &= grow - 1;
            ends[mask | 1 << u] |= 1 << u;
        }
    }
    ends
}

/// Walks the table backwards from `end` to recover a path covering `mask`.
fn reconstruct(masks: &[u64], ends: &[u32], mut mask: usize, mut end: usize) -> Vec<usize> {
    let mut path = vec![end];
    while mask.count_ones() > 1 {
        let rest = mask & !(1 << end);
        let candidates = ends[rest] as u64 & masks[end];
        let prev = candidates.trailing_zeros() as usize;
        debug_assert!(candidates != 0);
        path.push(prev);
        mask = rest;
        end = prev;
    }
    path.reverse();
    path
}

pub(crate) fn hamiltonian_cycle(masks: &[u64]) -> Option<Vec<usize>> {
    let n = masks.len();
    if n < 3 {
        return None;
    }
    let ends = end_table(masks, Some(0));
    let all = full(n) as usize;
    let closing = ends[all] as u64 & masks[0];
    if closing == 0 {
        return None;
    }
    Some(reconstruct(
        masks,
        &ends,
        all,
        closing.trailing_zeros() as usize,
    ))
}

pub(crate) fn hamiltonian_path(masks: &[u64]) -> Option<Vec<usize>> {
    let n = masks.len();
    if n == 0 {
        return None;
    }
    let ends = end_table(masks, None);
    let all = full(n) as usize;
    let e = ends[all];
    (e != 0).then(|| reconstruct(masks, &ends, all, e.trailing_zeros() as usize))
}

/// A spanning path starts at `v` iff one ends at `v`.
pub(crate) fn traceable_from_every_vertex(masks: &[u64]) -> bool {
    let n = masks.len();
    if n == 0 {
        return false;
    }
    let ends = end_table(masks, None);
    ends[full(n) as usize] as u64 == full(n)
}

pub(crate) fn hamilton_connected(masks: &[u64]) -> bool {
    let n = masks.len();
    if n == 0 {
        return false;
    }
    let all = full(n);
    (0..n).all(|s| {
        let ends = end_table(masks, Some(s));
        (ends[all as usize] as u64 | 1 << s) == all
    })
}
