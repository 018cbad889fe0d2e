//! Spanning-subgraph tests against the extremal families, up to relabelings
//! that respect the bipartition.
//!
//! Each bipartite family is `K_{n,n}` (or `K_{n,n-1}`) minus a complete
//! block, and each general family is a few cliques glued by joins, so
//! containment reduces to finding a vertex set with few neighbours.

use thiserror::Error;

use super::GraphRef;
use crate::families::{FamilyError, FamilyKind, FamilyParams};
use crate::graph::BipartiteGraph;
use crate::metrics::for_each_subset;

/// Largest number of candidate subsets one membership test may examine.
pub const SUBSET_CAP: u128 = 50_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MembershipError {
    #[error("{0} is a bipartite family; the graph needs a fixed bipartition")]
    NeedsBipartition(FamilyKind),
    #[error("subset search over {subsets} candidates exceeds the cap of {cap}")]
    SizeCapExceeded { subsets: u128, cap: u128 },
    #[error("membership tests support at most 64 vertices, got {0}")]
    TooLarge(usize),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn check_cap(n: usize, r: usize) -> Result<(), MembershipError> {
    let subsets = binomial(n, r);
    if subsets > SUBSET_CAP {
        return Err(MembershipError::SizeCapExceeded {
            subsets,
            cap: SUBSET_CAP,
        });
    }
    Ok(())
}

/// Whether `g` is a spanning subgraph of some relabeling of `family`.
pub fn is_sub_family<'a>(
    g: impl Into<GraphRef<'a>>,
    family: FamilyParams,
) -> Result<bool, MembershipError> {
    let g = g.into();
    let FamilyParams { family, n, k } = FamilyParams::new(family.family, family.n, family.k)?;
    if g.graph().order() > 64 {
        return Err(MembershipError::TooLarge(g.graph().order()));
    }
    if family.is_bipartite() {
        let GraphRef::Bipartite(b) = g else {
            return Err(MembershipError::NeedsBipartition(family));
        };
        return bipartite_member(b, family, n, k);
    }
    if g.graph().order() != n {
        return Ok(false);
    }
    let masks = g.graph().masks().expect("order checked");
    match family {
        FamilyKind::LUnder => Ok(splits(&masks, full(n), k + 1)),
        FamilyKind::L => Ok((0..n).any(|v| splits(&masks, full(n) & !(1 << v), k))),
        FamilyKind::N => isolated_after_deleting(&masks, k, k),
        FamilyKind::NUnder => isolated_after_deleting(&masks, k, k + 1),
        _ => unreachable!("bipartite families handled above"),
    }
}

fn full(n: usize) -> u64 {
    crate::metrics::full_mask(n)
}

/// Neighbourhoods of one part as masks over the other part's local indices.
fn local_masks(b: &BipartiteGraph, from_x: bool) -> Vec<u64> {
    let (src, dst) = if from_x {
        (b.x(), b.y())
    } else {
        (b.y(), b.x())
    };
    let mut pos = vec![usize::MAX; b.graph().order()];
    for (i, &v) in dst.iter().enumerate() {
        pos[v] = i;
    }
    src.iter()
        .map(|&u| b.graph().neighbors(u).fold(0u64, |m, w| m | 1 << pos[w]))
        .collect()
}

fn bipartite_member(
    b: &BipartiteGraph,
    family: FamilyKind,
    n: usize,
    k: usize,
) -> Result<bool, MembershipError> {
    let (sx, sy) = b.part_sizes();
    let from_x = local_masks(b, true);
    let from_y = local_masks(b, false);
    // the part playing the role of the family's first part, tried both ways
    // whenever the sizes allow
    let mut orientations: Vec<(&[u64], &[u64])> = Vec::new();
    match family {
        FamilyKind::C => {
            // the empty block sits between k vertices of the smaller part
            // and n - k vertices of the larger part
            if (sx, sy) == (n, n - 1) {
                orientations.push((&from_y, &from_x));
            }
            if (sx, sy) == (n - 1, n) {
                orientations.push((&from_x, &from_y));
            }
        }
        _ => {
            if (sx, sy) == (n, n) {
                orientations.push((&from_x, &from_y));
                orientations.push((&from_y, &from_x));
            }
        }
    }
    for (side, other) in orientations {
        let found = match family {
            FamilyKind::B | FamilyKind::C => small_neighbourhood(side, k, k)?,
            FamilyKind::Q => small_neighbourhood(side, k + 1, k)?,
            FamilyKind::R => split_blocks(side, other, k)?,
            _ => unreachable!("general families handled by the caller"),
        };
        if found {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Some `size` vertices of this part have at most `limit` neighbours in total.
fn small_neighbourhood(side: &[u64], size: usize, limit: usize) -> Result<bool, MembershipError> {
    let cand: Vec<u64> = side
        .iter()
        .copied()
        .filter(|m| m.count_ones() as usize <= limit)
        .collect();
    if cand.len() < size {
        return Ok(false);
    }
    check_cap(cand.len(), size)?;
    let mut found = false;
    for_each_subset(cand.len(), size, |s| {
        let mut nb = 0u64;
        let mut bits = s;
        while bits != 0 {
            nb |= cand[bits.trailing_zeros() as usize];
            bits &= bits - 1;
        }
        found = nb.count_ones() as usize <= limit;
        found
    });
    Ok(found)
}

/// The bipartition splits into `k + k` and `(n-k) + (n-k)` with no edges
/// between the pieces: some `S` of size `k` on this side and `T` of size
/// `k` on the other with `N(S) ⊆ T` and `N(T) ⊆ S`.
fn split_blocks(side: &[u64], other: &[u64], k: usize) -> Result<bool, MembershipError> {
    check_cap(side.len(), k)?;
    let mut found = false;
    for_each_subset(side.len(), k, |s| {
        let mut nb = 0u64;
        let mut bits = s;
        while bits != 0 {
            nb |= side[bits.trailing_zeros() as usize];
            bits &= bits - 1;
        }
        if nb.count_ones() as usize > k {
            return false;
        }
        let mut closed = 0usize;
        for (y, &m) in other.iter().enumerate() {
            let inside = m & !s == 0;
            if nb >> y & 1 == 1 {
                if !inside {
                    return false;
                }
            } else if inside {
                closed += 1;
            }
        }
        found = nb.count_ones() as usize + closed >= k;
        found
    });
    Ok(found)
}

/// The components of `G[allowed]` can be grouped into exactly `target` vertices.
fn splits(masks: &[u64], allowed: u64, target: usize) -> bool {
    let mut sizes = Vec::new();
    let mut rest = allowed;
    while rest != 0 {
        let start = rest & rest.wrapping_neg();
        let mut seen = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                next |= masks[f.trailing_zeros() as usize];
                f &= f - 1;
            }
            next &= allowed & !seen;
            seen |= next;
            frontier = next;
        }
        sizes.push(seen.count_ones() as usize);
        rest &= !seen;
    }
    let mut reach = vec![false; target + 1];
    reach[0] = true;
    for s in sizes {
        for t in (s..=target).rev() {
            reach[t] |= reach[t - s];
        }
    }
    reach[target]
}

/// Some `k` deleted vertices leave at least `isolated` vertices of degree 0.
fn isolated_after_deleting(
    masks: &[u64],
    k: usize,
    isolated: usize,
) -> Result<bool, MembershipError> {
    let n = masks.len();
    check_cap(n, k)?;
    let mut found = false;
    for_each_subset(n, k, |s| {
        let count = (0..n)
            .filter(|&u| s >> u & 1 == 0 && masks[u] & !s == 0)
            .count();
        found = count >= isolated;
        found
    });
    Ok(found)
}
