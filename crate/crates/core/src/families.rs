//! Generators for the eight extremal families `B, C, R, Q, L, N, L̲, N̲`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{bipartite_join, bipartite_union, disjoint_union, join, BipartiteGraph, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    B,
    C,
    R,
    Q,
    L,
    N,
    #[serde(rename = "L_under")]
    LUnder,
    #[serde(rename = "N_under")]
    NUnder,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 8] = [
        FamilyKind::B,
        FamilyKind::C,
        FamilyKind::R,
        FamilyKind::Q,
        FamilyKind::L,
        FamilyKind::N,
        FamilyKind::LUnder,
        FamilyKind::NUnder,
    ];

    pub fn is_bipartite(self) -> bool {
        matches!(
            self,
            FamilyKind::B | FamilyKind::C | FamilyKind::R | FamilyKind::Q
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::B => "B",
            FamilyKind::C => "C",
            FamilyKind::R => "R",
            FamilyKind::Q => "Q",
            FamilyKind::L => "L",
            FamilyKind::N => "N",
            FamilyKind::LUnder => "L_under",
            FamilyKind::NUnder => "N_under",
        }
    }

    /// Largest admissible `k` for size parameter `n`.
    pub fn max_k(self, n: usize) -> usize {
        match self {
            FamilyKind::B | FamilyKind::C | FamilyKind::R | FamilyKind::Q => n / 2,
            FamilyKind::L | FamilyKind::N => n.saturating_sub(1) / 2,
            FamilyKind::LUnder | FamilyKind::NUnder => n.saturating_sub(2) / 2,
        }
    }

    /// Number of vertices of the generated graph.
    pub fn order(self, n: usize) -> usize {
        match self {
            FamilyKind::B | FamilyKind::R | FamilyKind::Q => 2 * n,
            FamilyKind::C => 2 * n - 1,
            _ => n,
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("unknown family `{0}` (expected one of B, C, R, Q, L, N, L_under, N_under)")]
    UnknownFamily(String),
    #[error("k = {k} out of range for {family} with n = {n} (need 1 <= k <= {max})")]
    OutOfRange {
        family: FamilyKind,
        n: usize,
        k: usize,
        max: usize,
    },
}

impl FromStr for FamilyKind {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "B" => FamilyKind::B,
            "C" => FamilyKind::C,
            "R" => FamilyKind::R,
            "Q" => FamilyKind::Q,
            "L" => FamilyKind::L,
            "N" => FamilyKind::N,
            "L_under" | "Lu" => FamilyKind::LUnder,
            "N_under" | "Nu" => FamilyKind::NUnder,
            other => return Err(FamilyError::UnknownFamily(other.to_string())),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyParams {
    pub family: FamilyKind,
    pub n: usize,
    pub k: usize,
}

impl FamilyParams {
    pub fn new(family: FamilyKind, n: usize, k: usize) -> Result<Self, FamilyError> {
        let max = family.max_k(n);
        if k < 1 || k > max {
            return Err(FamilyError::OutOfRange { family, n, k, max });
        }
        Ok(FamilyParams { family, n, k })
    }

    /// Every valid `k` for this family and `n`.
    pub fn all_k(family: FamilyKind, n: usize) -> impl Iterator<Item = FamilyParams> {
        (1..=family.max_k(n)).map(move |k| FamilyParams { family, n, k })
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}^{}", self.family, self.n, self.k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyGraph {
    Bipartite(BipartiteGraph),
    General(Graph),
}

impl FamilyGraph {
    pub fn graph(&self) -> &Graph {
        match self {
            FamilyGraph::Bipartite(b) => b.graph(),
            FamilyGraph::General(g) => g,
        }
    }

    pub fn into_graph(self) -> Graph {
        match self {
            FamilyGraph::Bipartite(b) => b.into_graph(),
            FamilyGraph::General(g) => g,
        }
    }

    pub fn as_bipartite(&self) -> Option<&BipartiteGraph> {
        match self {
            FamilyGraph::Bipartite(b) => Some(b),
            FamilyGraph::General(_) => None,
        }
    }
}

fn many_k1(count: usize) -> Graph {
    Graph::empty(count)
}

/// Builds the named member of an extremal family.
///
/// Vertex labels follow the construction left to right. For `C_n^k` the
/// construction yields parts of sizes `(n - 1, n)`; the result is stored
/// with the larger part as `X`.
pub fn generate_family(p: FamilyParams) -> Result<FamilyGraph, FamilyError> {
    let FamilyParams { family, n, k } = FamilyParams::new(p.family, p.n, p.k)?;
    Ok(match family {
        FamilyKind::B => FamilyGraph::Bipartite(bipartite_join(
            &BipartiteGraph::empty(k, n - k),
            &BipartiteGraph::complete(n - k, k),
        )),
        FamilyKind::C => FamilyGraph::Bipartite(
            bipartite_join(
                &BipartiteGraph::empty(k, n - k),
                &BipartiteGraph::complete(n - k - 1, k),
            )
            .larger_part_first(),
        ),
        FamilyKind::R => FamilyGraph::Bipartite(bipartite_union(
            &BipartiteGraph::complete(k, k),
            &BipartiteGraph::complete(n - k, n - k),
        )),
        FamilyKind::Q => FamilyGraph::Bipartite(bipartite_join(
            &BipartiteGraph::empty(k + 1, n - k),
            &BipartiteGraph::complete(n - k - 1, k),
        )),
        FamilyKind::L => FamilyGraph::General(join(
            &Graph::complete(1),
            &disjoint_union(&Graph::complete(k), &Graph::complete(n - k - 1)),
        )),
        FamilyKind::N => FamilyGraph::General(join(
            &Graph::complete(k),
            &disjoint_union(&Graph::complete(n - 2 * k), &many_k1(k)),
        )),
        FamilyKind::LUnder => FamilyGraph::General(disjoint_union(
            &Graph::complete(k + 1),
            &Graph::complete(n - k - 1),
        )),
        FamilyKind::NUnder => FamilyGraph::General(join(
            &Graph::complete(k),
            &disjoint_union(&Graph::complete(n - 2 * k - 1), &many_k1(k + 1)),
        )),
    })
}
