//! Affine-in-`e(G)` bounds on the indices of the complement.
//!
//! Each bound reads `index(complement) <= a(n) + b(n) e(G)` (upper bounds on
//! W and WW) or `H(complement) >= a(n) + b(n) e(G)` (lower bounds on H).

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::catalog::Measure;
use super::facts::GraphFacts;
use super::formula::{Formula, FormulaError, Poly};
use super::GraphRef;
use crate::exact::{self, Rational};
use crate::metrics::MetricsError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BoundId {
    #[serde(rename = "L2.1")]
    BalancedWiener,
    #[serde(rename = "L2.2")]
    BalancedHyperWiener,
    #[serde(rename = "L2.3")]
    BalancedHarary,
    #[serde(rename = "L2.4")]
    Wiener,
    #[serde(rename = "L2.5")]
    HyperWiener,
    #[serde(rename = "L2.6")]
    Harary,
    #[serde(rename = "L2.x-nearly-W")]
    NearlyWiener,
    #[serde(rename = "L2.x-nearly-WW")]
    NearlyHyperWiener,
    #[serde(rename = "L2.x-nearly-H")]
    NearlyHarary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundClass {
    /// Parts of size `n` and `n`; measured on the quasi-complement.
    Balanced,
    /// Parts of size `n` and `n - 1`; measured on the quasi-complement.
    NearlyBalanced,
    /// Order `n`; measured on the complement.
    General,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundSpec {
    pub id: BoundId,
    pub class: BoundClass,
    pub measure: Measure,
    /// `true` when the index is bounded from below.
    pub lower: bool,
    pub constant: Formula,
    pub slope: Formula,
}

impl BoundId {
    pub const ALL: [BoundId; 9] = [
        BoundId::BalancedWiener,
        BoundId::BalancedHyperWiener,
        BoundId::BalancedHarary,
        BoundId::Wiener,
        BoundId::HyperWiener,
        BoundId::Harary,
        BoundId::NearlyWiener,
        BoundId::NearlyHyperWiener,
        BoundId::NearlyHarary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundId::BalancedWiener => "L2.1",
            BoundId::BalancedHyperWiener => "L2.2",
            BoundId::BalancedHarary => "L2.3",
            BoundId::Wiener => "L2.4",
            BoundId::HyperWiener => "L2.5",
            BoundId::Harary => "L2.6",
            BoundId::NearlyWiener => "L2.x-nearly-W",
            BoundId::NearlyHyperWiener => "L2.x-nearly-WW",
            BoundId::NearlyHarary => "L2.x-nearly-H",
        }
    }

    pub fn spec(self) -> &'static BoundSpec {
        static SPECS: OnceLock<Vec<BoundSpec>> = OnceLock::new();
        let specs = SPECS.get_or_init(|| BoundId::ALL.iter().map(|&id| build(id)).collect());
        &specs[BoundId::ALL
            .iter()
            .position(|&b| b == self)
            .expect("listed")]
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BoundId::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| format!("unknown bound {s:?}"))
    }
}

fn build(id: BoundId) -> BoundSpec {
    let n = Poly::n;
    let p = Formula::poly;
    let q = Poly::ratio;
    let (class, measure, lower, constant, slope) = match id {
        BoundId::BalancedWiener => (
            BoundClass::Balanced,
            Measure::Wiener,
            false,
            p(2 * n().pow(3) - 3 * n().pow(2) + 2 * n()),
            p(2 * (n() - 1)),
        ),
        BoundId::BalancedHyperWiener => (
            BoundClass::Balanced,
            Measure::HyperWiener,
            false,
            p(2 * n().pow(4) - 5 * n().pow(3) + 5 * n().pow(2) - n()),
            p(2 * n().pow(2) - n() - 1),
        ),
        BoundId::BalancedHarary => (
            BoundClass::Balanced,
            Measure::Harary,
            true,
            Formula::quotient(4 * n().pow(3) - n(), 4 * n() - 2),
            Formula::quotient(-(2 * n() - 2), 2 * n() - 1),
        ),
        BoundId::Wiener => (
            BoundClass::General,
            Measure::Wiener,
            false,
            p(q(1, 2) * n() * (n() - 1)),
            p(n() - 2),
        ),
        BoundId::HyperWiener => (
            BoundClass::General,
            Measure::HyperWiener,
            false,
            p(q(1, 2) * n() * (n() - 1)),
            p(q(1, 2) * (n().pow(2) - n() - 2)),
        ),
        BoundId::Harary => (
            BoundClass::General,
            Measure::Harary,
            true,
            p(q(1, 2) * (n().pow(2) - n())),
            Formula::quotient(-(n() - 2), n() - 1),
        ),
        BoundId::NearlyWiener => (
            BoundClass::NearlyBalanced,
            Measure::Wiener,
            false,
            p(2 * n().pow(3) - 6 * n().pow(2) + 8 * n() - 4),
            p(2 * (n() - 2)),
        ),
        BoundId::NearlyHyperWiener => (
            BoundClass::NearlyBalanced,
            Measure::HyperWiener,
            false,
            p(2 * n().pow(4) - 9 * n().pow(3) + q(37, 2) * n().pow(2) - q(35, 2) * n() + 6),
            p(2 * n().pow(2) - 5 * n() + 2),
        ),
        BoundId::NearlyHarary => (
            BoundClass::NearlyBalanced,
            Measure::Harary,
            true,
            Formula::quotient(4 * n().pow(3) - 8 * n().pow(2) + 3 * n(), 4 * n() - 6),
            Formula::quotient(-2 * (n() - 2), 2 * n() - 3),
        ),
    };
    BoundSpec {
        id,
        class,
        measure,
        lower,
        constant,
        slope,
    }
}

impl BoundSpec {
    pub fn rhs(&self, n: usize, edges: usize) -> Result<Rational, FormulaError> {
        let a = self.constant.eval(n as i64, 0)?;
        let b = self.slope.eval(n as i64, 0)?;
        Ok(a + b * exact::int(edges as i128))
    }

    /// `lhs <= rhs` for upper bounds, `lhs >= rhs` for lower bounds.
    pub fn satisfied(&self, lhs: &Rational, rhs: &Rational) -> bool {
        if self.lower {
            lhs >= rhs
        } else {
            lhs <= rhs
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEvaluation {
    pub id: BoundId,
    /// Order parameter of the bound (part size or order).
    pub n: usize,
    pub edges: usize,
    #[serde(with = "exact::ratio_str")]
    pub lhs: Rational,
    #[serde(with = "exact::ratio_str")]
    pub rhs: Rational,
    pub satisfied: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundError {
    #[error("{id} does not apply: {reason}")]
    WrongClass { id: BoundId, reason: String },
    #[error("the complement is disconnected")]
    DisconnectedComplement,
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Metrics(MetricsError),
}

/// Order parameter `n` of the bound for this graph, or why it does not apply.
pub fn bound_order(id: BoundId, g: GraphRef<'_>) -> Result<usize, BoundError> {
    let wrong = |reason: &str| BoundError::WrongClass {
        id,
        reason: reason.to_string(),
    };
    match (id.spec().class, g) {
        (BoundClass::General, g) => Ok(g.graph().order()),
        (BoundClass::Balanced, GraphRef::Bipartite(b)) => {
            let (a, c) = b.part_sizes();
            if a == c {
                Ok(a)
            } else {
                Err(wrong("parts differ in size"))
            }
        }
        (BoundClass::NearlyBalanced, GraphRef::Bipartite(b)) => {
            let (a, c) = b.part_sizes();
            if a.abs_diff(c) == 1 {
                Ok(a.max(c))
            } else {
                Err(wrong("parts do not differ by one"))
            }
        }
        (_, GraphRef::General(_)) => Err(wrong("needs a graph with a fixed bipartition")),
    }
}

pub fn evaluate_bound(id: BoundId, facts: &GraphFacts<'_>) -> Result<BoundEvaluation, BoundError> {
    let spec = id.spec();
    let n = bound_order(id, facts.graph_ref())?;
    let indices = match spec.class {
        BoundClass::General => facts.complement_indices(),
        _ => facts
            .quasi_complement_indices()
            .expect("bipartite input checked"),
    };
    let triple = match indices {
        Ok(t) => t,
        Err(MetricsError::DisconnectedGraph) => return Err(BoundError::DisconnectedComplement),
        Err(e) => return Err(BoundError::Metrics(*e)),
    };
    let lhs = match spec.measure {
        Measure::Wiener => exact::int(triple.wiener as i128),
        Measure::HyperWiener => exact::int(triple.hyper_wiener as i128),
        Measure::Harary => triple.harary.map_err(BoundError::Metrics)?,
        Measure::EdgeCount => unreachable!("bounds measure indices"),
    };
    let edges = facts.edge_count();
    let rhs = spec.rhs(n, edges)?;
    Ok(BoundEvaluation {
        id,
        n,
        edges,
        satisfied: spec.satisfied(&lhs, &rhs),
        lhs,
        rhs,
    })
}

/// Evaluates one bound lemma on `g`.
pub fn evaluate_bound_lemma<'a>(
    id: BoundId,
    g: impl Into<GraphRef<'a>>,
) -> Result<BoundEvaluation, BoundError> {
    evaluate_bound(id, &GraphFacts::new(g.into()))
}

/// Bounds whose graph class matches `g`.
pub fn matching_bounds(g: GraphRef<'_>) -> Vec<BoundId> {
    BoundId::ALL
        .into_iter()
        .filter(|&id| bound_order(id, g).is_ok())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::graph::{BipartiteGraph, Graph};

    #[test]
    fn cycle_on_five() {
        let ev = evaluate_bound_lemma(BoundId::Wiener, &Graph::cycle(5)).unwrap();
        assert_eq!((ev.lhs, ev.rhs, ev.satisfied), (int(15), int(25), true));
    }

    #[test]
    fn perfect_matching_quasi_complement_is_c6() {
        let g = BipartiteGraph::from_biadjacency(3, 3, [(0, 0), (1, 1), (2, 2)]).unwrap();
        let ev = evaluate_bound_lemma(BoundId::BalancedWiener, &g).unwrap();
        assert_eq!(ev.lhs, int(27));
        assert_eq!(ev.rhs, int(45));
        assert!(ev.satisfied);
        let h = evaluate_bound_lemma(BoundId::BalancedHarary, &g).unwrap();
        // H(C_6) = 6 + 6/2 + 3/3
        assert_eq!(h.lhs, int(10));
        assert_eq!(h.rhs, rat(105, 10) - rat(4, 5) * int(3));
        assert!(h.satisfied);
    }

    #[test]
    fn preconditions() {
        assert_eq!(
            evaluate_bound_lemma(BoundId::Harary, &Graph::complete(5)),
            Err(BoundError::DisconnectedComplement)
        );
        assert!(matches!(
            evaluate_bound_lemma(BoundId::BalancedWiener, &Graph::cycle(6)),
            Err(BoundError::WrongClass { .. })
        ));
        let unbalanced = BipartiteGraph::empty(3, 2);
        assert!(matches!(
            evaluate_bound_lemma(BoundId::BalancedWiener, &unbalanced),
            Err(BoundError::WrongClass { .. })
        ));
        assert_eq!(matching_bounds(GraphRef::from(&unbalanced)).len(), 6);
    }

    #[test]
    fn names_round_trip() {
        for id in BoundId::ALL {
            assert_eq!(id.name().parse::<BoundId>(), Ok(id));
            assert_eq!(serde_json::to_value(id).unwrap(), id.name());
        }
    }
}
