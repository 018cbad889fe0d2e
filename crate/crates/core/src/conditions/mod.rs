//! Catalog of the edge-count and index conditions for hamiltonian
//! properties, their applicability checks, the complement index bounds
//! behind them, and membership tests for the exception families.

mod bounds;
mod catalog;
mod facts;
mod formula;
mod membership;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use bounds::{
    bound_order, evaluate_bound, evaluate_bound_lemma, matching_bounds, BoundClass, BoundError,
    BoundEvaluation, BoundId, BoundSpec,
};
pub use catalog::{
    catalog, entry, Comparator, ConditionEntry, EntryKind, ExceptionRule, KFilter, Measure,
    Requirements, Setting, SizeBound,
};
pub use facts::GraphFacts;
pub use formula::{Formula, FormulaError, Poly, Term};
pub use membership::{is_sub_family, MembershipError, SUBSET_CAP};

use crate::exact::{self, Rational};
use crate::families::{FamilyError, FamilyParams};
use crate::graph::{BipartiteGraph, Graph};
use crate::hamiltonicity::Property;
use crate::metrics::{MetricsError, PartialTriple};

/// A graph, with its bipartition when it has a fixed one.
#[derive(Debug, Clone, Copy)]
pub enum GraphRef<'a> {
    General(&'a Graph),
    Bipartite(&'a BipartiteGraph),
}

impl<'a> GraphRef<'a> {
    pub fn graph(&self) -> &'a Graph {
        match self {
            GraphRef::General(g) => g,
            GraphRef::Bipartite(b) => b.graph(),
        }
    }
}

impl<'a> From<&'a Graph> for GraphRef<'a> {
    fn from(g: &'a Graph) -> Self {
        GraphRef::General(g)
    }
}

impl<'a> From<&'a BipartiteGraph> for GraphRef<'a> {
    fn from(b: &'a BipartiteGraph) -> Self {
        GraphRef::Bipartite(b)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConditionError {
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("k must be at least {min}, got {k}")]
    KTooSmall { k: u32, min: u32 },
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// Outcome of one catalog entry on one graph at one `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionVerdict {
    pub id: String,
    pub k: u32,
    /// Order parameter of the entry (part size or order); absent when the
    /// graph has the wrong class.
    pub n: Option<usize>,
    pub applicable: bool,
    /// First failed side condition.
    pub reason: Option<String>,
    pub hypothesis_holds: bool,
    #[serde(with = "exact::opt_ratio_str")]
    pub lhs: Option<Rational>,
    #[serde(with = "exact::opt_ratio_str")]
    pub rhs: Option<Rational>,
    pub conclusion: Property,
    /// Exception families listed for this `k`.
    pub exceptions: Vec<FamilyParams>,
    /// For index theorems that are applicable with a holding hypothesis:
    /// whether the edge count also exceeds the paired edge lemma's threshold.
    pub implied_edge_lemma: Option<bool>,
}

impl ConditionVerdict {
    /// The conclusion is promised unless an exception applies.
    pub fn fires(&self) -> bool {
        self.applicable && self.hypothesis_holds
    }
}

/// Order parameter `n` for the setting (part size or order), or why the
/// graph has the wrong class.
pub fn setting_order(setting: Setting, g: GraphRef<'_>) -> Result<usize, String> {
    match (setting, g) {
        (Setting::General | Setting::KConnected, g) => Ok(g.graph().order()),
        (Setting::BalancedBipartite, GraphRef::Bipartite(b)) => {
            let (a, c) = b.part_sizes();
            if a == c {
                Ok(a)
            } else {
                Err(format!("parts have sizes {a} and {c}, not balanced"))
            }
        }
        (Setting::NearlyBalanced, GraphRef::Bipartite(b)) => {
            let (a, c) = b.part_sizes();
            if a.abs_diff(c) == 1 {
                Ok(a.max(c))
            } else {
                Err(format!("parts have sizes {a} and {c}, not nearly balanced"))
            }
        }
        (_, GraphRef::General(_)) => Err("needs a graph with a fixed bipartition".to_string()),
    }
}

fn measured(entry: &ConditionEntry, facts: &GraphFacts<'_>) -> Result<Rational, MetricsError> {
    let triple: &PartialTriple = match entry.measure {
        Measure::EdgeCount => return Ok(exact::int(facts.edge_count() as i128)),
        _ if entry.setting.is_bipartite() => match facts.quasi_complement_indices() {
            Some(r) => r.as_ref().map_err(|e| *e)?,
            None => return Err(MetricsError::DisconnectedGraph),
        },
        _ => facts.complement_indices().as_ref().map_err(|e| *e)?,
    };
    match entry.measure {
        Measure::Wiener => Ok(exact::int(triple.wiener as i128)),
        Measure::HyperWiener => Ok(exact::int(triple.hyper_wiener as i128)),
        Measure::Harary => triple.harary,
        Measure::EdgeCount => unreachable!(),
    }
}

/// Evaluates `entry` on the graph behind `facts` at parameter `k`.
///
/// Side conditions are checked in the order class, `k` range, size bound,
/// minimum degree, connectivity, complement connectivity; the first failure
/// becomes `reason`. The measured value and threshold are reported whenever
/// they are defined, applicable or not.
pub fn evaluate_condition(
    entry: &ConditionEntry,
    facts: &GraphFacts<'_>,
    k: u32,
) -> Result<ConditionVerdict, ConditionError> {
    let req = entry.requirements;
    if k < req.k_min {
        return Err(ConditionError::KTooSmall { k, min: req.k_min });
    }
    let mut verdict = ConditionVerdict {
        id: entry.id.clone(),
        k,
        n: None,
        applicable: false,
        reason: None,
        hypothesis_holds: false,
        lhs: None,
        rhs: None,
        conclusion: entry.conclusion,
        exceptions: Vec::new(),
        implied_edge_lemma: None,
    };
    let n = match setting_order(entry.setting, facts.graph_ref()) {
        Ok(n) => n,
        Err(reason) => {
            verdict.reason = Some(reason);
            return Ok(verdict);
        }
    };
    verdict.n = Some(n);
    let rhs = match entry.threshold.eval(n as i64, k as i64) {
        Ok(r) => Some(r),
        Err(FormulaError::ZeroDenominator { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let lhs = measured(entry, facts);
    verdict.lhs = lhs.as_ref().ok().copied();
    verdict.rhs = rhs;
    if let (Some(l), Some(r)) = (&verdict.lhs, &verdict.rhs) {
        verdict.hypothesis_holds = entry.comparator.holds(l, r);
    }
    for rule in entry.exceptions_for(k) {
        if let Ok(p) = FamilyParams::new(rule.family, n, k as usize) {
            verdict.exceptions.push(p);
        }
    }

    let reason = if let Some(size) = req.size.filter(|s| !s.admits(n, k)) {
        Some(format!("n = {n} < {}k + {}", size.coeff, size.offset))
    } else if req.min_degree_at_least_k && facts.min_degree().is_none_or(|d| (d as u32) < k) {
        Some(format!("minimum degree below k = {k}"))
    } else if req.k_connected && !is_k_connected(facts, k) {
        Some(format!("not {k}-connected"))
    } else if let (true, Err(e)) = (req.complement_connected, &lhs) {
        let which = if entry.setting.is_bipartite() {
            "quasi-complement"
        } else {
            "complement"
        };
        Some(match e {
            MetricsError::Overflow => format!("H of the {which} overflows exact arithmetic"),
            _ => format!("{which} is disconnected"),
        })
    } else if rhs.is_none() {
        Some(format!("threshold undefined at n = {n}"))
    } else {
        None
    };
    verdict.applicable = reason.is_none();
    verdict.reason = reason;

    if verdict.fires() && entry.kind == EntryKind::IndexTheorem {
        if let Some(lemma) = entry.edge_lemma.as_deref().and_then(catalog::entry) {
            let e = lemma.threshold.eval(n as i64, k as i64)?;
            verdict.implied_edge_lemma = Some(exact::int(facts.edge_count() as i128) > e);
        }
    }
    Ok(verdict)
}

fn is_k_connected(facts: &GraphFacts<'_>, k: u32) -> bool {
    facts.graph().order() > k as usize && facts.vertex_connectivity() >= k as usize
}

/// Looks up `id` and evaluates it on `g`.
pub fn evaluate_condition_id<'a>(
    id: &str,
    g: impl Into<GraphRef<'a>>,
    k: u32,
) -> Result<ConditionVerdict, ConditionError> {
    let entry = catalog::entry(id).ok_or_else(|| ConditionError::UnknownEntry(id.to_string()))?;
    evaluate_condition(entry, &GraphFacts::new(g.into()), k)
}

/// Rederivation of the first step of an index theorem: its hypothesis and
/// the paired bound `a(n) + b(n) e` force a minimum edge count, which should
/// exceed the edge lemma's threshold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdConsistency {
    pub id: String,
    pub n: usize,
    pub k: u32,
    pub bound: BoundId,
    pub edge_lemma: String,
    /// Edge count at which the bound meets the threshold.
    #[serde(with = "exact::ratio_str")]
    pub crossover: Rational,
    /// Least edge count compatible with the hypothesis and the bound.
    pub min_edges: i128,
    #[serde(with = "exact::ratio_str")]
    pub lemma_threshold: Rational,
    pub consistent: bool,
}

/// Checks the bound-to-lemma step of an index theorem at `(n, k)`.
pub fn threshold_consistency(
    entry: &ConditionEntry,
    n: usize,
    k: u32,
) -> Result<Option<ThresholdConsistency>, ConditionError> {
    let (Some(bound), Some(lemma_id)) = (entry.bound, entry.edge_lemma.as_ref()) else {
        return Ok(None);
    };
    let lemma =
        catalog::entry(lemma_id).ok_or_else(|| ConditionError::UnknownEntry(lemma_id.clone()))?;
    let spec = bound.spec();
    let (ni, ki) = (n as i64, k as i64);
    let t = entry.threshold.eval(ni, ki)?;
    let a = spec.constant.eval(ni, 0)?;
    let b = spec.slope.eval(ni, 0)?;
    if b == exact::int(0) {
        return Err(FormulaError::ZeroDenominator { n: ni, k: ki }.into());
    }
    // W-type: a + b e >= W > T with b > 0; H-type: a + b e <= H < T with
    // b < 0. Either way e > (T - a) / b, or e >= for a non-strict comparator.
    let x = (t - a) / b;
    let min_edges = if entry.comparator.is_strict() {
        x.numer().div_floor(x.denom()) + 1
    } else {
        x.numer().div_ceil(x.denom())
    };
    let lemma_threshold = lemma.threshold.eval(ni, ki)?;
    Ok(Some(ThresholdConsistency {
        id: entry.id.clone(),
        n,
        k,
        bound,
        edge_lemma: lemma_id.clone(),
        crossover: x,
        min_edges,
        consistent: exact::int(min_edges) > lemma_threshold,
        lemma_threshold,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate_family, FamilyKind};
    use crate::graph::complement;

    #[test]
    fn l41_on_complete_bipartite() {
        let k55 = BipartiteGraph::complete(5, 5);
        let v = evaluate_condition_id("L4.1", &k55, 1).unwrap();
        assert!(v.applicable, "{v:?}");
        assert!(v.hypothesis_holds);
        assert_eq!(v.lhs, Some(exact::int(25)));
        assert_eq!(v.rhs, Some(exact::int(19)));
        assert_eq!(v.conclusion, Property::Hamiltonian);
        assert_eq!(
            v.exceptions,
            vec![FamilyParams::new(FamilyKind::B, 5, 1).unwrap()]
        );
    }

    #[test]
    fn disconnected_complement_is_not_applicable() {
        let v = evaluate_condition_id("T7.2", &Graph::complete(16), 1).unwrap();
        assert!(!v.applicable);
        assert_eq!(v.reason.as_deref(), Some("complement is disconnected"));
        assert_eq!(v.lhs, None);
        assert_eq!(v.rhs, Some(exact::int(1530)));
    }

    #[test]
    fn harary_overflow_is_not_disconnection() {
        // Ḡ = P_90: H needs lcm(1..89), W and WW do not
        let g = complement(&Graph::path(90));
        let w = evaluate_condition_id("T6.2", &g, 1).unwrap();
        assert!(w.applicable, "{w:?}");
        assert_eq!(w.lhs, Some(exact::int(121485)));
        let h = evaluate_condition_id("T6.4", &g, 1).unwrap();
        assert!(!h.applicable);
        assert_eq!(
            h.reason.as_deref(),
            Some("H of the complement overflows exact arithmetic")
        );
    }

    #[test]
    fn class_mismatch_is_a_verdict() {
        let v = evaluate_condition_id("L3.1", &Graph::cycle(10), 1).unwrap();
        assert!(!v.applicable);
        assert_eq!(v.n, None);
        let unbalanced = BipartiteGraph::complete(5, 4);
        assert!(
            !evaluate_condition_id("T4.2", &unbalanced, 1)
                .unwrap()
                .applicable
        );
        assert_eq!(
            evaluate_condition_id("T9.9", &Graph::cycle(4), 1),
            Err(ConditionError::UnknownEntry("T9.9".into()))
        );
        assert_eq!(
            evaluate_condition_id("L8.1", &Graph::cycle(4), 1),
            Err(ConditionError::KTooSmall { k: 1, min: 2 })
        );
    }

    #[test]
    fn near_misses_keep_values() {
        // n = 4 < 2k + 3, yet the edge count is still compared
        let k44 = BipartiteGraph::complete(4, 4);
        let v = evaluate_condition_id("L4.1", &k44, 1).unwrap();
        assert!(!v.applicable);
        assert!(v.hypothesis_holds);
        assert_eq!(v.reason.as_deref(), Some("n = 4 < 2k + 3"));
    }

    #[test]
    fn l51_on_its_exception() {
        let c = generate_family(FamilyParams::new(FamilyKind::C, 7, 2).unwrap()).unwrap();
        let b = c.as_bipartite().unwrap();
        let v = evaluate_condition_id("L5.1", b, 2).unwrap();
        assert!(v.fires(), "{v:?}");
        assert_eq!(v.lhs, Some(exact::int(32)));
        assert_eq!(v.rhs, Some(exact::int(30)));
        assert!(is_sub_family(b, v.exceptions[0]).unwrap());
    }

    #[test]
    fn connectivity_requirement() {
        let v = evaluate_condition_id("L8.1", &Graph::path(7), 2).unwrap();
        assert_eq!(v.reason.as_deref(), Some("not 2-connected"));
        let w = evaluate_condition_id("L9.1", &Graph::cycle(7), 2).unwrap();
        assert!(w.applicable, "{w:?}");
    }

    #[test]
    fn consistency_of_edge_lemma_steps() {
        let t42 = entry("T4.2").unwrap();
        let c = threshold_consistency(t42, 9, 1).unwrap().unwrap();
        assert_eq!(c.edge_lemma, "L4.1");
        assert_eq!(c.bound, BoundId::BalancedWiener);
        assert!(c.consistent, "{c:?}");
        assert!(threshold_consistency(entry("L4.1").unwrap(), 9, 1)
            .unwrap()
            .is_none());
    }
}
