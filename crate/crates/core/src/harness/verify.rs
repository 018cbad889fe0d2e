//! Runs catalog entries over a corpus and cross-checks every firing
//! hypothesis against the oracles and the exception families.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::CorpusGraph;
use crate::conditions::{
    catalog, evaluate_bound, evaluate_condition, is_sub_family, matching_bounds, setting_order,
    BoundError, BoundEvaluation, BoundId, ConditionEntry, ConditionVerdict, FormulaError,
    GraphFacts, GraphRef, Setting,
};
use crate::families::FamilyParams;
use crate::hamiltonicity::{Oracle, OracleConfig, Property};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "consistent")]
    Consistent,
    #[serde(rename = "explained-by-exception")]
    Explained,
    /// An oracle or membership test hit its cap.
    #[serde(rename = "undecided")]
    Undecided,
    #[serde(rename = "FINDING")]
    Finding,
}

/// Which records reach the sink.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RecordPolicy {
    #[default]
    All,
    /// Records where some hypothesis fired or some bound was violated.
    Interesting,
    Findings,
    None,
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub entries: Vec<&'static ConditionEntry>,
    /// Lower end of the `k` sweep; entries never go below their own minimum.
    pub k_min: Option<u32>,
    /// Upper end of the `k` sweep. Without it the sweep stops at `δ(G)` and
    /// at the entry's size bound; with it every `k` up to the value is
    /// evaluated, so failing side conditions show up as verdicts.
    pub k_max: Option<u32>,
    pub oracle: OracleConfig,
    /// Also evaluate every bound lemma whose class matches.
    pub bounds: bool,
    pub records: RecordPolicy,
    pub parallel: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            entries: catalog().iter().collect(),
            k_min: None,
            k_max: None,
            oracle: OracleConfig::default(),
            bounds: true,
            records: RecordPolicy::All,
            parallel: true,
        }
    }
}

impl VerifyOptions {
    /// Restricts the run to the named entries; unknown ids are returned.
    pub fn with_entries<S: AsRef<str>>(mut self, ids: &[S]) -> Result<Self, String> {
        self.entries = ids
            .iter()
            .map(|id| crate::conditions::entry(id.as_ref()).ok_or_else(|| id.as_ref().to_string()))
            .collect::<Result<_, _>>()?;
        Ok(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckedVerdict {
    pub verdict: ConditionVerdict,
    pub status: Status,
}

/// Oracle answers computed for one graph; `None` where not needed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResults {
    pub traceable: Option<bool>,
    pub hamiltonian: Option<bool>,
    pub hamilton_connected: Option<bool>,
    pub traceable_from_every_vertex: Option<bool>,
}

impl OracleResults {
    fn slot(&mut self, p: Property) -> &mut Option<bool> {
        match p {
            Property::Traceable => &mut self.traceable,
            Property::Hamiltonian => &mut self.hamiltonian,
            Property::HamiltonConnected => &mut self.hamilton_connected,
            Property::TraceableFromEveryVertex => &mut self.traceable_from_every_vertex,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipResult {
    pub family: FamilyParams,
    pub member: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    /// Position in the corpus.
    pub index: usize,
    /// graph6 string.
    pub graph: String,
    /// Part `X` for bipartite inputs.
    pub bipartition: Option<Vec<usize>>,
    pub classes: Vec<String>,
    pub order: usize,
    pub edges: usize,
    pub k_tested: Vec<u32>,
    pub verdicts: Vec<CheckedVerdict>,
    pub oracle: OracleResults,
    pub bounds: Vec<BoundEvaluation>,
    pub memberships: Vec<MembershipResult>,
    pub status: Status,
    pub notes: Vec<String>,
}

impl VerificationRecord {
    fn interesting(&self) -> bool {
        self.verdicts.iter().any(|v| v.verdict.fires()) || self.bounds.iter().any(|b| !b.satisfied)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FindingKind {
    /// Hypothesis held, conclusion failed, no listed exception contains the graph.
    ConclusionRefuted,
    BoundViolated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub index: usize,
    pub graph: String,
    pub bipartition: Option<Vec<usize>>,
    pub kind: FindingKind,
    pub entry: Option<String>,
    pub bound: Option<BoundId>,
    pub k: Option<u32>,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryCoverage {
    pub id: String,
    /// Verdicts computed, one per (graph, k).
    pub evaluated: usize,
    pub applicable: usize,
    /// Applicable verdicts whose hypothesis held.
    pub hypothesis_holds: usize,
    /// Distinct graphs with at least one such verdict.
    pub graphs_fired: usize,
    /// Verdicts whose hypothesis held although a side condition failed.
    pub near_misses: usize,
    pub consistent: usize,
    pub explained: usize,
    pub undecided: usize,
    pub findings: usize,
    /// Firing theorem verdicts whose graph does not exceed the paired edge
    /// lemma threshold.
    pub proof_step_gaps: usize,
}

impl EntryCoverage {
    pub fn is_vacuous(&self) -> bool {
        self.hypothesis_holds == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCoverage {
    pub id: BoundId,
    pub evaluated: usize,
    pub satisfied: usize,
    pub violated: usize,
    /// Graphs of the right class whose complement is disconnected or where
    /// the bound is undefined.
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct VerificationReport {
    pub graphs: usize,
    pub records: Vec<VerificationRecord>,
    pub findings: Vec<Finding>,
    pub coverage: Vec<EntryCoverage>,
    pub bound_coverage: Vec<BoundCoverage>,
}

impl VerificationReport {
    pub fn coverage_for(&self, id: &str) -> Option<&EntryCoverage> {
        self.coverage.iter().find(|c| c.id == id)
    }

    pub fn bound_coverage_for(&self, id: BoundId) -> Option<&BoundCoverage> {
        self.bound_coverage.iter().find(|c| c.id == id)
    }

    pub fn vacuous_entries(&self) -> Vec<&str> {
        self.coverage
            .iter()
            .filter(|c| c.is_vacuous())
            .map(|c| c.id.as_str())
            .collect()
    }

    pub fn conclusion_findings(&self) -> usize {
        self.findings
            .iter()
            .filter(|f| f.kind == FindingKind::ConclusionRefuted)
            .count()
    }

    pub fn bound_violations(&self) -> usize {
        self.findings
            .iter()
            .filter(|f| f.kind == FindingKind::BoundViolated)
            .count()
    }
}

fn matches_class(setting: Setting, g: &CorpusGraph) -> bool {
    setting.is_bipartite() == matches!(g, CorpusGraph::Bipartite(_))
}

fn k_values(entry: &ConditionEntry, n: usize, min_degree: usize, opts: &VerifyOptions) -> Vec<u32> {
    let lo = opts.k_min.unwrap_or(1).max(entry.requirements.k_min);
    let hi = match opts.k_max {
        Some(m) => m.min(n as u32),
        None => (*entry.k_range(n).end()).min(min_degree as u32),
    };
    (lo..=hi).collect()
}

struct Outcome {
    record: VerificationRecord,
    findings: Vec<Finding>,
    fired: Vec<bool>,
    bound_skips: Vec<BoundId>,
}

fn verify_graph(index: usize, g: &CorpusGraph, opts: &VerifyOptions) -> Outcome {
    let gref = g.as_ref();
    let facts = GraphFacts::new(gref);
    let graph = gref.graph();
    let oracle = Oracle::new(opts.oracle);
    let mut record = VerificationRecord {
        index,
        graph: g.id(),
        bipartition: g.bipartition(),
        classes: g.classes(),
        order: graph.order(),
        edges: graph.edge_count(),
        k_tested: Vec::new(),
        verdicts: Vec::new(),
        oracle: OracleResults::default(),
        bounds: Vec::new(),
        memberships: Vec::new(),
        status: Status::Consistent,
        notes: Vec::new(),
    };
    let complement_ok = match gref {
        GraphRef::Bipartite(_) => facts.quasi_complement_indices().is_some_and(|r| r.is_ok()),
        GraphRef::General(_) => facts.complement_indices().is_ok(),
    };
    if complement_ok {
        record.classes.push(match gref {
            GraphRef::Bipartite(_) => "quasi-complement-connected".to_string(),
            GraphRef::General(_) => "complement-connected".to_string(),
        });
    }
    let mut findings = Vec::new();
    let mut fired = vec![false; opts.entries.len()];
    let mut memberships: BTreeMap<FamilyParams, Result<bool, String>> = BTreeMap::new();
    let delta = graph.min_degree().unwrap_or(0);

    for (ei, entry) in opts.entries.iter().enumerate() {
        if !matches_class(entry.setting, g) {
            continue;
        }
        let Ok(n) = setting_order(entry.setting, gref) else {
            continue;
        };
        for k in k_values(entry, n, delta, opts) {
            let verdict = match evaluate_condition(entry, &facts, k) {
                Ok(v) => v,
                Err(e) => {
                    record.notes.push(format!("{} at k = {k}: {e}", entry.id));
                    continue;
                }
            };
            if !record.k_tested.contains(&k) {
                record.k_tested.push(k);
            }
            let status = if verdict.fires() {
                fired[ei] = true;
                judge(&verdict, g, &oracle, &mut record, &mut memberships)
            } else {
                Status::Consistent
            };
            if status == Status::Finding {
                findings.push(Finding {
                    index,
                    graph: record.graph.clone(),
                    bipartition: record.bipartition.clone(),
                    kind: FindingKind::ConclusionRefuted,
                    entry: Some(entry.id.clone()),
                    bound: None,
                    k: Some(k),
                    detail: format!(
                        "{} fails; listed exceptions: {}",
                        verdict.conclusion,
                        if verdict.exceptions.is_empty() {
                            "none".to_string()
                        } else {
                            verdict
                                .exceptions
                                .iter()
                                .map(|p| p.to_string())
                                .collect::<Vec<_>>()
                                .join(", ")
                        }
                    ),
                });
            }
            record.status = record.status.max(status);
            record.verdicts.push(CheckedVerdict { verdict, status });
        }
    }
    record.k_tested.sort_unstable();

    let mut bound_skips = Vec::new();
    if opts.bounds {
        for id in matching_bounds(gref) {
            match evaluate_bound(id, &facts) {
                Ok(ev) => {
                    if !ev.satisfied {
                        findings.push(Finding {
                            index,
                            graph: record.graph.clone(),
                            bipartition: record.bipartition.clone(),
                            kind: FindingKind::BoundViolated,
                            entry: None,
                            bound: Some(id),
                            k: None,
                            detail: format!("lhs {} vs rhs {}", ev.lhs, ev.rhs),
                        });
                    }
                    record.bounds.push(ev);
                }
                Err(BoundError::DisconnectedComplement)
                | Err(BoundError::Formula(FormulaError::ZeroDenominator { .. })) => {
                    bound_skips.push(id)
                }
                Err(e) => {
                    record.notes.push(format!("{id}: {e}"));
                    bound_skips.push(id);
                }
            }
        }
    }
    record.memberships = memberships
        .into_iter()
        .map(|(family, r)| match r {
            Ok(m) => MembershipResult {
                family,
                member: Some(m),
                error: None,
            },
            Err(e) => MembershipResult {
                family,
                member: None,
                error: Some(e),
            },
        })
        .collect();
    Outcome {
        record,
        findings,
        fired,
        bound_skips,
    }
}

/// Status of a firing verdict.
fn judge(
    verdict: &ConditionVerdict,
    g: &CorpusGraph,
    oracle: &Oracle,
    record: &mut VerificationRecord,
    memberships: &mut BTreeMap<FamilyParams, Result<bool, String>>,
) -> Status {
    let slot = record.oracle.slot(verdict.conclusion);
    let holds = match *slot {
        Some(v) => v,
        None => match oracle.decide(g.graph(), verdict.conclusion) {
            Ok(v) => {
                *slot = Some(v);
                v
            }
            Err(e) => {
                record.notes.push(format!("{}: {e}", verdict.conclusion));
                return Status::Undecided;
            }
        },
    };
    if holds {
        return Status::Consistent;
    }
    let mut undecided = false;
    for &family in &verdict.exceptions {
        let r = memberships
            .entry(family)
            .or_insert_with(|| is_sub_family(g.as_ref(), family).map_err(|e| e.to_string()));
        match r {
            Ok(true) => return Status::Explained,
            Ok(false) => {}
            Err(_) => undecided = true,
        }
    }
    if undecided {
        Status::Undecided
    } else {
        Status::Finding
    }
}

const CHUNK: usize = 2048;

/// Verifies `corpus`, handing each record allowed by the policy to `sink`
/// in corpus order. The returned report carries no records.
pub fn verify_corpus_with<I>(
    corpus: I,
    opts: &VerifyOptions,
    mut sink: impl FnMut(VerificationRecord),
) -> VerificationReport
where
    I: IntoIterator<Item = CorpusGraph>,
{
    let mut report = VerificationReport {
        coverage: opts
            .entries
            .iter()
            .map(|e| EntryCoverage {
                id: e.id.clone(),
                ..EntryCoverage::default()
            })
            .collect(),
        bound_coverage: BoundId::ALL
            .iter()
            .map(|&id| BoundCoverage {
                id,
                evaluated: 0,
                satisfied: 0,
                violated: 0,
                skipped: 0,
            })
            .collect(),
        ..VerificationReport::default()
    };
    let mut iter = corpus.into_iter();
    let mut base = 0;
    loop {
        let chunk: Vec<CorpusGraph> = iter.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let outcomes: Vec<Outcome> = if opts.parallel {
            chunk
                .par_iter()
                .enumerate()
                .map(|(i, g)| verify_graph(base + i, g, opts))
                .collect()
        } else {
            chunk
                .iter()
                .enumerate()
                .map(|(i, g)| verify_graph(base + i, g, opts))
                .collect()
        };
        base += chunk.len();
        for out in outcomes {
            merge(&mut report, out, opts, &mut sink);
        }
    }
    report
}

fn merge(
    report: &mut VerificationReport,
    out: Outcome,
    opts: &VerifyOptions,
    sink: &mut impl FnMut(VerificationRecord),
) {
    report.graphs += 1;
    let index: BTreeMap<&str, usize> = report
        .coverage
        .iter()
        .enumerate()
        .map(|(i, c)| (c.id.as_str(), i))
        .collect();
    let mut slots = Vec::with_capacity(out.record.verdicts.len());
    for cv in &out.record.verdicts {
        slots.push(index[cv.verdict.id.as_str()]);
    }
    for (cv, i) in out.record.verdicts.iter().zip(slots) {
        let c = &mut report.coverage[i];
        let v = &cv.verdict;
        c.evaluated += 1;
        if v.applicable {
            c.applicable += 1;
        }
        if v.fires() {
            c.hypothesis_holds += 1;
            match cv.status {
                Status::Consistent => c.consistent += 1,
                Status::Explained => c.explained += 1,
                Status::Undecided => c.undecided += 1,
                Status::Finding => c.findings += 1,
            }
            if v.implied_edge_lemma == Some(false) {
                c.proof_step_gaps += 1;
            }
        } else if v.hypothesis_holds {
            c.near_misses += 1;
        }
    }
    for (c, fired) in report.coverage.iter_mut().zip(&out.fired) {
        if *fired {
            c.graphs_fired += 1;
        }
    }
    for ev in &out.record.bounds {
        let b = bound_slot(report, ev.id);
        b.evaluated += 1;
        if ev.satisfied {
            b.satisfied += 1;
        } else {
            b.violated += 1;
        }
    }
    for id in out.bound_skips {
        bound_slot(report, id).skipped += 1;
    }
    report.findings.extend(out.findings);
    let keep = match opts.records {
        RecordPolicy::All => true,
        RecordPolicy::Interesting => out.record.interesting(),
        RecordPolicy::Findings => {
            out.record.status == Status::Finding || out.record.bounds.iter().any(|b| !b.satisfied)
        }
        RecordPolicy::None => false,
    };
    if keep {
        sink(out.record);
    }
}

fn bound_slot(report: &mut VerificationReport, id: BoundId) -> &mut BoundCoverage {
    report
        .bound_coverage
        .iter_mut()
        .find(|b| b.id == id)
        .expect("every bound has a slot")
}

/// Verifies `corpus` and keeps the records allowed by the policy.
pub fn verify_corpus<I>(corpus: I, opts: &VerifyOptions) -> VerificationReport
where
    I: IntoIterator<Item = CorpusGraph>,
{
    let mut records = Vec::new();
    let mut report = verify_corpus_with(corpus, opts, |r| records.push(r));
    report.records = records;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate_family, FamilyKind};
    use crate::graph::{BipartiteGraph, Graph};

    fn only(ids: &[&str]) -> VerifyOptions {
        VerifyOptions::default().with_entries(ids).unwrap()
    }

    #[test]
    fn complete_bipartite_is_consistent() {
        let corpus = vec![CorpusGraph::Bipartite(BipartiteGraph::complete(5, 5))];
        let r = verify_corpus(corpus, &only(&["L4.1"]));
        assert_eq!(r.records.len(), 1);
        let rec = &r.records[0];
        assert_eq!(rec.k_tested, vec![1]);
        assert!(rec.verdicts[0].verdict.fires());
        assert_eq!(rec.oracle.hamiltonian, Some(true));
        assert_eq!(rec.status, Status::Consistent);
        assert_eq!(r.coverage_for("L4.1").unwrap().consistent, 1);
        assert!(r.findings.is_empty());
    }

    #[test]
    fn exception_explains_c72() {
        let c = generate_family(FamilyParams::new(FamilyKind::C, 7, 2).unwrap()).unwrap();
        let corpus = vec![CorpusGraph::from(c)];
        let mut opts = only(&["L5.1"]);
        opts.k_min = Some(2);
        opts.k_max = Some(2);
        let r = verify_corpus(corpus, &opts);
        let rec = &r.records[0];
        assert_eq!(rec.status, Status::Explained, "{rec:?}");
        assert_eq!(rec.oracle.traceable, Some(false));
        assert_eq!(rec.memberships[0].member, Some(true));
        assert_eq!(r.coverage_for("L5.1").unwrap().explained, 1);
        assert_eq!(r.conclusion_findings(), 0);
    }

    #[test]
    fn empty_corpus() {
        let r = verify_corpus(Vec::new(), &VerifyOptions::default());
        assert_eq!(r.graphs, 0);
        assert!(r.findings.is_empty());
        assert_eq!(r.coverage.len(), catalog().len());
        assert_eq!(r.vacuous_entries().len(), catalog().len());
    }

    #[test]
    fn classes_select_entries() {
        let corpus = vec![CorpusGraph::General(Graph::complete(7))];
        let r = verify_corpus(corpus, &VerifyOptions::default());
        let ids: Vec<_> = r.records[0]
            .verdicts
            .iter()
            .map(|v| v.verdict.id.as_str())
            .collect();
        assert!(ids.iter().all(|id| ["L8.1", "L9.1", "T8", "T9"]
            .iter()
            .any(|p| id.starts_with(p))));
        assert!(ids.contains(&"L8.1"));
        // k = 2..=6 are swept; at k = 6 the threshold equals e(K_7) = 21
        assert_eq!(r.coverage_for("L8.1").unwrap().applicable, 5);
        assert_eq!(r.coverage_for("L8.1").unwrap().hypothesis_holds, 4);
        assert_eq!(r.coverage_for("L8.1").unwrap().graphs_fired, 1);
    }

    #[test]
    fn explicit_k_shows_side_conditions() {
        let corpus = vec![CorpusGraph::Bipartite(BipartiteGraph::complete(4, 4))];
        let mut opts = only(&["L4.1"]);
        opts.k_min = Some(1);
        opts.k_max = Some(1);
        let r = verify_corpus(corpus, &opts);
        let c = r.coverage_for("L4.1").unwrap();
        assert_eq!((c.evaluated, c.applicable, c.near_misses), (1, 0, 1));
    }

    #[test]
    fn parallel_and_serial_agree() {
        let corpus: Vec<_> = crate::harness::enumerate_labeled_graphs(5, Default::default())
            .unwrap()
            .map(CorpusGraph::General)
            .collect();
        let mut opts = VerifyOptions::default();
        let a = verify_corpus(corpus.clone(), &opts);
        opts.parallel = false;
        assert_eq!(a, verify_corpus(corpus, &opts));
    }
}
