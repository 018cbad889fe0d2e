use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::bounds::BoundId;
use super::formula::{Formula, Poly};
use crate::exact::Rational;
use crate::families::FamilyKind;
use crate::hamiltonicity::Property;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Setting {
    /// Bipartite with parts of size `n` and `n`.
    #[serde(rename = "balanced-bipartite-2n")]
    BalancedBipartite,
    /// Bipartite with parts of size `n` and `n - 1`.
    #[serde(rename = "nearly-balanced-2n-1")]
    NearlyBalanced,
    #[serde(rename = "general-n")]
    General,
    #[serde(rename = "k-connected-n")]
    KConnected,
}

impl Setting {
    pub fn is_bipartite(self) -> bool {
        matches!(self, Setting::BalancedBipartite | Setting::NearlyBalanced)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Measure {
    EdgeCount,
    Wiener,
    HyperWiener,
    Harary,
}

impl Measure {
    pub fn symbol(self) -> &'static str {
        match self {
            Measure::EdgeCount => "e",
            Measure::Wiener => "W",
            Measure::HyperWiener => "WW",
            Measure::Harary => "H",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Comparator {
    #[serde(rename = ">")]
    Greater,
    #[serde(rename = "<")]
    Less,
    #[serde(rename = "<=")]
    LessEq,
}

impl Comparator {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Comparator::Greater => lhs > rhs,
            Comparator::Less => lhs < rhs,
            Comparator::LessEq => lhs <= rhs,
        }
    }

    pub fn is_strict(self) -> bool {
        !matches!(self, Comparator::LessEq)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Comparator::Greater => ">",
            Comparator::Less => "<",
            Comparator::LessEq => "<=",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "when", content = "value")]
pub enum KFilter {
    Any,
    Equals(u32),
    AtMost(u32),
}

impl KFilter {
    pub fn admits(self, k: u32) -> bool {
        match self {
            KFilter::Any => true,
            KFilter::Equals(v) => k == v,
            KFilter::AtMost(v) => k <= v,
        }
    }
}

/// "unless `G ⊆ F_n^k`", possibly only for some `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExceptionRule {
    pub family: FamilyKind,
    pub k: KFilter,
}

/// `n >= coeff * k + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeBound {
    pub coeff: u32,
    pub offset: u32,
}

impl SizeBound {
    pub fn admits(self, n: usize, k: u32) -> bool {
        n as u64 >= self.coeff as u64 * k as u64 + self.offset as u64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Requirements {
    pub k_min: u32,
    pub min_degree_at_least_k: bool,
    pub size: Option<SizeBound>,
    pub k_connected: bool,
    /// The complement (ordinary or quasi) must be connected.
    pub complement_connected: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryKind {
    EdgeLemma,
    IndexTheorem,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionEntry {
    pub id: String,
    pub kind: EntryKind,
    pub setting: Setting,
    pub measure: Measure,
    pub comparator: Comparator,
    pub threshold: Formula,
    pub conclusion: Property,
    pub exceptions: Vec<ExceptionRule>,
    pub requirements: Requirements,
    /// Edge lemma the theorem reduces to.
    pub edge_lemma: Option<String>,
    /// Index bound used in that reduction.
    pub bound: Option<BoundId>,
    /// Readable hypothesis and conclusion.
    pub statement: String,
    pub notes: Vec<String>,
}

impl ConditionEntry {
    pub fn exceptions_for(&self, k: u32) -> Vec<ExceptionRule> {
        self.exceptions
            .iter()
            .copied()
            .filter(|e| e.k.admits(k))
            .collect()
    }

    /// `G` for edge counts, `Ĝ` for bipartite index settings, `Ḡ` otherwise.
    pub fn measured_graph(&self) -> &'static str {
        match (self.measure, self.setting.is_bipartite()) {
            (Measure::EdgeCount, _) => "G",
            (_, true) => "Ĝ",
            (_, false) => "Ḡ",
        }
    }

    /// Values of `k` that `k_min` and the size bound allow at order parameter `n`.
    pub fn k_range(&self, n: usize) -> std::ops::RangeInclusive<u32> {
        let lo = self.requirements.k_min;
        let hi = match self.requirements.size {
            Some(b) if b.coeff > 0 => {
                match n.checked_sub(b.offset as usize) {
                    Some(m) => (m / b.coeff as usize) as u32,
                    None => return lo..=lo.saturating_sub(1),
                }
            }
            _ => n.saturating_sub(1) as u32,
        };
        lo..=hi
    }
}

struct Spec {
    id: &'static str,
    setting: Setting,
    measure: Measure,
    comparator: Comparator,
    threshold: Formula,
    conclusion: Property,
    exceptions: Vec<ExceptionRule>,
    notes: &'static [&'static str],
}

fn any(family: FamilyKind) -> ExceptionRule {
    ExceptionRule {
        family,
        k: KFilter::Any,
    }
}

fn build(spec: Spec) -> ConditionEntry {
    let kind = if spec.measure == Measure::EdgeCount {
        EntryKind::EdgeLemma
    } else {
        EntryKind::IndexTheorem
    };
    let section = &spec.id[1..2];
    let size = match spec.setting {
        Setting::BalancedBipartite => Some(SizeBound {
            coeff: 2,
            offset: 3,
        }),
        Setting::NearlyBalanced => Some(SizeBound {
            coeff: 2,
            offset: 1,
        }),
        Setting::General if section == "6" => Some(SizeBound {
            coeff: 6,
            offset: 10,
        }),
        Setting::General => Some(SizeBound {
            coeff: 6,
            offset: 5,
        }),
        Setting::KConnected => None,
    };
    let k_connected = spec.setting == Setting::KConnected;
    let requirements = Requirements {
        k_min: if k_connected { 2 } else { 1 },
        min_degree_at_least_k: !k_connected,
        size,
        k_connected,
        complement_connected: kind == EntryKind::IndexTheorem,
    };
    let bound = match (kind, spec.setting, spec.measure) {
        (EntryKind::EdgeLemma, _, _) => None,
        (_, Setting::BalancedBipartite, Measure::Wiener) => Some(BoundId::BalancedWiener),
        (_, Setting::BalancedBipartite, Measure::HyperWiener) => Some(BoundId::BalancedHyperWiener),
        (_, Setting::BalancedBipartite, Measure::Harary) => Some(BoundId::BalancedHarary),
        (_, Setting::NearlyBalanced, Measure::Wiener) => Some(BoundId::NearlyWiener),
        (_, Setting::NearlyBalanced, Measure::HyperWiener) => Some(BoundId::NearlyHyperWiener),
        (_, Setting::NearlyBalanced, Measure::Harary) => Some(BoundId::NearlyHarary),
        (_, _, Measure::Wiener) => Some(BoundId::Wiener),
        (_, _, Measure::HyperWiener) => Some(BoundId::HyperWiener),
        (_, _, _) => Some(BoundId::Harary),
    };
    let edge_lemma = (kind == EntryKind::IndexTheorem).then(|| format!("L{section}.1"));
    let mut entry = ConditionEntry {
        id: spec.id.to_string(),
        kind,
        setting: spec.setting,
        measure: spec.measure,
        comparator: spec.comparator,
        threshold: spec.threshold,
        conclusion: spec.conclusion,
        exceptions: spec.exceptions,
        requirements,
        edge_lemma,
        bound,
        statement: String::new(),
        notes: spec.notes.iter().map(|s| s.to_string()).collect(),
    };
    entry.statement = format!(
        "{}({}) {} {}  =>  {}",
        entry.measure.symbol(),
        entry.measured_graph(),
        entry.comparator.symbol(),
        entry.threshold,
        entry.conclusion
    );
    entry
}

fn entries() -> Vec<ConditionEntry> {
    use Comparator::*;
    use FamilyKind as F;
    use Measure::*;
    use Property::*;
    use Setting::*;

    let n = Poly::n;
    let k = Poly::k;
    let q = Poly::ratio;
    let p = Formula::poly;
    let r_when_k1 = ExceptionRule {
        family: F::R,
        k: KFilter::Equals(1),
    };

    let specs = vec![
        Spec {
            id: "L3.1",
            setting: BalancedBipartite,
            measure: EdgeCount,
            comparator: Greater,
            threshold: p(n() * (n() - k() - 2) + (k() + 2).pow(2)),
            conclusion: Traceable,
            exceptions: vec![any(F::Q), r_when_k1],
            notes: &[],
        },
        Spec {
            id: "T3.2",
            setting: BalancedBipartite,
            measure: Wiener,
            comparator: Greater,
            threshold: p(4 * n().pow(3) - (2 * k() + 9) * n().pow(2)
                + (2 * k().pow(2) + 10 * k() + 14) * n()
                - 2 * (k() + 2).pow(2)),
            conclusion: Traceable,
            exceptions: vec![r_when_k1],
            notes: &[],
        },
        Spec {
            id: "T3.3",
            setting: BalancedBipartite,
            measure: HyperWiener,
            comparator: Greater,
            threshold: p(4 * n().pow(4) - (2 * k() + 10) * n().pow(3)
                + (2 * k().pow(2) + 9 * k() + 14) * n().pow(2)
                - (k().pow(2) + 3 * k() + 3) * n()
                - (k() + 2).pow(2)),
            conclusion: Traceable,
            exceptions: vec![r_when_k1],
            notes: &[],
        },
        Spec {
            id: "T3.4",
            setting: BalancedBipartite,
            measure: Harary,
            comparator: Less,
            threshold: Formula::quotient(
                (4 * k() + 12) * n().pow(2) - (4 * k().pow(2) + 20 * k() - 25) * n()
                    + 4 * k().pow(2)
                    + 16 * k()
                    + 16,
                4 * n() - 2,
            ),
            conclusion: Traceable,
            exceptions: vec![r_when_k1],
            notes: &[
                "hypothesis names G connected where the sibling entries name the quasi-complement; the quasi-complement is required to be connected so that its Harary index is defined",
            ],
        },
        Spec {
            id: "L4.1",
            setting: BalancedBipartite,
            measure: EdgeCount,
            comparator: Greater,
            threshold: p(n() * (n() - k() - 1) + (k() + 1).pow(2)),
            conclusion: Hamiltonian,
            exceptions: vec![any(F::B)],
            notes: &[],
        },
        Spec {
            id: "T4.2",
            setting: BalancedBipartite,
            measure: Wiener,
            comparator: Greater,
            threshold: p(4 * n().pow(3) - (2 * k() + 7) * n().pow(2)
                + (2 * k() + 2 * (k() + 1).pow(2) + 4) * n()
                - 2 * (k() + 1).pow(2)),
            conclusion: Hamiltonian,
            exceptions: vec![],
            notes: &[],
        },
        Spec {
            id: "T4.3",
            setting: BalancedBipartite,
            measure: HyperWiener,
            comparator: Greater,
            threshold: p(4 * n().pow(4) - (2 * k() + 8) * n().pow(3)
                + (2 * k().pow(2) + 5 * k() + 7) * n().pow(2)
                - (k().pow(2) + k() + 1) * n()
                - (k() + 1).pow(2)),
            conclusion: Hamiltonian,
            exceptions: vec![],
            notes: &[],
        },
        Spec {
            id: "T4.4",
            setting: BalancedBipartite,
            measure: Harary,
            comparator: Less,
            threshold: Formula::quotient(
                (4 * k() + 8) * n().pow(2) - (4 * k().pow(2) + 12 * k() + 9) * n()
                    + 4 * k().pow(2)
                    + 8 * k()
                    + 4,
                4 * n() - 2,
            ),
            conclusion: Hamiltonian,
            exceptions: vec![],
            notes: &[],
        },
        Spec {
            id: "L5.1",
            setting: NearlyBalanced,
            measure: EdgeCount,
            comparator: Greater,
            threshold: p(n() * (n() - k() - 2) + (k() + 1).pow(2)),
            conclusion: Traceable,
            exceptions: vec![any(F::C)],
            notes: &[],
        },
        Spec {
            id: "T5.2",
            setting: NearlyBalanced,
            measure: Wiener,
            comparator: Greater,
            threshold: p(4 * n().pow(3) - (2 * k() + 14) * n().pow(2)
                + (4 * k() + 2 * (k() + 1).pow(2) + 16) * n()
                - 4 * (k() + 1).pow(2)
                - 4),
            conclusion: Traceable,
            exceptions: vec![],
            notes: &[],
        },
        Spec {
            id: "T5.3",
            setting: NearlyBalanced,
            measure: HyperWiener,
            comparator: Greater,
            threshold: p(4 * n().pow(4) - (2 * k() + 18) * n().pow(3)
                + (2 * k().pow(2) + 9 * k() + q(65, 2)) * n().pow(2)
                - (5 * k().pow(2) + 12 * k() + q(53, 2)) * n()
                + 2 * k().pow(2)
                + 4 * k()
                + 8),
            conclusion: Traceable,
            exceptions: vec![],
            notes: &[],
        },
        Spec {
            id: "T5.4",
            setting: NearlyBalanced,
            measure: Harary,
            comparator: LessEq,
            threshold: Formula::quotient(
                (4 * k() + 8) * n().pow(2) - (4 * k().pow(2) + 16 * k() + 17) * n()
                    + 8 * k().pow(2)
                    + 16 * k()
                    + 8,
                4 * n() - 6,
            ),
            conclusion: Traceable,
            exceptions: vec![ExceptionRule {
                family: F::C,
                k: KFilter::AtMost(6),
            }],
            notes: &[
                "non-strict comparator, unlike every other Harary entry",
                "exception restricted to k <= 6 as stated; membership for k >= 7 is recorded, not assumed",
            ],
        },
        Spec {
            id: "L6.1",
            setting: General,
            measure: EdgeCount,
            comparator: Greater,
            threshold: p(Poly::choose2(&(n() - k() - 2)) + (k() + 1) * (k() + 2)),
            conclusion: Traceable,
            exceptions: vec![any(F::LUnder), any(F::NUnder)],
            notes: &[],
        },
        Spec {
            id: "T6.2",
            setting: General,
            measure: Wiener,
            comparator: Greater,
            threshold: p(q(1, 2)
                * (n().pow(3) - (2 * k() + 6) * n().pow(2)
                    + (3 * k().pow(2) + 15 * k() + 19) * n()
                    - 6 * k().pow(2)
                    - 22 * k()
                    - 20)),
            conclusion: Traceable,
            exceptions: vec![],
            notes: &[],
        },
        Spec {
            id: "T6.3",
            setting: General,
            measure: HyperWiener,
            comparator: Greater,
            threshold: p(q(1, 4) * n().pow(4) - (q(1, 2) * k() + q(3, 2)) * n().pow(3)
                + (q(3, 4) * k().pow(2) + q(13, 4) * k() + q(15, 4)) * n().pow(2)
                - (q(3, 4) * k().pow(2) + q(7, 4) * k() + q(1, 2)) * n()
                - q(3, 2) * k().pow(2)
                - q(11, 2) * k()
                - 5),
            conclusion: Traceable,
            exceptions: vec![],
            notes: &[],
        },
        Spec {
            id: "T6.4",
            setting: General,
            measure: Harary,
            comparator: Less,
            threshold: Formula::quotient(
                (2 * k() + 4) * n().pow(2) - (3 * k().pow(2) + 15 * k() + 18) * n()
                    + 6 * k().pow(2)
                    + 22 * k()
                    + 20,
                2 * n() - 2,
            ),
            conclusion: Traceable,
            exceptions: vec![],
            notes: &[],
        },
        Spec {
            id: "L7.1",
            setting: General,
            measure: EdgeCount,
            comparator: Greater,
            threshold: p(Poly::choose2(&(n() - k() - 1)) + (k() + 1).pow(2)),
            conclusion: Hamiltonian,
            exceptions: vec![any(F::L), any(F::N)],
            notes: &[],
        },
        Spec {
            id: "T7.2",
            setting: General,
            measure: Wiener,
            comparator: Greater,
            threshold: p(q(1, 2)
                * (n().pow(3) - (2 * k() + 4) * n().pow(2)
                    + (3 * k().pow(2) + 11 * k() + 19) * n()
                    - 6 * k().pow(2)
                    - 14 * k()
                    - 8)),
            conclusion: Hamiltonian,
            exceptions: vec![],
            notes: &[],
        },
        Spec {
            id: "T7.3",
            setting: General,
            measure: HyperWiener,
            comparator: Greater,
            threshold: p(q(1, 4) * n().pow(4) - (q(1, 2) * k() + 1) * n().pow(3)
                + (q(3, 4) * k().pow(2) + q(9, 4) * k() + q(3, 2)) * n().pow(2)
                - (q(3, 4) * k().pow(2) + q(3, 4) * k() + q(1, 4)) * n()
                - (q(3, 2) * k().pow(2) + q(7, 2) * k() + 2)),
            conclusion: Hamiltonian,
            exceptions: vec![],
            notes: &[],
        },
        Spec {
            id: "T7.4",
            setting: General,
            measure: Harary,
            comparator: Less,
            threshold: Formula::quotient(
                (2 * k() + 2) * n().pow(2) - (3 * k().pow(2) + 11 * k() + 8) * n()
                    + 6 * k().pow(2)
                    + 14 * k()
                    + 8,
                2 * n() - 2,
            ),
            conclusion: Hamiltonian,
            exceptions: vec![],
            notes: &["comparator is missing from one statement of the hypothesis; read as <, as in the reduction step and the sibling Harary entries"],
        },
        Spec {
            id: "L8.1",
            setting: KConnected,
            measure: EdgeCount,
            comparator: Greater,
            threshold: p(q(1, 2) * (n() * (n() - 1) - k() * (n() - k() - 1))),
            conclusion: HamiltonConnected,
            exceptions: vec![],
            notes: &[],
        },
        Spec {
            id: "T8.2",
            setting: KConnected,
            measure: Wiener,
            comparator: Greater,
            threshold: p(q(1, 2) * n().pow(3) - (q(1, 2) * k() + 1) * n().pow(2)
                + q(1, 2) * (k().pow(2) + 3 * k() + 1) * n()
                - k().pow(2)
                - k()),
            conclusion: HamiltonConnected,
            exceptions: vec![],
            notes: &[],
        },
        Spec {
            id: "T8.3",
            setting: KConnected,
            measure: HyperWiener,
            comparator: Greater,
            threshold: p(q(1, 4) * n().pow(4) - (q(1, 4) * k() + q(1, 2)) * n().pow(3)
                + (q(1, 4) * k().pow(2) + q(1, 2) * k() + q(1, 4)) * n().pow(2)
                - (q(1, 4) * k().pow(2) - q(1, 4) * k()) * n()
                - q(1, 2) * k().pow(2)
                - q(1, 2) * k()),
            conclusion: HamiltonConnected,
            exceptions: vec![],
            notes: &[],
        },
        Spec {
            id: "T8.4",
            setting: KConnected,
            measure: Harary,
            comparator: Less,
            threshold: Formula::quotient(
                (k() + 1) * n().pow(2) - (k().pow(2) + 3 * k() + 1) * n() + 2 * k().pow(2) + 2 * k(),
                2 * (n() - 1),
            ),
            conclusion: HamiltonConnected,
            exceptions: vec![],
            notes: &[],
        },
        Spec {
            id: "L9.1",
            setting: KConnected,
            measure: EdgeCount,
            comparator: Greater,
            threshold: p(q(1, 2) * (n() * (n() - 1) - k() * (n() - k()))),
            conclusion: TraceableFromEveryVertex,
            exceptions: vec![],
            notes: &[],
        },
        Spec {
            id: "T9.2",
            setting: KConnected,
            measure: Wiener,
            comparator: Greater,
            threshold: p(q(1, 2) * n().pow(3) - (q(1, 2) * k() + 1) * n().pow(2)
                + q(1, 2) * (k().pow(2) + 2 * k() + 1) * n()
                - k().pow(2)),
            conclusion: TraceableFromEveryVertex,
            exceptions: vec![],
            notes: &[],
        },
        Spec {
            id: "T9.3",
            setting: KConnected,
            measure: HyperWiener,
            comparator: Greater,
            threshold: p(q(1, 4) * n().pow(4) - (q(1, 4) * k() + q(1, 2)) * n().pow(3)
                + (q(1, 4) * k().pow(2) + q(1, 4) * k() + q(1, 4)) * n().pow(2)
                - (q(1, 4) * k().pow(2) - q(1, 2) * k()) * n()
                - q(1, 2) * k().pow(2)),
            conclusion: TraceableFromEveryVertex,
            exceptions: vec![],
            notes: &[],
        },
        Spec {
            id: "T9.4",
            setting: KConnected,
            measure: Harary,
            comparator: Less,
            threshold: Formula::quotient(
                (k() + 1) * n().pow(2) + (-k().pow(2) - 2 * k() - 1) * n() + 2 * k().pow(2),
                2 * n() - 2,
            ),
            conclusion: TraceableFromEveryVertex,
            exceptions: vec![],
            notes: &[],
        },
    ];
    specs.into_iter().map(build).collect()
}

/// Every edge lemma and index theorem, in section order.
pub fn catalog() -> &'static [ConditionEntry] {
    static CATALOG: OnceLock<Vec<ConditionEntry>> = OnceLock::new();
    CATALOG.get_or_init(entries)
}

pub fn entry(id: &str) -> Option<&'static ConditionEntry> {
    catalog().iter().find(|e| e.id == id)
}
