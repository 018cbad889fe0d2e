//! JSON-lines and CSV output for verification runs.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::{json, Value};

use super::verify::{VerificationRecord, VerificationReport};

/// Writes one JSON object per line: a `meta` header, the records, then a
/// `summary` trailer.
pub struct JsonlWriter<W: Write> {
    out: W,
}

impl<W: Write> JsonlWriter<W> {
    pub fn new(out: W) -> Self {
        JsonlWriter { out }
    }

    fn line(&mut self, v: &impl Serialize) -> io::Result<()> {
        serde_json::to_writer(&mut self.out, v)?;
        self.out.write_all(b"\n")
    }

    pub fn meta(&mut self, meta: &impl Serialize) -> io::Result<()> {
        self.line(&json!({ "meta": meta }))
    }

    pub fn record(&mut self, r: &VerificationRecord) -> io::Result<()> {
        self.line(&json!({ "record": r }))
    }

    pub fn summary(&mut self, report: &VerificationReport) -> io::Result<()> {
        self.line(&json!({
            "summary": {
                "graphs": report.graphs,
                "findings": report.findings,
                "coverage": report.coverage,
                "bound_coverage": report.bound_coverage,
                "vacuous_entries": report.vacuous_entries(),
            }
        }))
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

/// The JSON-lines text with every `meta.timestamp` field removed, for
/// comparing runs.
pub fn without_timestamps(text: &str) -> String {
    text.lines()
        .map(|l| match serde_json::from_str::<Value>(l) {
            Ok(mut v) => {
                if let Some(m) = v.get_mut("meta").and_then(Value::as_object_mut) {
                    m.remove("timestamp");
                }
                v.to_string()
            }
            Err(_) => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub const COVERAGE_HEADER: &str = "entry,evaluated,applicable,hypothesis_holds,graphs_fired,near_misses,consistent,explained,undecided,findings,proof_step_gaps";

/// One CSV row per entry.
pub fn coverage_csv(report: &VerificationReport) -> String {
    let mut s = String::from(COVERAGE_HEADER);
    s.push('\n');
    for c in &report.coverage {
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            c.id,
            c.evaluated,
            c.applicable,
            c.hypothesis_holds,
            c.graphs_fired,
            c.near_misses,
            c.consistent,
            c.explained,
            c.undecided,
            c.findings,
            c.proof_step_gaps
        ));
    }
    s
}

pub fn bound_csv(report: &VerificationReport) -> String {
    let mut s = String::from("bound,evaluated,satisfied,violated,skipped\n");
    for b in &report.bound_coverage {
        s.push_str(&format!(
            "{},{},{},{},{}\n",
            b.id, b.evaluated, b.satisfied, b.violated, b.skipped
        ));
    }
    s
}
