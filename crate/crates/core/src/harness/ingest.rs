//! graph6 stream ingestion and bipartition recovery.

use super::HarnessError;
use crate::graph::{BipartiteGraph, Graph};
use crate::graph6::{decode_lines, Graph6Error, Graph6Line};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Malformed {
    /// Record a warning and continue.
    #[default]
    Skip,
    Abort,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Ingested {
    /// Decoded graphs with their 1-based line numbers.
    pub graphs: Vec<(usize, Graph)>,
    pub warnings: Vec<String>,
}

pub fn ingest_graph6(text: &str, policy: Malformed) -> Result<Ingested, HarnessError> {
    let mut out = Ingested::default();
    for item in decode_lines(text) {
        match item {
            Graph6Line::Graph { line, graph } => out.graphs.push((line, graph)),
            Graph6Line::Blank { line } => out
                .warnings
                .push(format!("line {line}: blank line skipped")),
            Graph6Line::Malformed { line, error } => {
                if policy == Malformed::Abort {
                    return Err(HarnessError::Graph6(Graph6Error::AtLine {
                        line,
                        source: Box::new(error),
                    }));
                }
                out.warnings.push(format!("line {line}: {error}; skipped"));
            }
        }
    }
    Ok(out)
}

/// A proper 2-colouring, with the smallest vertex of every component in `X`.
pub fn two_coloring(g: &Graph) -> Option<BipartiteGraph> {
    let n = g.order();
    let mut side: Vec<Option<bool>> = vec![None; n];
    let mut stack = Vec::new();
    for s in 0..n {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(true);
        stack.push(s);
        while let Some(u) = stack.pop() {
            let su = side[u].expect("coloured before push");
            for v in g.neighbors(u) {
                match side[v] {
                    None => {
                        side[v] = Some(!su);
                        stack.push(v);
                    }
                    Some(sv) if sv == su => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let x = (0..n).filter(|&v| side[v] == Some(true)).collect();
    Some(BipartiteGraph::new(g.clone(), x).expect("colouring is proper"))
}
