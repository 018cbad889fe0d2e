//! Reading graphs from files or stdin, as graph6 lines or as an edge list.

use std::io::Read;
use std::path::Path;

use anyhow::{bail, Context, Result};
use topoham_core::harness::{ingest_graph6, two_coloring, Malformed};
use topoham_core::{BipartiteGraph, Graph};

pub fn read_source(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .context("reading stdin")?;
            Ok(s)
        }
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn is_edge_list(text: &str) -> bool {
    content_lines(text).all(|(_, l)| {
        let toks: Vec<_> = l.split_whitespace().collect();
        matches!(toks.len(), 1 | 2) && toks.iter().all(|t| t.parse::<usize>().is_ok())
    })
}

/// One `u v` pair per line, 0-based. A line with a single number fixes the
/// order, so isolated vertices can be expressed.
fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut order = None;
    let mut edges = Vec::new();
    for (line, l) in content_lines(text) {
        let nums: Vec<usize> = l.split_whitespace().map(|t| t.parse().unwrap()).collect();
        match nums[..] {
            [n] if order.is_none() && edges.is_empty() => order = Some(n),
            [u, v] => edges.push((u, v)),
            _ => bail!("line {line}: expected \"u v\""),
        }
    }
    let n = order.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    Graph::from_edges(n, edges).context("invalid edge list")
}

/// Every graph in the text. Edge lists describe a single graph; graph6
/// input may hold one graph per line.
pub fn parse_graphs(text: &str) -> Result<Vec<Graph>> {
    if content_lines(text).next().is_none() {
        bail!("no graph in input");
    }
    if is_edge_list(text) {
        return Ok(vec![parse_edge_list(text)?]);
    }
    let ingested = ingest_graph6(text, Malformed::Abort)?;
    Ok(ingested.graphs.into_iter().map(|(_, g)| g).collect())
}

pub fn single_graph(text: &str) -> Result<Graph> {
    let mut gs = parse_graphs(text)?;
    if gs.len() != 1 {
        bail!("expected one graph, found {}", gs.len());
    }
    Ok(gs.pop().unwrap())
}

/// Comma-separated vertex list, e.g. `0,1,2`.
pub fn parse_vertex_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .with_context(|| format!("bad vertex {t:?}"))
        })
        .collect()
}

/// Uses the given part `X` when present, otherwise a 2-colouring.
pub fn bipartition(g: Graph, x: Option<&[usize]>) -> Result<BipartiteGraph> {
    match x {
        Some(x) => BipartiteGraph::new(g, x.to_vec()).context("invalid bipartition"),
        None => two_coloring(&g).context("graph is not bipartite"),
    }
}
