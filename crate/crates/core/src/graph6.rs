//! graph6 encoding and decoding, and the JSON sidecar that carries a
//! bipartite part labeling next to a graph6 string.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{BipartiteGraph, Graph, GraphError};

const BIAS: u8 = 63;
const MAX_ORDER: usize = 68_719_476_735; // 2^36 - 1
const HEADER: &str = ">>graph6<<";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the printable range 63..=126")]
    BadByte { byte: u8, offset: usize },
    #[error("truncated size header")]
    TruncatedHeader,
    #[error("expected {expected} data bytes for {order} vertices, found {found}")]
    Length {
        order: usize,
        expected: usize,
        found: usize,
    },
    #[error("graph order {0} exceeds the graph6 limit")]
    TooLarge(usize),
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<Graph6Error>,
    },
    #[error("invalid bipartite sidecar: {0}")]
    Sidecar(String),
}

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + BIAS);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + BIAS);
        }
    }
}

/// Encodes `g` as a graph6 string (without the optional `>>graph6<<` header).
pub fn encode(g: &Graph) -> String {
    let n = g.order();
    assert!(n <= MAX_ORDER, "graph too large for graph6");
    let mut out = Vec::with_capacity(8 + n * n.saturating_sub(1) / 12);
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

fn decode_size(bytes: &[u8]) -> Result<(usize, usize), Graph6Error> {
    let first = *bytes.first().ok_or(Graph6Error::Empty)?;
    if first != 126 {
        return Ok(((first - BIAS) as usize, 1));
    }
    let read = |range: std::ops::Range<usize>| -> Result<usize, Graph6Error> {
        let chunk = bytes.get(range).ok_or(Graph6Error::TruncatedHeader)?;
        Ok(chunk
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize))
    };
    if bytes.get(1) == Some(&126) {
        Ok((read(2..8)?, 8))
    } else {
        Ok((read(1..4)?, 4))
    }
}

/// Decodes one graph6 string. Surrounding whitespace and a leading
/// `>>graph6<<` header are ignored.
pub fn decode(s: &str) -> Result<Graph, Graph6Error> {
    let s = s.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    if let Some((offset, &byte)) = bytes
        .iter()
        .enumerate()
        .find(|&(_, &b)| !(BIAS..=126).contains(&b))
    {
        return Err(Graph6Error::BadByte { byte, offset });
    }
    let (n, header_len) = decode_size(bytes)?;
    if n > 1 << 20 {
        return Err(Graph6Error::TooLarge(n));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let data = &bytes[header_len..];
    if data.len() != expected {
        return Err(Graph6Error::Length {
            order: n,
            expected,
            found: data.len(),
        });
    }
    let mut g = Graph::empty(n);
    let mut idx = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = data[idx / 6] - BIAS;
            if byte >> (5 - idx % 6) & 1 == 1 {
                g.insert_edge(i, j);
            }
            idx += 1;
        }
    }
    Ok(g)
}

/// Outcome of decoding one line of a graph6 stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Graph6Line {
    Graph { line: usize, graph: Graph },
    Blank { line: usize },
    Malformed { line: usize, error: Graph6Error },
}

/// Decodes a graph6 stream line by line (1-based line numbers). Blank lines
/// are reported as `Blank`; the caller decides whether malformed lines abort.
pub fn decode_lines(text: &str) -> impl Iterator<Item = Graph6Line> + '_ {
    text.lines().enumerate().map(|(i, raw)| {
        let line = i + 1;
        if raw.trim().is_empty() {
            Graph6Line::Blank { line }
        } else {
            match decode(raw) {
                Ok(graph) => Graph6Line::Graph { line, graph },
                Err(error) => Graph6Line::Malformed { line, error },
            }
        }
    })
}

/// A bipartite graph serialized as a graph6 string plus its `X` part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteSidecar {
    pub graph6: String,
    #[serde(rename = "X")]
    pub x: Vec<usize>,
}

impl BipartiteSidecar {
    pub fn from_bipartite(g: &BipartiteGraph) -> Self {
        BipartiteSidecar {
            graph6: encode(g.graph()),
            x: g.x().to_vec(),
        }
    }

    pub fn to_bipartite(&self) -> Result<BipartiteGraph, Graph6Error> {
        let g = decode(&self.graph6)?;
        BipartiteGraph::new(g, self.x.clone())
            .map_err(|e: GraphError| Graph6Error::Sidecar(e.to_string()))
    }
}
