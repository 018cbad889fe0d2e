//! Simple undirected graphs stored as packed adjacency rows, plus the
//! bipartite wrapper with a fixed part labeling and the graph operators
//! (complement, quasi-complement, union, join and the bipartite join).

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("edge ({0}, {1}) joins two vertices of the same part")]
    EdgeInsidePart(usize, usize),
    #[error("part X is not a valid vertex subset: {0}")]
    InvalidPart(String),
}

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// A simple undirected graph on vertices `0..n`.
///
/// Each vertex owns one row of `words_for(n)` machine words; bit `u` of row
/// `v` is set iff `uv` is an edge. Rows are kept symmetric and loop free.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Edgeless graph `O_n`.
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.insert_edge(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.insert_edge(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.insert_edge(0, n - 1);
        }
        g
    }

    /// The Petersen graph with outer cycle `0..5` and inner pentagram `5..10`.
    pub fn petersen() -> Self {
        let mut g = Graph::empty(10);
        for i in 0..5 {
            g.insert_edge(i, (i + 1) % 5);
            g.insert_edge(i, i + 5);
            g.insert_edge(5 + i, 5 + (i + 2) % 5);
        }
        g
    }

    /// Builds a graph from an edge list. Duplicate pairs (in either
    /// orientation) collapse to one edge.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: w,
                        order: n,
                    });
                }
            }
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph of order `n <= 64` from one neighbourhood mask per vertex.
    /// The masks must already be symmetric and loop free.
    pub(crate) fn from_masks(masks: &[u64]) -> Self {
        let n = masks.len();
        debug_assert!(n <= 64);
        let mut g = Graph::empty(n);
        for (v, &m) in masks.iter().enumerate() {
            if n > 0 {
                g.rows[v] = m;
            }
        }
        debug_assert!(g.is_well_formed());
        g
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] &= !(1 << (v % 64));
        self.rows[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    /// Returns a copy of `self` with the edge `uv` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        self.check_pair(u, v)?;
        let mut g = self.clone();
        g.insert_edge(u, v);
        Ok(g)
    }

    /// Returns a copy of `self` with the edge `uv` removed (if present).
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        self.check_pair(u, v)?;
        let mut g = self.clone();
        g.remove_edge(u, v);
        Ok(g)
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: w,
                    order: self.n,
                });
            }
        }
        if u == v {
            return Err(GraphError::LoopEdge(u));
        }
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of words per adjacency row.
    #[inline]
    pub fn row_words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Neighbourhood of `v` as a single mask. Only meaningful for `n <= 64`.
    #[inline]
    pub fn mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.rows[v * self.words]
    }

    /// All neighbourhood masks, for graphs of order at most 64.
    pub fn masks(&self) -> Option<Vec<u64>> {
        (self.n <= 64).then(|| (0..self.n).map(|v| self.mask(v)).collect())
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// `δ(G)`; `None` for the graph with no vertices.
    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    pub fn edge_count(&self) -> usize {
        self.rows
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(v))
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Applies the vertex permutation `perm` (old index -> new index).
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::InvalidPart(format!(
                "permutation of length {} for order {}",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(GraphError::InvalidPart("not a permutation".into()));
            }
        }
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.insert_edge(perm[u], perm[v]);
        }
        Ok(g)
    }

    /// Subgraph induced by `keep`, relabelled to `0..keep.len()` in the given order.
    pub fn induced(&self, keep: &[usize]) -> Self {
        let mut g = Graph::empty(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.insert_edge(i, j);
                }
            }
        }
        g
    }

    /// Drops every vertex of degree zero.
    pub fn without_isolated_vertices(&self) -> Self {
        let keep: Vec<usize> = (0..self.n).filter(|&v| self.degree(v) > 0).collect();
        self.induced(&keep)
    }

    fn is_well_formed(&self) -> bool {
        (0..self.n).all(|u| {
            !self.has_edge(u, u) && self.neighbors(u).all(|v| v < self.n && self.has_edge(v, u))
        })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            }
        })
    })
}

/// `Ḡ`: same vertex set, exactly the non-edges of `g`.
pub fn complement(g: &Graph) -> Graph {
    let n = g.order();
    let mut out = Graph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if !g.has_edge(u, v) {
                out.insert_edge(u, v);
            }
        }
    }
    out
}

/// `G_1 + G_2`; the vertices of `g2` are shifted by `|V(g1)|`.
pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Graph {
    let shift = g1.order();
    let mut out = Graph::empty(shift + g2.order());
    for (u, v) in g1.edges() {
        out.insert_edge(u, v);
    }
    for (u, v) in g2.edges() {
        out.insert_edge(u + shift, v + shift);
    }
    out
}

/// `G_1 ∨ G_2`: the union plus every edge between the two vertex sets.
pub fn join(g1: &Graph, g2: &Graph) -> Graph {
    let shift = g1.order();
    let mut out = disjoint_union(g1, g2);
    for u in 0..shift {
        for v in 0..g2.order() {
            out.insert_edge(u, v + shift);
        }
    }
    out
}

/// A bipartite graph together with its ordered part labeling `(X, Y)`.
///
/// The labeling is part of the value: two bipartite graphs with the same
/// edges but swapped parts compare unequal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    graph: Graph,
    x: Vec<usize>,
    y: Vec<usize>,
    in_x: Vec<bool>,
}

impl BipartiteGraph {
    /// Wraps `graph` with part `X = x`; `Y` is every other vertex in index order.
    pub fn new(graph: Graph, x: Vec<usize>) -> Result<Self, GraphError> {
        let n = graph.order();
        let mut in_x = vec![false; n];
        for &v in &x {
            if v >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    order: n,
                });
            }
            if std::mem::replace(&mut in_x[v], true) {
                return Err(GraphError::InvalidPart(format!("vertex {v} listed twice")));
            }
        }
        let y = (0..n).filter(|&v| !in_x[v]).collect();
        Self::from_parts(graph, x, y)
    }

    /// Wraps `graph` with explicit parts; `x` and `y` must partition the vertices.
    pub fn from_parts(graph: Graph, x: Vec<usize>, y: Vec<usize>) -> Result<Self, GraphError> {
        let n = graph.order();
        if x.len() + y.len() != n {
            return Err(GraphError::InvalidPart(format!(
                "|X| + |Y| = {} but the graph has {n} vertices",
                x.len() + y.len()
            )));
        }
        let mut in_x = vec![false; n];
        let mut seen = vec![false; n];
        for (&v, side) in x
            .iter()
            .map(|v| (v, true))
            .chain(y.iter().map(|v| (v, false)))
        {
            if v >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    order: n,
                });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(GraphError::InvalidPart(format!("vertex {v} listed twice")));
            }
            in_x[v] = side;
        }
        for (u, v) in graph.edges() {
            if in_x[u] == in_x[v] {
                return Err(GraphError::EdgeInsidePart(u, v));
            }
        }
        Ok(BipartiteGraph { graph, x, y, in_x })
    }

    /// Bipartite graph with `X = 0..a`, `Y = a..a+b` and edges given as
    /// `(i, j)` meaning `x_i y_j`.
    pub fn from_biadjacency<I>(a: usize, b: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(a + b);
        for (i, j) in edges {
            if i >= a {
                return Err(GraphError::VertexOutOfRange {
                    vertex: i,
                    order: a,
                });
            }
            if j >= b {
                return Err(GraphError::VertexOutOfRange {
                    vertex: j,
                    order: b,
                });
            }
            g.insert_edge(i, a + j);
        }
        Ok(Self::standard(g, a))
    }

    /// `K_{a,b}` with `X = 0..a`.
    pub fn complete(a: usize, b: usize) -> Self {
        let mut g = Graph::empty(a + b);
        for i in 0..a {
            for j in 0..b {
                g.insert_edge(i, a + j);
            }
        }
        Self::standard(g, a)
    }

    /// `O_{a,b}` with `X = 0..a`.
    pub fn empty(a: usize, b: usize) -> Self {
        Self::standard(Graph::empty(a + b), a)
    }

    /// Parts `X = 0..a`, `Y = a..n`; edges are trusted to cross.
    pub(crate) fn standard(graph: Graph, a: usize) -> Self {
        let n = graph.order();
        let in_x = (0..n).map(|v| v < a).collect();
        let out = BipartiteGraph {
            graph,
            x: (0..a).collect(),
            y: (a..n).collect(),
            in_x,
        };
        debug_assert!(out.graph.edges().all(|(u, v)| out.in_x[u] != out.in_x[v]));
        out
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn x(&self) -> &[usize] {
        &self.x
    }

    pub fn y(&self) -> &[usize] {
        &self.y
    }

    pub fn in_x(&self, v: usize) -> bool {
        self.in_x[v]
    }

    pub fn part_sizes(&self) -> (usize, usize) {
        (self.x.len(), self.y.len())
    }

    pub fn is_balanced(&self) -> bool {
        self.x.len() == self.y.len()
    }

    /// `|X| = |Y| + 1`, with `X` the larger part.
    pub fn is_nearly_balanced(&self) -> bool {
        self.x.len() == self.y.len() + 1
    }

    /// Same graph with the roles of the two parts exchanged.
    pub fn swap_parts(&self) -> Self {
        BipartiteGraph {
            graph: self.graph.clone(),
            x: self.y.clone(),
            y: self.x.clone(),
            in_x: self.in_x.iter().map(|b| !b).collect(),
        }
    }

    /// Puts the larger part first. No-op when `|X| >= |Y|`.
    pub fn larger_part_first(self) -> Self {
        if self.x.len() < self.y.len() {
            self.swap_parts()
        } else {
            self
        }
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }
}

impl fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BipartiteGraph")
            .field("x", &self.x)
            .field("y", &self.y)
            .field("edges", &self.graph.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// `Ĝ`: same parts, exactly the `X`–`Y` pairs that are not edges of `g`.
pub fn quasi_complement(g: &BipartiteGraph) -> BipartiteGraph {
    let mut out = Graph::empty(g.graph.order());
    for &u in &g.x {
        for &v in &g.y {
            if !g.graph.has_edge(u, v) {
                out.insert_edge(u, v);
            }
        }
    }
    BipartiteGraph {
        graph: out,
        x: g.x.clone(),
        y: g.y.clone(),
        in_x: g.in_x.clone(),
    }
}

/// Disjoint union of two bipartite graphs with parts `(X_1 ∪ X_2, Y_1 ∪ Y_2)`.
pub fn bipartite_union(g1: &BipartiteGraph, g2: &BipartiteGraph) -> BipartiteGraph {
    let shift = g1.graph.order();
    let graph = disjoint_union(&g1.graph, &g2.graph);
    let x: Vec<usize> =
        g1.x.iter()
            .copied()
            .chain(g2.x.iter().map(|v| v + shift))
            .collect();
    let y: Vec<usize> =
        g1.y.iter()
            .copied()
            .chain(g2.y.iter().map(|v| v + shift))
            .collect();
    let in_x = g1.in_x.iter().chain(g2.in_x.iter()).copied().collect();
    BipartiteGraph { graph, x, y, in_x }
}

/// `G_1 ⊔ G_2`: the bipartite union plus all `X_1`–`Y_2` and `Y_1`–`X_2` edges.
pub fn bipartite_join(g1: &BipartiteGraph, g2: &BipartiteGraph) -> BipartiteGraph {
    let shift = g1.graph.order();
    let mut out = bipartite_union(g1, g2);
    for &u in &g1.x {
        for &v in &g2.y {
            out.graph.insert_edge(u, v + shift);
        }
    }
    for &u in &g1.y {
        for &v in &g2.x {
            out.graph.insert_edge(u, v + shift);
        }
    }
    out
}
