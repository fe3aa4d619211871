//! Undirected simple graphs, random generation, the edge-list text format and
//! cut evaluation.
//!
//! Vertices are `0..n`. Edges are stored canonically as `(u, v)` with `u < v`
//! and the edge list is sorted, so two graphs with the same edge set compare
//! equal.
//!
//! A labeling assigns `+1` or `-1` to every vertex. When a labeling is packed
//! into a basis index `b`, vertex `i` is bit `i` of `b` (least significant
//! first), and bit value `0` means `+1`.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::io::Read;

use crate::error::{Error, Result};
use crate::rng;

/// Largest vertex count for which labelings can be packed into a `u64`.
pub const MAX_PACKED_VERTICES: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, canonicalizing each edge to `u < v` and sorting.
    ///
    /// Rejects `n == 0`, out-of-range endpoints, self-loops and duplicates.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("graph must have at least one vertex"));
        }
        let mut seen = HashSet::new();
        let mut canon = Vec::new();
        for (a, b) in edges {
            let e = check_edge(n, a, b).map_err(Error::InvalidArgument)?;
            if !seen.insert(e) {
                return Err(Error::invalid(format!("duplicate edge ({}, {})", e.0, e.1)));
            }
            canon.push(e);
        }
        canon.sort_unstable();
        Ok(Graph { n, edges: canon })
    }

    pub fn edgeless(n: usize) -> Result<Self> {
        Graph::new(n, [])
    }

    pub fn complete(n: usize) -> Result<Self> {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid("a cycle needs at least 3 vertices"));
        }
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Result<Self> {
        Graph::new(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Maximum number of edges of a simple graph on `n` vertices.
    pub fn max_edges(n: usize) -> usize {
        n * n.saturating_sub(1) / 2
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Per-vertex neighbour bitmasks. Requires `n <= 63`.
    pub fn neighbor_masks(&self) -> Result<Vec<u64>> {
        self.require_packable()?;
        let mut masks = vec![0u64; self.n];
        for &(u, v) in &self.edges {
            masks[u] |= 1 << v;
            masks[v] |= 1 << u;
        }
        Ok(masks)
    }

    /// Cut value of the labeling packed in `bits`. Requires `n <= 63`.
    pub fn cut_of_bits(&self, bits: u64) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| ((bits >> u) ^ (bits >> v)) & 1 == 1)
            .count()
    }

    pub(crate) fn require_packable(&self) -> Result<()> {
        if self.n > MAX_PACKED_VERTICES {
            return Err(Error::ResourceLimit {
                what: "vertex count",
                requested: self.n,
                cap: MAX_PACKED_VERTICES,
            });
        }
        Ok(())
    }
}

fn check_edge(n: usize, a: usize, b: usize) -> std::result::Result<(usize, usize), String> {
    if a >= n || b >= n {
        return Err(format!("edge ({a}, {b}) has a vertex index >= n = {n}"));
    }
    if a == b {
        return Err(format!("self-loop at vertex {a}"));
    }
    Ok((a.min(b), a.max(b)))
}

/// Counts edges whose endpoints carry different labels, via
/// `sum over edges of (1 - z_u z_v) / 2`.
pub fn cut_value(g: &Graph, labels: &[i8]) -> Result<usize> {
    check_labels(g, labels)?;
    let doubled: i64 = g
        .edges
        .iter()
        .map(|&(u, v)| 1 - i64::from(labels[u]) * i64::from(labels[v]))
        .sum();
    Ok((doubled / 2) as usize)
}

fn check_labels(g: &Graph, labels: &[i8]) -> Result<()> {
    if labels.len() != g.n {
        return Err(Error::invalid(format!(
            "labeling has {} entries, graph has {} vertices",
            labels.len(),
            g.n
        )));
    }
    if let Some(i) = labels.iter().position(|&z| z != 1 && z != -1) {
        return Err(Error::invalid(format!(
            "label of vertex {i} is {}, expected +1 or -1",
            labels[i]
        )));
    }
    Ok(())
}

/// Unpacks a basis index into labels: bit `i` clear means `+1`.
pub fn labels_from_bits(bits: u64, n: usize) -> Vec<i8> {
    (0..n)
        .map(|i| if (bits >> i) & 1 == 0 { 1 } else { -1 })
        .collect()
}

pub fn bits_from_labels(labels: &[i8]) -> u64 {
    labels
        .iter()
        .enumerate()
        .filter(|(_, &z)| z < 0)
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

/// A labeling together with its cut value, kept consistent at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutAssignment {
    labels: Vec<i8>,
    cut_value: usize,
}

impl CutAssignment {
    pub fn new(g: &Graph, labels: Vec<i8>) -> Result<Self> {
        let cut_value = cut_value(g, &labels)?;
        Ok(CutAssignment { labels, cut_value })
    }

    pub fn from_bits(g: &Graph, bits: u64) -> Self {
        CutAssignment {
            labels: labels_from_bits(bits, g.n),
            cut_value: g.cut_of_bits(bits),
        }
    }

    pub fn labels(&self) -> &[i8] {
        &self.labels
    }

    pub fn cut_value(&self) -> usize {
        self.cut_value
    }

    pub fn bits(&self) -> u64 {
        bits_from_labels(&self.labels)
    }

    /// Recounts the cut against `g` and checks it matches the cached value.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let recount = cut_value(g, &self.labels)?;
        if recount != self.cut_value {
            return Err(Error::invalid(format!(
                "cached cut {} disagrees with recount {recount}",
                self.cut_value
            )));
        }
        Ok(())
    }

    /// Labels rendered as `+` / `-` characters, vertex 0 first.
    pub fn signs(&self) -> String {
        self.labels
            .iter()
            .map(|&z| if z > 0 { '+' } else { '-' })
            .collect()
    }
}

/// Uniform random simple graph with exactly `m` edges.
///
/// Unordered pairs are ranked lexicographically, `(0,1), (0,2), ..., (n-2,n-1)`,
/// and `m` distinct ranks are drawn with Floyd's subset algorithm from the
/// seeded ChaCha8 stream (see [`crate::rng`]).
pub fn generate_random_graph(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("graph must have at least one vertex"));
    }
    let total = Graph::max_edges(n);
    if m > total {
        return Err(Error::invalid(format!(
            "{m} edges requested but {n} vertices allow at most {total}"
        )));
    }
    let mut rng = rng::seeded(seed);
    let mut chosen = HashSet::with_capacity(m);
    let total = total as u64;
    for j in (total - m as u64)..total {
        let t = rng::below(&mut rng, j + 1);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    let mut ranks: Vec<u64> = chosen.into_iter().collect();
    ranks.sort_unstable();
    let edges = ranks.into_iter().map(|r| unrank_pair(n, r as usize));
    Graph::new(n, edges)
}

fn unrank_pair(n: usize, mut rank: usize) -> (usize, usize) {
    let mut u = 0;
    loop {
        let row = n - 1 - u;
        if rank < row {
            return (u, u + 1 + rank);
        }
        rank -= row;
        u += 1;
    }
}

/// Parses the edge-list format: a header line `n m`, then exactly `m` lines
/// `u v`, each terminated by LF. Blank lines and comments are rejected.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    if text.is_empty() {
        return Err(Error::parse(1, "empty input"));
    }
    if !text.ends_with('\n') {
        let last = text.split('\n').count();
        return Err(Error::parse(last, "missing trailing newline"));
    }
    let mut lines = text[..text.len() - 1].split('\n');
    let header = lines.next().unwrap_or_default();
    let (n, m) = parse_pair(header).map_err(|msg| Error::parse(1, msg))?;
    if n == 0 {
        return Err(Error::parse(1, "vertex count must be at least 1"));
    }
    if m > Graph::max_edges(n) {
        return Err(Error::parse(
            1,
            format!("{m} edges exceed the maximum {} for {n} vertices", Graph::max_edges(n)),
        ));
    }

    let mut seen = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        if edges.len() == m {
            return Err(Error::parse(lineno, format!("more than {m} edge lines")));
        }
        let (a, b) = parse_pair(line).map_err(|msg| Error::parse(lineno, msg))?;
        let e = check_edge(n, a, b).map_err(|msg| Error::parse(lineno, msg))?;
        if !seen.insert(e) {
            return Err(Error::parse(
                lineno,
                format!("duplicate edge ({}, {})", e.0, e.1),
            ));
        }
        edges.push(e);
    }
    if edges.len() != m {
        return Err(Error::parse(
            edges.len() + 2,
            format!("expected {m} edge lines, found {}", edges.len()),
        ));
    }
    Graph::new(n, edges)
}

/// Reads and parses an edge list from any byte source.
pub fn read_edge_list(mut reader: impl Read) -> Result<Graph> {
    let mut buf = Vec::new();
    reader
        .read_to_end(&mut buf)
        .map_err(|e| Error::invalid(format!("read failed: {e}")))?;
    let text = String::from_utf8(buf).map_err(|_| Error::parse(1, "input is not UTF-8"))?;
    parse_edge_list(&text)
}

fn parse_pair(line: &str) -> std::result::Result<(usize, usize), String> {
    let mut parts = line.split(' ');
    let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(format!("expected two integers separated by one space, got {line:?}"));
    };
    Ok((parse_index(a)?, parse_index(b)?))
}

fn parse_index(tok: &str) -> std::result::Result<usize, String> {
    if tok.is_empty() || !tok.bytes().all(|c| c.is_ascii_digit()) {
        return Err(format!("{tok:?} is not a base-10 integer"));
    }
    tok.parse().map_err(|_| format!("{tok:?} is out of range"))
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.n, g.m());
    for &(u, v) in &g.edges {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
