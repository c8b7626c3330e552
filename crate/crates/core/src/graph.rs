//! Simple undirected graphs on dense vertex ids 0..n-1.
//!
//! Graphs are immutable after construction; the edge set is kept in canonical
//! order (smaller endpoint first, sorted lexicographically) so equal graphs
//! compare equal and emitted files are diff-stable.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type Pair = (usize, usize);

/// Normalizes an unordered pair to (min, max).
#[inline]
pub fn norm_pair(u: usize, v: usize) -> Pair {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Hard ceilings for graph products; larger requests are resource errors.
pub const PRODUCT_VERTEX_LIMIT: usize = 100_000;
pub const PRODUCT_EDGE_LIMIT: usize = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Pair>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, validating ranges and rejecting self-loops and
    /// duplicate edges. Input pairs may be in either orientation.
    pub fn new(n: usize, pairs: impl IntoIterator<Item = Pair>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in pairs {
            if u == v {
                return Err(Error::Input(format!("self-loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::Input(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            if !set.insert(norm_pair(u, v)) {
                let (a, b) = norm_pair(u, v);
                return Err(Error::Input(format!("duplicate edge ({a},{b})")));
            }
        }
        Ok(Self::from_edge_set(n, set))
    }

    fn from_edge_set(n: usize, set: BTreeSet<Pair>) -> Self {
        let edges: Vec<Pair> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical order (u < v, sorted lexicographically).
    pub fn edges(&self) -> &[Pair] {
        &self.edges
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::Input(format!(
                "vertex {v} out of range (n = {})",
                self.n
            )))
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u >= self.n || v >= self.n || u == v {
            return false;
        }
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> Result<&[usize]> {
        self.check_vertex(v)?;
        Ok(&self.adj[v])
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adj[v].len())
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// The common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let mut it = self.adj.iter().map(Vec::len);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// True iff every pair of vertices in `set` is adjacent; sets of size
    /// at most one are cliques vacuously.
    pub fn is_clique(&self, set: &[usize]) -> Result<bool> {
        for &v in set {
            self.check_vertex(v)?;
        }
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                if u == v {
                    continue;
                }
                if !self.has_edge(u, v) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Union with additional pairs; duplicates with existing edges collapse.
    pub fn add_edges(&self, pairs: impl IntoIterator<Item = Pair>) -> Result<Graph> {
        let mut set: BTreeSet<Pair> = self.edges.iter().copied().collect();
        for (u, v) in pairs {
            if u == v {
                return Err(Error::Input(format!("self-loop at vertex {u}")));
            }
            if u >= self.n || v >= self.n {
                return Err(Error::Input(format!(
                    "edge ({u},{v}) out of range for {} vertices",
                    self.n
                )));
            }
            set.insert(norm_pair(u, v));
        }
        Ok(Self::from_edge_set(self.n, set))
    }

    pub fn complete(n: usize) -> Graph {
        let set: BTreeSet<Pair> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        Self::from_edge_set(n, set)
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::Input(format!("cycle needs n >= 3, got {n}")));
        }
        Graph::new(n, (0..n).map(|i| norm_pair(i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Graph {
        let set: BTreeSet<Pair> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edge_set(n, set)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
        if a == 0 || b == 0 {
            return Err(Error::Input(format!(
                "complete bipartite parts must be nonempty, got {a},{b}"
            )));
        }
        Graph::new(
            a + b,
            (0..a).flat_map(|u| (0..b).map(move |w| (u, a + w))),
        )
    }

    /// Lexicographic product: (g, h) ~ (g', h') iff g ~ g' in `self`, or
    /// g = g' and h ~ h' in `other`. Vertex (g, h) maps to g·|V(other)| + h.
    pub fn lexicographic_product(&self, other: &Graph) -> Result<Graph> {
        if self.n == 0 || other.n == 0 {
            return Err(Error::Input("product factors must be nonempty".into()));
        }
        let n = self
            .n
            .checked_mul(other.n)
            .filter(|&n| n <= PRODUCT_VERTEX_LIMIT)
            .ok_or_else(|| {
                Error::Resource(format!(
                    "product vertex count exceeds limit {PRODUCT_VERTEX_LIMIT}"
                ))
            })?;
        let m = self.edge_count() * other.n * other.n + self.n * other.edge_count();
        if m > PRODUCT_EDGE_LIMIT {
            return Err(Error::Resource(format!(
                "product edge count {m} exceeds limit {PRODUCT_EDGE_LIMIT}"
            )));
        }
        let id = |g: usize, h: usize| g * other.n + h;
        let mut set = BTreeSet::new();
        for &(g1, g2) in &self.edges {
            for h1 in 0..other.n {
                for h2 in 0..other.n {
                    set.insert(norm_pair(id(g1, h1), id(g2, h2)));
                }
            }
        }
        for g in 0..self.n {
            for &(h1, h2) in &other.edges {
                set.insert(norm_pair(id(g, h1), id(g, h2)));
            }
        }
        Ok(Self::from_edge_set(n, set))
    }

    /// Parses the edge-list text format: optional `#` comment lines, a header
    /// `n m`, then m lines `u v`. Unordered endpoints are tolerated.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut header: Option<(usize, usize)> = None;
        let mut pairs: Vec<Pair> = Vec::new();
        let mut seen = BTreeSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected two integers, got {:?}", line),
                });
            }
            let a: usize = fields[0].parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("bad integer {:?}", fields[0]),
            })?;
            let b: usize = fields[1].parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("bad integer {:?}", fields[1]),
            })?;
            match header {
                None => header = Some((a, b)),
                Some((n, _)) => {
                    if a == b {
                        return Err(Error::Parse {
                            line: lineno,
                            message: format!("self-loop at vertex {a}"),
                        });
                    }
                    if a >= n || b >= n {
                        return Err(Error::Parse {
                            line: lineno,
                            message: format!("edge ({a},{b}) out of range for n = {n}"),
                        });
                    }
                    if !seen.insert(norm_pair(a, b)) {
                        return Err(Error::Parse {
                            line: lineno,
                            message: format!("duplicate edge ({a},{b})"),
                        });
                    }
                    pairs.push((a, b));
                }
            }
        }
        let Some((n, m)) = header else {
            return Err(Error::Parse {
                line: 1,
                message: "missing `n m` header".into(),
            });
        };
        if pairs.len() != m {
            return Err(Error::Parse {
                line: text.lines().count(),
                message: format!("header declares {m} edges, found {}", pairs.len()),
            });
        }
        Graph::new(n, pairs)
    }

    /// Emits the canonical edge-list text (u < v, sorted).
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}
