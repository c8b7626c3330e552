//! Vertex connectivity via unit-vertex-capacity max-flow (Menger).
//!
//! κ(G) is the minimum over a standard pair-selection scheme: fix a
//! minimum-degree vertex v, run s-t flows from v to every non-neighbor, then
//! between every non-adjacent pair of neighbors of v. Complete graphs
//! short-circuit to n-1.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// (component count, component id per vertex)
pub fn connected_components(g: &Graph) -> (usize, Vec<usize>) {
    let n = g.n();
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut queue = VecDeque::from([start]);
        comp[start] = count;
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v).expect("in range") {
                if comp[w] == usize::MAX {
                    comp[w] = count;
                    queue.push_back(w);
                }
            }
        }
        count += 1;
    }
    (count, comp)
}

pub fn is_connected(g: &Graph) -> bool {
    g.n() <= 1 || connected_components(g).0 == 1
}

#[derive(Clone, Copy)]
struct Arc {
    to: usize,
    cap: u32,
    rev: usize,
}

struct FlowNet {
    adj: Vec<Vec<Arc>>,
}

impl FlowNet {
    /// Split digraph: in(v) = 2v, out(v) = 2v+1; vertex arcs capacity 1,
    /// edge arcs effectively infinite.
    fn from_graph(g: &Graph) -> FlowNet {
        let n = g.n();
        let big = n as u32;
        let mut net = FlowNet {
            adj: vec![Vec::new(); 2 * n],
        };
        for v in 0..n {
            net.add_arc(2 * v, 2 * v + 1, 1);
        }
        for &(u, v) in g.edges() {
            net.add_arc(2 * u + 1, 2 * v, big);
            net.add_arc(2 * v + 1, 2 * u, big);
        }
        net
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        let rev_from = self.adj[to].len();
        let rev_to = self.adj[from].len();
        self.adj[from].push(Arc {
            to,
            cap,
            rev: rev_from,
        });
        self.adj[to].push(Arc {
            to: from,
            cap: 0,
            rev: rev_to,
        });
    }

    /// Edmonds–Karp augmentation until no path remains.
    fn max_flow(&mut self, s: usize, t: usize) -> u32 {
        let mut total = 0;
        loop {
            let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.adj.len()];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                if v == t {
                    break;
                }
                for (i, arc) in self.adj[v].iter().enumerate() {
                    if arc.cap > 0 && prev[arc.to].is_none() && arc.to != s {
                        prev[arc.to] = Some((v, i));
                        queue.push_back(arc.to);
                    }
                }
            }
            if prev[t].is_none() {
                return total;
            }
            let mut bottleneck = u32::MAX;
            let mut node = t;
            while node != s {
                let (pv, pi) = prev[node].expect("path");
                bottleneck = bottleneck.min(self.adj[pv][pi].cap);
                node = pv;
            }
            let mut node = t;
            while node != s {
                let (pv, pi) = prev[node].expect("path");
                let rev = self.adj[pv][pi].rev;
                self.adj[pv][pi].cap -= bottleneck;
                self.adj[node][rev].cap += bottleneck;
                node = pv;
            }
            total += bottleneck;
        }
    }

    /// Residual-reachable set from `s`.
    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for arc in &self.adj[v] {
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    queue.push_back(arc.to);
                }
            }
        }
        seen
    }
}

/// Minimum vertex cut separating non-adjacent s and t, with the cut set.
fn st_vertex_cut(g: &Graph, s: usize, t: usize) -> (usize, Vec<usize>) {
    debug_assert!(!g.has_edge(s, t) && s != t);
    let mut net = FlowNet::from_graph(g);
    let value = net.max_flow(2 * s + 1, 2 * t) as usize;
    let seen = net.reachable(2 * s + 1);
    let cut: Vec<usize> = (0..g.n())
        .filter(|&v| seen[2 * v] && !seen[2 * v + 1])
        .collect();
    debug_assert_eq!(cut.len(), value);
    (value, cut)
}

/// κ(G) plus a witnessing minimum vertex cut (None for complete graphs,
/// empty for disconnected graphs).
pub fn vertex_connectivity_with_cut(g: &Graph) -> Result<(usize, Option<Vec<usize>>)> {
    let n = g.n();
    if n < 2 {
        return Err(Error::Input(format!(
            "vertex connectivity needs n >= 2, got {n}"
        )));
    }
    if g.is_complete() {
        return Ok((n - 1, None));
    }
    if !is_connected(g) {
        return Ok((0, Some(Vec::new())));
    }
    let v0 = (0..n)
        .min_by_key(|&v| g.degree(v).expect("in range"))
        .expect("n >= 2");
    let mut best: Option<(usize, Vec<usize>)> = None;
    let consider = |g: &Graph, s: usize, t: usize, best: &mut Option<(usize, Vec<usize>)>| {
        let (value, cut) = st_vertex_cut(g, s, t);
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            *best = Some((value, cut));
        }
    };
    let nbrs = g.neighbors(v0)?.to_vec();
    for u in 0..n {
        if u != v0 && !g.has_edge(v0, u) {
            consider(g, v0, u, &mut best);
        }
    }
    for (i, &x) in nbrs.iter().enumerate() {
        for &y in &nbrs[i + 1..] {
            if !g.has_edge(x, y) {
                consider(g, x, y, &mut best);
            }
        }
    }
    let (kappa, cut) = best.expect("non-complete graph has a non-adjacent pair");
    Ok((kappa, Some(cut)))
}

pub fn vertex_connectivity(g: &Graph) -> Result<usize> {
    vertex_connectivity_with_cut(g).map(|(k, _)| k)
}
