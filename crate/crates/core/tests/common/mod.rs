//! Shared helpers for integration tests: reference graphs and independent
//! oracles (exact integer rank, brute-force automorphisms).
#![allow(dead_code)]

use num_bigint::BigInt;
use rigi_core::graph::{norm_pair, Graph, Pair};

pub fn circulant(n: usize, conns: &[usize]) -> Graph {
    let mut pairs = std::collections::BTreeSet::new();
    for i in 0..n {
        for &c in conns {
            pairs.insert(norm_pair(i, (i + c) % n));
        }
    }
    Graph::new(n, pairs).unwrap()
}

/// The Petersen graph: outer 5-cycle, inner pentagram, spokes.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push(norm_pair(i, (i + 1) % 5));
        edges.push(norm_pair(i, i + 5));
        edges.push(norm_pair(i + 5, (i + 2) % 5 + 5));
    }
    Graph::new(10, edges).unwrap()
}

/// Multiplicative-congruential generator for oracle coordinates; decoupled
/// from the library's RNG on purpose.
pub struct OracleRng(u64);

impl OracleRng {
    pub fn new(seed: u64) -> Self {
        OracleRng(seed.wrapping_mul(2862933555777941757).wrapping_add(3037000493))
    }

    pub fn next(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 11
    }

    /// Uniform-ish in [1, bound]
    pub fn in_range(&mut self, bound: u64) -> u64 {
        1 + self.next() % bound
    }
}

/// Exact rank over the integers via fraction-free (Bareiss) elimination.
/// Equivalent to the rank over the rationals; entirely independent of the
/// library's mod-p path.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let zero = BigInt::from(0);
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(pivot) = (r..m.len()).find(|&i| m[i][c] != zero) else {
            continue;
        };
        m.swap(r, pivot);
        for i in (r + 1)..m.len() {
            for j in (c + 1)..cols {
                let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = num / &prev; // exact by the Bareiss identity
            }
            m[i][c] = zero.clone();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Rank of the rigidity matrix at integer coordinates in [1, coord_bound],
/// computed exactly over the integers.
pub fn integer_rigidity_rank(
    pairs: &[Pair],
    n: usize,
    d: usize,
    seed: u64,
    coord_bound: u64,
) -> usize {
    let mut rng = OracleRng::new(seed);
    let coords: Vec<Vec<i64>> = (0..n)
        .map(|_| (0..d).map(|_| rng.in_range(coord_bound) as i64).collect())
        .collect();
    let rows: Vec<Vec<BigInt>> = pairs
        .iter()
        .map(|&(u, v)| {
            let mut row = vec![BigInt::from(0); d * n];
            for t in 0..d {
                let diff = coords[u][t] - coords[v][t];
                row[d * u + t] = BigInt::from(diff);
                row[d * v + t] = BigInt::from(-diff);
            }
            row
        })
        .collect();
    bareiss_rank(rows)
}

/// Best-of-two integer-coordinate draws; the exact-rational generic-rank
/// oracle used by the acceptance suite.
pub fn rational_generic_rank(pairs: &[Pair], n: usize, d: usize, seed: u64) -> usize {
    let a = integer_rigidity_rank(pairs, n, d, seed, 1_000_000);
    let b = integer_rigidity_rank(pairs, n, d, seed ^ 0x9E37_79B9, 1_000_000);
    a.max(b)
}

/// Component count by plain DFS, independent of the library's traversal.
pub fn component_count(n: usize, pairs: &[Pair]) -> usize {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in pairs {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut count = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// All automorphisms of g by filtering all n! permutations.
pub fn brute_force_automorphisms(g: &Graph) -> std::collections::HashSet<Vec<usize>> {
    fn go(
        rest: &mut Vec<usize>,
        acc: &mut Vec<usize>,
        g: &Graph,
        out: &mut std::collections::HashSet<Vec<usize>>,
    ) {
        if rest.is_empty() {
            let ok = g
                .edges()
                .iter()
                .all(|&(u, v)| g.has_edge(acc[u], acc[v]));
            if ok {
                out.insert(acc.clone());
            }
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            acc.push(x);
            // prune: the partial map must already preserve adjacency among
            // assigned vertices
            let k = acc.len();
            let consistent = (0..k - 1).all(|j| {
                g.has_edge(j, k - 1) == g.has_edge(acc[j], acc[k - 1])
            });
            if consistent {
                go(rest, acc, g, out);
            }
            acc.pop();
            rest.insert(i, x);
        }
    }
    let mut out = std::collections::HashSet::new();
    let mut rest: Vec<usize> = (0..g.n()).collect();
    go(&mut rest, &mut Vec::new(), g, &mut out);
    out
}

/// Connected 6-vertex graphs up to isomorphism, as canonical 15-bit edge
/// masks over the pair index (u,v) -> position in lexicographic pair order.
pub fn connected_graphs_on_six() -> Vec<Graph> {
    const N: usize = 6;
    let pairs: Vec<Pair> = (0..N)
        .flat_map(|u| ((u + 1)..N).map(move |v| (u, v)))
        .collect();
    let bit_of = |u: usize, v: usize| -> usize {
        pairs
            .iter()
            .position(|&p| p == norm_pair(u, v))
            .expect("valid pair")
    };
    // all 720 permutations of 6 points
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut items: Vec<usize> = (0..N).collect();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(N, &mut items, &mut perms);

    let apply = |mask: u32, perm: &[usize]| -> u32 {
        let mut out = 0u32;
        for (idx, &(u, v)) in pairs.iter().enumerate() {
            if mask >> idx & 1 == 1 {
                out |= 1 << bit_of(perm[u], perm[v]);
            }
        }
        out
    };
    let connected = |mask: u32| -> bool {
        let edge_list: Vec<Pair> = pairs
            .iter()
            .enumerate()
            .filter(|(idx, _)| mask >> idx & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        component_count(N, &edge_list) == 1
    };

    let mut canon_seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << 15) {
        if !connected(mask) {
            continue;
        }
        let canon = perms.iter().map(|p| apply(mask, p)).min().unwrap();
        if canon_seen.insert(canon) {
            let edge_list: Vec<Pair> = pairs
                .iter()
                .enumerate()
                .filter(|(idx, _)| canon >> idx & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            out.push(Graph::new(N, edge_list).unwrap());
        }
    }
    out
}
