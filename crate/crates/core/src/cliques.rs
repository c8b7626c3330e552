//! Maximal-clique enumeration on neighborhood-induced subgraphs.
//!
//! Enumeration runs pivoting Bron–Kerbosch on G[N(v)] only, never on the full
//! graph, with a hard count limit turning blow-ups into resource errors.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_CLIQUE_LIMIT: usize = 1_000_000;

/// Word-packed vertex set over a small local universe.
type Bits = Vec<u64>;

fn bits_new(words: usize) -> Bits {
    vec![0u64; words]
}

fn bits_set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn bits_get(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn bits_and(a: &Bits, b: &Bits) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn bits_is_empty(b: &Bits) -> bool {
    b.iter().all(|&w| w == 0)
}

fn bits_count(b: &Bits) -> usize {
    b.iter().map(|w| w.count_ones() as usize).sum()
}

fn bits_iter(b: &Bits) -> impl Iterator<Item = usize> + '_ {
    b.iter().enumerate().flat_map(|(wi, &w)| {
        (0..64).filter_map(move |bit| (w >> bit & 1 == 1).then_some(wi * 64 + bit))
    })
}

fn bits_clear(b: &mut Bits, i: usize) {
    b[i / 64] &= !(1 << (i % 64));
}

struct Enumerator<'a> {
    adj: &'a [Bits],
    limit: usize,
    found: Vec<Vec<usize>>,
}

impl Enumerator<'_> {
    fn run(&mut self, r: &mut Vec<usize>, mut p: Bits, mut x: Bits) -> Result<()> {
        if bits_is_empty(&p) && bits_is_empty(&x) {
            if self.found.len() >= self.limit {
                return Err(Error::Resource(format!(
                    "maximal clique count exceeds limit {}",
                    self.limit
                )));
            }
            self.found.push(r.clone());
            return Ok(());
        }
        // pivot: member of P ∪ X with most neighbors inside P
        let pivot = bits_iter(&p)
            .chain(bits_iter(&x))
            .max_by_key(|&u| bits_count(&bits_and(&p, &self.adj[u])))
            .expect("nonempty P ∪ X");
        let candidates: Vec<usize> = bits_iter(&p)
            .filter(|&u| !bits_get(&self.adj[pivot], u))
            .collect();
        for u in candidates {
            r.push(u);
            self.run(r, bits_and(&p, &self.adj[u]), bits_and(&x, &self.adj[u]))?;
            r.pop();
            bits_clear(&mut p, u);
            bits_set(&mut x, u);
        }
        Ok(())
    }
}

/// All inclusion-maximal cliques of the subgraph induced by `vertices`,
/// reported as sorted sets of original vertex ids, in lexicographic order.
fn maximal_cliques_induced(g: &Graph, vertices: &[usize], limit: usize) -> Result<Vec<Vec<usize>>> {
    let m = vertices.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let words = m.div_ceil(64);
    let mut adj = vec![bits_new(words); m];
    for i in 0..m {
        for j in (i + 1)..m {
            if g.has_edge(vertices[i], vertices[j]) {
                bits_set(&mut adj[i], j);
                bits_set(&mut adj[j], i);
            }
        }
    }
    let mut p = bits_new(words);
    for i in 0..m {
        bits_set(&mut p, i);
    }
    let mut en = Enumerator {
        adj: &adj,
        limit,
        found: Vec::new(),
    };
    en.run(&mut Vec::new(), p, bits_new(words))?;
    let mut out: Vec<Vec<usize>> = en
        .found
        .into_iter()
        .map(|local| {
            let mut c: Vec<usize> = local.into_iter().map(|i| vertices[i]).collect();
            c.sort_unstable();
            c
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Maximal cliques of G[N(v)].
pub fn maximal_neighborhood_cliques(g: &Graph, v: usize, limit: usize) -> Result<Vec<Vec<usize>>> {
    let nbrs = g.neighbors(v)?.to_vec();
    maximal_cliques_induced(g, &nbrs, limit)
}

/// True iff N(v) induces a clique.
pub fn neighborhood_is_clique(g: &Graph, v: usize) -> Result<bool> {
    let nbrs = g.neighbors(v)?.to_vec();
    g.is_clique(&nbrs)
}

fn sorted_intersection_size(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// True iff for every vertex v, any two distinct maximal cliques of G[N(v)]
/// intersect in at most d-2 vertices.
pub fn clique_intersection_condition(g: &Graph, d: usize, limit: usize) -> Result<bool> {
    if d < 2 {
        return Err(Error::Input(format!(
            "clique intersection condition needs d >= 2, got {d}"
        )));
    }
    for v in 0..g.n() {
        let cliques = maximal_neighborhood_cliques(g, v, limit)?;
        for (i, a) in cliques.iter().enumerate() {
            for b in &cliques[i + 1..] {
                if sorted_intersection_size(a, b) > d - 2 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
