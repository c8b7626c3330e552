//! Automorphism generators, orbits, and vertex-transitivity.
//!
//! The search individualizes vertices one at a time and prunes with an
//! equitable color refinement (iterated neighborhood-color signatures). A
//! generating set is assembled level by level: at level i the prefix 0..i-1
//! is fixed pointwise and one representative is searched per candidate image
//! of vertex i, skipping images already reachable by the generators found at
//! this level. A node budget converts pathological searches into resource
//! errors instead of hangs.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{norm_pair, Graph, Pair};

#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    pub node_budget: u64,
    pub max_vertices: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            node_budget: 10_000_000,
            max_vertices: 1000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPermutation {
    image: Vec<usize>,
}

impl VertexPermutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &x in &image {
            if x >= n || seen[x] {
                return Err(Error::Input("image is not a permutation".into()));
            }
            seen[x] = true;
        }
        Ok(VertexPermutation { image })
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, v: usize) -> usize {
        self.image[v]
    }

    /// Checks σ(E) = E edge by edge.
    pub fn preserves_edges(&self, g: &Graph) -> bool {
        self.image.len() == g.n()
            && g.edges()
                .iter()
                .all(|&(u, v)| g.has_edge(self.image[u], self.image[v]))
    }
}

#[derive(Clone, Debug, Default)]
pub struct AutomorphismGenerators {
    pub generators: Vec<VertexPermutation>,
}

/// One round of joint refinement over both colorings; colors on the two
/// sides share an id space so classes correspond. Returns false when the
/// class histograms diverge (no automorphism can match the individualized
/// prefixes).
fn joint_refine(g: &Graph, dom: &mut [u32], img: &mut [u32]) -> bool {
    let n = g.n();
    loop {
        let mut hist_dom: Vec<(u32, usize)> = histogram(dom);
        let hist_img: Vec<(u32, usize)> = histogram(img);
        if hist_dom != hist_img {
            return false;
        }
        let classes_before = hist_dom.len();
        hist_dom.clear();

        let signature = |colors: &[u32], v: usize| -> (u32, Vec<u32>) {
            let mut nbr: Vec<u32> = g
                .neighbors(v)
                .expect("in range")
                .iter()
                .map(|&w| colors[w])
                .collect();
            nbr.sort_unstable();
            (colors[v], nbr)
        };
        let mut keys: Vec<(u32, Vec<u32>)> = Vec::with_capacity(2 * n);
        for v in 0..n {
            keys.push(signature(dom, v));
        }
        for v in 0..n {
            keys.push(signature(img, v));
        }
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        let id_of = |key: &(u32, Vec<u32>)| -> u32 {
            sorted.binary_search(key).expect("present") as u32
        };
        for v in 0..n {
            dom[v] = id_of(&keys[v]);
        }
        for v in 0..n {
            img[v] = id_of(&keys[n + v]);
        }
        let classes_after = histogram(dom).len();
        if classes_after == classes_before {
            return histogram(dom) == histogram(img);
        }
    }
}

fn histogram(colors: &[u32]) -> Vec<(u32, usize)> {
    let mut sorted: Vec<u32> = colors.to_vec();
    sorted.sort_unstable();
    let mut out: Vec<(u32, usize)> = Vec::new();
    for c in sorted {
        match out.last_mut() {
            Some((color, count)) if *color == c => *count += 1,
            _ => out.push((c, 1)),
        }
    }
    out
}

fn search_node(
    g: &Graph,
    mut dom: Vec<u32>,
    mut img: Vec<u32>,
    budget: &mut u64,
) -> Result<Option<Vec<usize>>> {
    if *budget == 0 {
        return Err(Error::Resource(
            "automorphism search node budget exhausted".into(),
        ));
    }
    *budget -= 1;
    if !joint_refine(g, &mut dom, &mut img) {
        return Ok(None);
    }
    let n = g.n();
    // first color class with more than one vertex, smallest color id
    let mut class_size = std::collections::HashMap::new();
    for &c in dom.iter() {
        *class_size.entry(c).or_insert(0usize) += 1;
    }
    let branch_color = (0..n)
        .map(|v| dom[v])
        .filter(|c| class_size[c] > 1)
        .min();
    let Some(color) = branch_color else {
        // discrete: read the candidate map off matching singleton classes
        let mut map = vec![usize::MAX; n];
        let mut img_of_color = std::collections::HashMap::new();
        for (v, &color) in img.iter().enumerate() {
            img_of_color.insert(color, v);
        }
        for v in 0..n {
            map[v] = *img_of_color.get(&dom[v]).expect("histograms match");
        }
        let perm = VertexPermutation::new(map).expect("discrete classes give a bijection");
        if perm.preserves_edges(g) {
            return Ok(Some(perm.image));
        }
        return Ok(None);
    };
    let v = (0..n).find(|&v| dom[v] == color).expect("nonempty class");
    let fresh = dom.iter().chain(img.iter()).max().copied().unwrap_or(0) + 1;
    for w in (0..n).filter(|&w| img[w] == color) {
        let mut dom2 = dom.clone();
        let mut img2 = img.clone();
        dom2[v] = fresh;
        img2[w] = fresh;
        if let Some(found) = search_node(g, dom2, img2, budget)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// Searches for an automorphism with σ(base[i]) = targets[i] for all i.
fn find_extension(
    g: &Graph,
    base: &[usize],
    targets: &[usize],
    budget: &mut u64,
) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    let mut dom = vec![0u32; n];
    let mut img = vec![0u32; n];
    for (i, (&b, &t)) in base.iter().zip(targets).enumerate() {
        dom[b] = (i + 1) as u32;
        img[t] = (i + 1) as u32;
    }
    search_node(g, dom, img, budget)
}

fn orbit_under(gens: &[&VertexPermutation], start: usize, n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for g in gens {
            let w = g.apply(v);
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

/// A generating set of Aut(G). Each returned permutation preserves the edge
/// set; together they generate the full group.
pub fn automorphism_generators(
    g: &Graph,
    limits: &SearchLimits,
) -> Result<AutomorphismGenerators> {
    let n = g.n();
    if n > limits.max_vertices {
        return Err(Error::Resource(format!(
            "automorphism search limited to {} vertices, got {n}",
            limits.max_vertices
        )));
    }
    let mut budget = limits.node_budget;
    let mut gens: Vec<VertexPermutation> = Vec::new();
    let mut prefix: Vec<usize> = Vec::new();
    for v in 0..n {
        let mut dom = vec![0u32; n];
        for (i, &b) in prefix.iter().enumerate() {
            dom[b] = (i + 1) as u32;
        }
        let mut img = dom.clone();
        let compatible = joint_refine(g, &mut dom, &mut img);
        debug_assert!(compatible, "a coloring is always compatible with itself");
        let cell: Vec<usize> = (0..n).filter(|&w| dom[w] == dom[v] && w != v).collect();
        if !cell.is_empty() {
            let level_gens = |gens: &[VertexPermutation]| -> Vec<usize> {
                (0..gens.len())
                    .filter(|&i| prefix.iter().all(|&b| gens[i].apply(b) == b))
                    .collect()
            };
            let orbit_of_v = |gens: &[VertexPermutation]| -> Vec<bool> {
                let selected: Vec<&VertexPermutation> =
                    level_gens(gens).into_iter().map(|i| &gens[i]).collect();
                orbit_under(&selected, v, n)
            };
            let mut orbit = orbit_of_v(&gens);
            for w in cell {
                if orbit[w] {
                    continue;
                }
                let mut base = prefix.clone();
                base.push(v);
                let mut targets = prefix.clone();
                targets.push(w);
                if let Some(image) = find_extension(g, &base, &targets, &mut budget)? {
                    let perm = VertexPermutation::new(image).expect("search returns bijections");
                    debug_assert!(perm.preserves_edges(g));
                    gens.push(perm);
                    orbit = orbit_of_v(&gens);
                }
            }
        }
        prefix.push(v);
    }
    Ok(AutomorphismGenerators { generators: gens })
}

/// Orbit of `v` under the generated group, sorted.
pub fn vertex_orbit(gens: &AutomorphismGenerators, v: usize, n: usize) -> Vec<usize> {
    let refs: Vec<&VertexPermutation> = gens.generators.iter().collect();
    let seen = orbit_under(&refs, v, n);
    (0..n).filter(|&w| seen[w]).collect()
}

pub fn is_vertex_transitive(g: &Graph, limits: &SearchLimits) -> Result<bool> {
    if g.n() == 0 {
        return Err(Error::Input("vertex transitivity needs n >= 1".into()));
    }
    if g.n() == 1 {
        return Ok(true);
    }
    let gens = automorphism_generators(g, limits)?;
    Ok(vertex_orbit(&gens, 0, g.n()).len() == g.n())
}

/// Orbit of the unordered pair {u, v} under Aut(G), sorted canonically.
pub fn pair_orbit(g: &Graph, u: usize, v: usize, limits: &SearchLimits) -> Result<Vec<Pair>> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::Input("pair orbit needs two distinct vertices".into()));
    }
    let gens = automorphism_generators(g, limits)?;
    pair_orbit_under(&gens, u, v)
}

/// Orbit closure of {u, v} under an existing generating set.
pub fn pair_orbit_under(
    gens: &AutomorphismGenerators,
    u: usize,
    v: usize,
) -> Result<Vec<Pair>> {
    let start = norm_pair(u, v);
    let mut seen: BTreeSet<Pair> = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((a, b)) = queue.pop_front() {
        for g in &gens.generators {
            let next = norm_pair(g.apply(a), g.apply(b));
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}
