//! Ordering-induced subgraphs and the dependence probe.
//!
//! Processing vertices along an ordering, each vertex connects back to a
//! selection of its ordered parents (earlier neighbors):
//!
//!   1. at most d parents: take them all;
//!   2. more than d parents forming a clique: take d of them;
//!   3. more than d parents, not a clique: take d+1 including at least one
//!      non-adjacent pair.
//!
//! Every construction records per-vertex provenance (rule taken, parents
//! chosen) and can be revalidated independently of the builder.

use serde::{Deserialize, Serialize};

use crate::cliques::{clique_intersection_condition, neighborhood_is_clique};
use crate::error::{Error, Result};
use crate::graph::{norm_pair, Graph, Pair};
use crate::rank::{is_independent, RankOpts};
use crate::rng::{derive_seed, stream, Rng};

/// A permutation of the vertex set, listing vertices in processing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ordering {
    seq: Vec<usize>,
}

impl Ordering {
    pub fn new(seq: Vec<usize>) -> Result<Self> {
        let n = seq.len();
        let mut seen = vec![false; n];
        for &v in &seq {
            if v >= n || seen[v] {
                return Err(Error::Input(
                    "ordering must be a permutation of 0..n-1".into(),
                ));
            }
            seen[v] = true;
        }
        Ok(Ordering { seq })
    }

    pub fn identity(n: usize) -> Self {
        Ordering {
            seq: (0..n).collect(),
        }
    }

    pub fn random(n: usize, rng: &mut Rng) -> Self {
        let mut seq: Vec<usize> = (0..n).collect();
        rng.shuffle(&mut seq);
        Ordering { seq }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// position[v] = index of v in the sequence
    fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.seq.len()];
        for (i, &v) in self.seq.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChoicePolicy {
    Lexicographic,
    SeededRandom(u64),
}

/// Which construction rule a vertex took: 1 takes all parents, 2 takes d
/// parents from a parent clique, 3 takes d+1 spanning a non-adjacent pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum StepRule {
    AllParents,
    CliqueSubset,
    SpreadPair,
}

impl StepRule {
    pub fn code(self) -> u8 {
        match self {
            StepRule::AllParents => 1,
            StepRule::CliqueSubset => 2,
            StepRule::SpreadPair => 3,
        }
    }
}

impl From<StepRule> for u8 {
    fn from(rule: StepRule) -> u8 {
        rule.code()
    }
}

impl TryFrom<u8> for StepRule {
    type Error = String;
    fn try_from(code: u8) -> std::result::Result<Self, String> {
        match code {
            1 => Ok(StepRule::AllParents),
            2 => Ok(StepRule::CliqueSubset),
            3 => Ok(StepRule::SpreadPair),
            other => Err(format!("step rule must be 1, 2 or 3, got {other}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub vertex: usize,
    pub rule: StepRule,
    pub chosen: Vec<usize>,
}

/// A constructed subgraph plus the ordering and per-step choices that
/// produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedSubgraph {
    graph: Graph,
    ordering: Ordering,
    steps: Vec<Step>,
}

/// Serialized provenance: the ordering, then per-vertex (rule, chosen
/// parents). Reconstructs the subgraph losslessly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub ordering: Vec<usize>,
    pub steps: Vec<Step>,
}

impl OrderedSubgraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn ordering(&self) -> &Ordering {
        &self.ordering
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn to_provenance(&self) -> Provenance {
        Provenance {
            ordering: self.ordering.seq.clone(),
            steps: self.steps.clone(),
        }
    }

    pub fn from_provenance(p: Provenance) -> Result<Self> {
        let ordering = Ordering::new(p.ordering)?;
        let n = ordering.len();
        if p.steps.len() != n {
            return Err(Error::Input(format!(
                "provenance has {} steps for {} vertices",
                p.steps.len(),
                n
            )));
        }
        let mut edges: Vec<Pair> = Vec::new();
        for step in &p.steps {
            for &w in &step.chosen {
                edges.push(norm_pair(step.vertex, w));
            }
        }
        Ok(OrderedSubgraph {
            graph: Graph::new(n, edges)?,
            ordering,
            steps: p.steps,
        })
    }

    /// Revalidates the construction against the host graph, independent of
    /// the builder: parents recomputed from scratch, rules rechecked, the
    /// edge set recomputed from the choices.
    pub fn validate(&self, g: &Graph, d: usize) -> Result<()> {
        let fail = |msg: String| Err(Error::PropertyViolation(msg));
        if self.ordering.len() != g.n() {
            return fail("ordering length differs from host vertex count".into());
        }
        let mut union: Vec<Pair> = Vec::new();
        for (i, step) in self.steps.iter().enumerate() {
            if step.vertex != self.ordering.seq[i] {
                return fail(format!("step {i} is out of ordering order"));
            }
            let parents = ordered_parents(g, &self.ordering, step.vertex)?;
            let mut chosen = step.chosen.clone();
            chosen.sort_unstable();
            chosen.dedup();
            if chosen.len() != step.chosen.len() {
                return fail(format!("step {i} repeats a chosen parent"));
            }
            if !chosen.iter().all(|w| parents.binary_search(w).is_ok()) {
                return fail(format!("step {i} chose a non-parent"));
            }
            let parents_clique = g.is_clique(&parents)?;
            match step.rule {
                StepRule::AllParents => {
                    if parents.len() > d {
                        return fail(format!("step {i}: rule 1 with ordered degree > d"));
                    }
                    if chosen != parents {
                        return fail(format!("step {i}: rule 1 must take all parents"));
                    }
                }
                StepRule::CliqueSubset => {
                    if parents.len() <= d || !parents_clique {
                        return fail(format!("step {i}: rule 2 preconditions violated"));
                    }
                    if chosen.len() != d {
                        return fail(format!("step {i}: rule 2 must choose d parents"));
                    }
                }
                StepRule::SpreadPair => {
                    if parents.len() <= d || parents_clique {
                        return fail(format!("step {i}: rule 3 preconditions violated"));
                    }
                    if chosen.len() != d + 1 {
                        return fail(format!("step {i}: rule 3 must choose d+1 parents"));
                    }
                    let has_gap = chosen.iter().enumerate().any(|(a, &x)| {
                        chosen[a + 1..].iter().any(|&y| !g.has_edge(x, y))
                    });
                    if !has_gap {
                        return fail(format!(
                            "step {i}: rule 3 choice contains no non-adjacent pair"
                        ));
                    }
                }
            }
            union.extend(chosen.iter().map(|&w| norm_pair(step.vertex, w)));
        }
        union.sort_unstable();
        if union != self.graph.edges() {
            return fail("edge set differs from the union of choices".into());
        }
        Ok(())
    }
}

/// Earlier neighbors of v in the ordering, sorted by vertex id.
pub fn ordered_parents(g: &Graph, ordering: &Ordering, v: usize) -> Result<Vec<usize>> {
    g.check_vertex(v)?;
    if ordering.len() != g.n() {
        return Err(Error::Input(
            "ordering length differs from vertex count".into(),
        ));
    }
    let pos = ordering.positions();
    let mut parents: Vec<usize> = g
        .neighbors(v)?
        .iter()
        .copied()
        .filter(|&w| pos[w] < pos[v])
        .collect();
    parents.sort_unstable();
    Ok(parents)
}

/// Non-adjacent pairs among `parents`, in lexicographic order.
fn non_adjacent_pairs(g: &Graph, parents: &[usize]) -> Vec<Pair> {
    let mut out = Vec::new();
    for (i, &x) in parents.iter().enumerate() {
        for &y in &parents[i + 1..] {
            if !g.has_edge(x, y) {
                out.push((x, y));
            }
        }
    }
    out
}

/// Runs the three-rule construction along `ordering`.
pub fn build_ordered_subgraph(
    g: &Graph,
    ordering: &Ordering,
    d: usize,
    policy: ChoicePolicy,
) -> Result<OrderedSubgraph> {
    if d < 2 {
        return Err(Error::Input(format!(
            "ordering-induced construction needs d >= 2, got {d}"
        )));
    }
    if ordering.len() != g.n() {
        return Err(Error::Input(
            "ordering length differs from vertex count".into(),
        ));
    }
    let mut rng = match policy {
        ChoicePolicy::Lexicographic => None,
        ChoicePolicy::SeededRandom(seed) => Some(Rng::from_seed(seed)),
    };
    let pos = ordering.positions();
    let mut steps: Vec<Step> = Vec::with_capacity(g.n());
    let mut edges: Vec<Pair> = Vec::new();
    for (i, &v) in ordering.as_slice().iter().enumerate() {
        let mut parents: Vec<usize> = g
            .neighbors(v)?
            .iter()
            .copied()
            .filter(|&w| pos[w] < i)
            .collect();
        parents.sort_unstable();
        let (rule, chosen) = if parents.len() <= d {
            (StepRule::AllParents, parents)
        } else if g.is_clique(&parents)? {
            let chosen = match &mut rng {
                None => parents[..d].to_vec(),
                Some(rng) => rng.choose_subset(&parents, d),
            };
            (StepRule::CliqueSubset, chosen)
        } else {
            let gaps = non_adjacent_pairs(g, &parents);
            if gaps.is_empty() {
                return Err(Error::PropertyViolation(
                    "non-clique parent set has no non-adjacent pair".into(),
                ));
            }
            let (a, b) = match &mut rng {
                None => gaps[0],
                Some(rng) => gaps[rng.below(gaps.len())],
            };
            let rest: Vec<usize> = parents
                .iter()
                .copied()
                .filter(|&w| w != a && w != b)
                .collect();
            let fill = match &mut rng {
                None => rest[..d - 1].to_vec(),
                Some(rng) => rng.choose_subset(&rest, d - 1),
            };
            let mut chosen = vec![a, b];
            chosen.extend(fill);
            chosen.sort_unstable();
            (StepRule::SpreadPair, chosen)
        };
        edges.extend(chosen.iter().map(|&w| norm_pair(v, w)));
        steps.push(Step {
            vertex: v,
            rule,
            chosen,
        });
    }
    let built = OrderedSubgraph {
        graph: Graph::new(g.n(), edges)?,
        ordering: ordering.clone(),
        steps,
    };
    debug_assert!(built.validate(g, d).is_ok());
    Ok(built)
}

/// Σ over vertices of the per-rule edge contribution (deg for rule 1, d for
/// rule 2, d+1 for rule 3); must equal the edge count.
pub fn edge_count_profile(os: &OrderedSubgraph, d: usize) -> Result<usize> {
    let total: usize = os
        .steps
        .iter()
        .map(|s| match s.rule {
            StepRule::AllParents => s.chosen.len(),
            StepRule::CliqueSubset => d,
            StepRule::SpreadPair => d + 1,
        })
        .sum();
    if total != os.graph.edge_count() {
        return Err(Error::PropertyViolation(format!(
            "edge profile {total} does not match edge count {} (corrupt provenance)",
            os.graph.edge_count()
        )));
    }
    Ok(total)
}

/// `count` independent samples over (uniform ordering × random choices),
/// reproducible from the seed.
pub fn sample_ordered_subgraphs(
    g: &Graph,
    d: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<OrderedSubgraph>> {
    if count == 0 {
        return Err(Error::Input("sampling needs count >= 1".into()));
    }
    (0..count)
        .map(|idx| {
            let sample_seed = derive_seed(seed, stream::ORDERING_SAMPLE, idx as u64);
            let mut order_rng = Rng::from_seed(derive_seed(sample_seed, 1, 0));
            let ordering = Ordering::random(g.n(), &mut order_rng);
            build_ordered_subgraph(
                g,
                &ordering,
                d,
                ChoicePolicy::SeededRandom(derive_seed(sample_seed, 2, 0)),
            )
        })
        .collect()
}

/// Hypothesis flags for "some ordering-induced subgraph is dependent":
/// minimum degree d(d+1), no neighborhood a clique, and the bound on
/// pairwise intersections of maximal neighborhood cliques.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeHypotheses {
    pub min_degree: bool,
    pub no_clique_neighborhood: bool,
    pub clique_intersections: bool,
}

impl ProbeHypotheses {
    pub fn all_hold(&self) -> bool {
        self.min_degree && self.no_clique_neighborhood && self.clique_intersections
    }
}

#[derive(Clone, Debug)]
pub struct ProbeOutcome {
    pub hypotheses: ProbeHypotheses,
    pub sampled: usize,
    /// First sampled subgraph that rank-tested dependent, if any.
    pub witness: Option<OrderedSubgraph>,
}

/// Samples up to `budget` subgraphs and rank-tests each; returns the first
/// dependent one with provenance.
pub fn find_dependent_subgraph(
    g: &Graph,
    d: usize,
    budget: usize,
    seed: u64,
    rank_opts: &RankOpts,
    clique_limit: usize,
) -> Result<ProbeOutcome> {
    if budget == 0 {
        return Err(Error::Input("probe needs budget >= 1".into()));
    }
    let threshold = d * (d + 1);
    let min_degree = (0..g.n()).all(|v| g.degree(v).expect("in range") >= threshold);
    let no_clique_neighborhood =
        (0..g.n()).try_fold(true, |acc, v| -> Result<bool> {
            Ok(acc && !neighborhood_is_clique(g, v)?)
        })?;
    let clique_intersections = clique_intersection_condition(g, d, clique_limit)?;
    let hypotheses = ProbeHypotheses {
        min_degree,
        no_clique_neighborhood,
        clique_intersections,
    };
    for idx in 0..budget {
        let sample_seed = derive_seed(seed, stream::ORDERING_SAMPLE, idx as u64);
        let mut order_rng = Rng::from_seed(derive_seed(sample_seed, 1, 0));
        let ordering = Ordering::random(g.n(), &mut order_rng);
        let os = build_ordered_subgraph(
            g,
            &ordering,
            d,
            ChoicePolicy::SeededRandom(derive_seed(sample_seed, 2, 0)),
        )?;
        if !is_independent(os.graph().edges(), g.n(), d, rank_opts)? {
            return Ok(ProbeOutcome {
                hypotheses,
                sampled: idx + 1,
                witness: Some(os),
            });
        }
    }
    Ok(ProbeOutcome {
        hypotheses,
        sampled: budget,
        witness: None,
    })
}
