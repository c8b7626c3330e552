//! Clique-partition upper bound on the rigidity-matroid rank.
//!
//! For edge sets E_0, E_1, ..., E_s covering E with |V(E_i)| >= d+1 for
//! i >= 1, the rank is at most |E_0| + Σ_i (d·|V(E_i)| - (d+1 choose 2)):
//! loose edges count one each, every other part counts by its vertex span.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{norm_pair, Graph, Pair};
use crate::rank::{generic_rank, RankOpts};

/// A distinguished loose edge set plus edge groups; groups may overlap and
/// typically are clique edge sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliquePartition {
    pub loose: Vec<Pair>,
    pub parts: Vec<Vec<Pair>>,
}

impl CliquePartition {
    pub fn new(loose: Vec<Pair>, parts: Vec<Vec<Pair>>) -> Self {
        CliquePartition { loose, parts }
    }
}

fn vertex_span(part: &[Pair]) -> usize {
    let mut vs = BTreeSet::new();
    for &(u, v) in part {
        vs.insert(u);
        vs.insert(v);
    }
    vs.len()
}

fn validate(p: &CliquePartition, g: &Graph, d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::Input(format!(
            "partition rank bound needs d >= 2, got {d}"
        )));
    }
    let edge_set: BTreeSet<Pair> = g.edges().iter().copied().collect();
    let mut covered: BTreeSet<Pair> = BTreeSet::new();
    for &(u, v) in &p.loose {
        let e = norm_pair(u, v);
        if !edge_set.contains(&e) {
            return Err(Error::Input(format!(
                "loose edge ({},{}) is not an edge of the graph",
                e.0, e.1
            )));
        }
        covered.insert(e);
    }
    for (i, part) in p.parts.iter().enumerate() {
        for &(u, v) in part {
            let e = norm_pair(u, v);
            if !edge_set.contains(&e) {
                return Err(Error::Input(format!(
                    "part {i} contains ({},{}) which is not an edge of the graph",
                    e.0, e.1
                )));
            }
            covered.insert(e);
        }
        let span = vertex_span(part);
        if span < d + 1 {
            return Err(Error::Input(format!(
                "part {i} spans {span} vertices, needs at least {}",
                d + 1
            )));
        }
    }
    if covered != edge_set {
        let missing = edge_set.difference(&covered).count();
        return Err(Error::Input(format!(
            "partition misses {missing} edges of the graph"
        )));
    }
    Ok(())
}

/// |E_0| + Σ_i (d·|V(E_i)| - d(d+1)/2) after validating coverage and spans.
pub fn partition_rank_bound(p: &CliquePartition, g: &Graph, d: usize) -> Result<usize> {
    validate(p, g, d)?;
    let per_part: usize = p
        .parts
        .iter()
        .map(|part| d * vertex_span(part) - d * (d + 1) / 2)
        .sum();
    Ok(p.loose.len() + per_part)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundDominance {
    pub rank: usize,
    pub bound: usize,
}

/// Computes both the measured rank and the bound; a measured rank above the
/// bound signals an engine bug.
pub fn verify_bound_dominates_rank(
    p: &CliquePartition,
    g: &Graph,
    d: usize,
    opts: &RankOpts,
) -> Result<BoundDominance> {
    let bound = partition_rank_bound(p, g, d)?;
    let rank = generic_rank(g.edges(), g.n(), d, opts)?;
    if rank > bound {
        return Err(Error::PropertyViolation(format!(
            "measured rank {rank} exceeds partition bound {bound}"
        )));
    }
    Ok(BoundDominance { rank, bound })
}
