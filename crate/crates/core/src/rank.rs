//! Generic rigidity-matroid ranks via randomized realizations over GF(p).
//!
//! A generic point is replaced by uniform random coordinates modulo
//! p = 2^61 - 1; the rank of the rigidity matrix at such a point is a lower
//! bound on the generic rank and equals it except with probability on the
//! order of rows·cols/p per trial (Schwartz–Zippel). Taking the maximum over
//! independent trials only tightens the estimate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field;
use crate::graph::{Graph, Pair};
use crate::rng::{derive_seed, stream, Rng};

/// Exact-arithmetic coordinate assignment, one d-vector per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    d: usize,
    coords: Vec<Vec<u64>>,
}

impl Realization {
    /// Builds a realization from explicit coordinates; entries are reduced
    /// mod p.
    pub fn from_coords(d: usize, coords: Vec<Vec<u64>>) -> Result<Self> {
        if d == 0 {
            return Err(Error::Input("dimension must be at least 1".into()));
        }
        if coords.iter().any(|c| c.len() != d) {
            return Err(Error::Input(format!(
                "every vertex needs exactly {d} coordinates"
            )));
        }
        let coords = coords
            .into_iter()
            .map(|c| c.into_iter().map(|x| x % field::P).collect())
            .collect();
        Ok(Realization { d, coords })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn vertex_count(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self, v: usize) -> &[u64] {
        &self.coords[v]
    }
}

/// Uniform random realization; identical for identical (n, d, seed).
pub fn random_realization(g: &Graph, d: usize, seed: u64) -> Result<Realization> {
    realization_for_vertices(g.n(), d, seed)
}

pub fn realization_for_vertices(n: usize, d: usize, seed: u64) -> Result<Realization> {
    if d == 0 {
        return Err(Error::Input("dimension must be at least 1".into()));
    }
    let mut rng = Rng::from_seed(seed);
    let coords = (0..n)
        .map(|_| (0..d).map(|_| rng.field_element()).collect())
        .collect();
    Ok(Realization { d, coords })
}

/// The Jacobian of the squared-edge-length map, one row per edge, d columns
/// per vertex; the constant factor 2 is dropped as rank-irrelevant.
#[derive(Clone, Debug)]
pub struct RigidityMatrix {
    pub rows: Vec<Vec<u64>>,
    pub edges: Vec<Pair>,
    pub n: usize,
    pub d: usize,
}

pub fn rigidity_matrix(g: &Graph, rho: &Realization) -> Result<RigidityMatrix> {
    if rho.vertex_count() < g.n() {
        return Err(Error::Input(format!(
            "realization covers {} vertices, graph has {}",
            rho.vertex_count(),
            g.n()
        )));
    }
    Ok(RigidityMatrix {
        rows: rows_for_pairs(g.edges(), rho),
        edges: g.edges().to_vec(),
        n: g.n(),
        d: rho.d,
    })
}

/// Rows of the rigidity matrix for an arbitrary pair list over the vertex
/// set of `rho`; the pair {u,v} gets coords[u]-coords[v] in u's block and the
/// negation in v's block.
pub fn rows_for_pairs(pairs: &[Pair], rho: &Realization) -> Vec<Vec<u64>> {
    let d = rho.d;
    let n = rho.vertex_count();
    pairs
        .iter()
        .map(|&(u, v)| {
            let mut row = vec![0u64; d * n];
            for t in 0..d {
                let diff = field::sub(rho.coords[u][t], rho.coords[v][t]);
                row[d * u + t] = diff;
                row[d * v + t] = field::neg(diff);
            }
            row
        })
        .collect()
}

/// Randomized-rank options: number of independent realizations and the seed
/// the per-trial seeds derive from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankOpts {
    pub trials: u32,
    pub seed: u64,
}

impl Default for RankOpts {
    fn default() -> Self {
        RankOpts { trials: 3, seed: 0 }
    }
}

fn check_pairs(pairs: &[Pair], n: usize) -> Result<()> {
    for &(u, v) in pairs {
        if u == v {
            return Err(Error::Input(format!("pair ({u},{u}) is a self-loop")));
        }
        if u >= n || v >= n {
            return Err(Error::Input(format!(
                "pair ({u},{v}) out of range for n = {n}"
            )));
        }
    }
    Ok(())
}

/// Rank of the pair set in the generic rigidity matroid of n vertices in
/// dimension d: the maximum over trials of the exact mod-p matrix rank.
pub fn generic_rank(pairs: &[Pair], n: usize, d: usize, opts: &RankOpts) -> Result<usize> {
    if d == 0 {
        return Err(Error::Input("dimension must be at least 1".into()));
    }
    if opts.trials == 0 {
        return Err(Error::Input("rank estimation needs trials >= 1".into()));
    }
    check_pairs(pairs, n)?;
    if pairs.is_empty() {
        return Ok(0);
    }
    let mut best = 0;
    for t in 0..opts.trials {
        let seed = derive_seed(opts.seed, stream::REALIZATION, u64::from(t));
        let rho = realization_for_vertices(n, d, seed)?;
        let mut rows = rows_for_pairs(pairs, &rho);
        best = best.max(field::rank(&mut rows));
        if best == pairs.len() {
            break; // already at the trivial cap
        }
    }
    Ok(best)
}

/// Maximal possible rank of any edge set on n vertices in dimension d.
pub fn full_rank_target(n: usize, d: usize) -> usize {
    if n > d {
        d * n - d * (d + 1) / 2
    } else {
        n * n.saturating_sub(1) / 2
    }
}

/// min(|E|, full rank target): an a-priori cap on the rank of m edges.
pub fn maxwell_cap(m: usize, n: usize, d: usize) -> usize {
    m.min(full_rank_target(n, d))
}

pub fn is_independent(pairs: &[Pair], n: usize, d: usize, opts: &RankOpts) -> Result<bool> {
    check_pairs(pairs, n)?;
    // a set larger than the cap is dependent without any elimination
    if pairs.len() > full_rank_target(n, d) {
        return Ok(false);
    }
    Ok(generic_rank(pairs, n, d, opts)? == pairs.len())
}

fn is_rigid_pairs(pairs: &[Pair], n: usize, d: usize, opts: &RankOpts) -> Result<bool> {
    if n <= d + 1 {
        // small-graph convention: rigid iff complete
        return Ok(pairs.len() == n * n.saturating_sub(1) / 2);
    }
    Ok(generic_rank(pairs, n, d, opts)? == full_rank_target(n, d))
}

/// Rigid iff the edge set achieves the maximal rank (n >= d+1), or the graph
/// is complete (n <= d+1).
pub fn is_rigid(g: &Graph, d: usize, opts: &RankOpts) -> Result<bool> {
    is_rigid_pairs(g.edges(), g.n(), d, opts)
}

/// Outcome of the redundant-rigidity scan, with a witness on failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Redundancy {
    RedundantlyRigid,
    NotRigid {
        rank: usize,
        target: usize,
    },
    /// Removing `edge` leaves a non-rigid graph.
    NonRedundantEdge {
        edge: Pair,
        rank_without: usize,
        target: usize,
    },
}

/// Scans edges in canonical order; stops at the first edge whose removal
/// destroys rigidity.
pub fn redundancy(g: &Graph, d: usize, opts: &RankOpts) -> Result<Redundancy> {
    if g.edge_count() == 0 {
        return Err(Error::Input(
            "redundant rigidity needs at least one edge".into(),
        ));
    }
    let n = g.n();
    let target = full_rank_target(n, d);
    if !is_rigid(g, d, opts)? {
        let rank = generic_rank(g.edges(), n, d, opts)?;
        return Ok(Redundancy::NotRigid { rank, target });
    }
    for (i, &edge) in g.edges().iter().enumerate() {
        let mut rest: Vec<Pair> = g.edges().to_vec();
        rest.remove(i);
        if !is_rigid_pairs(&rest, n, d, opts)? {
            let rank_without = generic_rank(&rest, n, d, opts)?;
            return Ok(Redundancy::NonRedundantEdge {
                edge,
                rank_without,
                target,
            });
        }
    }
    Ok(Redundancy::RedundantlyRigid)
}

pub fn is_redundantly_rigid(g: &Graph, d: usize, opts: &RankOpts) -> Result<bool> {
    Ok(matches!(redundancy(g, d, opts)?, Redundancy::RedundantlyRigid))
}

/// Machine-readable rank summary for one graph and dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub graph: Option<String>,
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub rank: usize,
    pub cap: usize,
    pub independent: bool,
    pub rigid: bool,
    pub trials: u32,
    pub seed: u64,
}

pub fn rank_report(
    g: &Graph,
    d: usize,
    opts: &RankOpts,
    label: Option<String>,
) -> Result<RankReport> {
    let rank = generic_rank(g.edges(), g.n(), d, opts)?;
    Ok(RankReport {
        graph: label,
        n: g.n(),
        m: g.edge_count(),
        d,
        rank,
        cap: maxwell_cap(g.edge_count(), g.n(), d),
        independent: rank == g.edge_count(),
        rigid: is_rigid(g, d, opts)?,
        trials: opts.trials,
        seed: opts.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> RankOpts {
        RankOpts::default()
    }

    #[test]
    fn realization_is_deterministic() {
        let k3 = Graph::complete(3);
        let a = random_realization(&k3, 2, 42).unwrap();
        let b = random_realization(&k3, 2, 42).unwrap();
        assert_eq!(a, b);
        let c = random_realization(&k3, 2, 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn realization_shape() {
        let k4 = Graph::complete(4);
        let rho = random_realization(&k4, 3, 7).unwrap();
        assert_eq!(rho.vertex_count(), 4);
        assert_eq!(rho.d(), 3);
        let total: usize = (0..4).map(|v| rho.coords(v).len()).sum();
        assert_eq!(total, 12);
        let one_d = random_realization(&k4, 1, 7).unwrap();
        assert_eq!(one_d.coords(0).len(), 1);
    }

    #[test]
    fn single_edge_row_is_coordinate_difference() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let rho = Realization::from_coords(2, vec![vec![0, 0], vec![1, 0]]).unwrap();
        let m = rigidity_matrix(&g, &rho).unwrap();
        assert_eq!(m.rows.len(), 1);
        assert_eq!(m.rows[0], vec![field::P - 1, 0, 1, 0]);
    }

    #[test]
    fn empty_edge_set_gives_zero_rows() {
        let g = Graph::new(3, []).unwrap();
        let rho = random_realization(&g, 2, 1).unwrap();
        let m = rigidity_matrix(&g, &rho).unwrap();
        assert!(m.rows.is_empty());
        assert_eq!(generic_rank(g.edges(), 3, 2, &opts()).unwrap(), 0);
    }

    #[test]
    fn rigidity_row_blocks_cancel() {
        let g = Graph::cycle(5).unwrap();
        let rho = random_realization(&g, 3, 9).unwrap();
        let m = rigidity_matrix(&g, &rho).unwrap();
        for (row, &(u, v)) in m.rows.iter().zip(m.edges.iter()) {
            for t in 0..3 {
                assert_eq!(field::add(row[3 * u + t], row[3 * v + t]), 0);
            }
            let nonzero = row.iter().filter(|&&x| x != 0).count();
            assert!(nonzero <= 6);
        }
    }

    #[test]
    fn known_plane_ranks() {
        let k3 = Graph::complete(3);
        assert_eq!(generic_rank(k3.edges(), 3, 2, &opts()).unwrap(), 3);
        let k4 = Graph::complete(4);
        assert_eq!(generic_rank(k4.edges(), 4, 2, &opts()).unwrap(), 5);
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(generic_rank(c4.edges(), 4, 2, &opts()).unwrap(), 4);
        let one = [(0usize, 1usize)];
        assert_eq!(generic_rank(&one, 5, 3, &opts()).unwrap(), 1);
    }

    #[test]
    fn independence_examples() {
        let k4 = Graph::complete(4);
        assert!(!is_independent(k4.edges(), 4, 2, &opts()).unwrap());
        let k3 = Graph::complete(3);
        assert!(is_independent(k3.edges(), 3, 2, &opts()).unwrap());
        assert!(is_independent(&[], 4, 2, &opts()).unwrap());
    }

    #[test]
    fn rigidity_examples() {
        assert!(is_rigid(&Graph::complete(4), 2, &opts()).unwrap());
        assert!(!is_rigid(&Graph::cycle(4).unwrap(), 2, &opts()).unwrap());
        // small-graph convention: K2 is rigid in the plane
        assert!(is_rigid(&Graph::complete(2), 2, &opts()).unwrap());
        let two_isolated = Graph::new(2, []).unwrap();
        assert!(!is_rigid(&two_isolated, 2, &opts()).unwrap());
    }

    #[test]
    fn redundancy_examples() {
        assert_eq!(
            redundancy(&Graph::complete(5), 2, &opts()).unwrap(),
            Redundancy::RedundantlyRigid
        );
        // K4 - e is still rigid in the plane, so K4 is redundantly rigid
        assert_eq!(
            redundancy(&Graph::complete(4), 2, &opts()).unwrap(),
            Redundancy::RedundantlyRigid
        );
        match redundancy(&Graph::cycle(4).unwrap(), 2, &opts()).unwrap() {
            Redundancy::NotRigid { rank: 4, target: 5 } => {}
            other => panic!("expected not-rigid, got {other:?}"),
        }
        // K3 is rigid but every edge is critical
        match redundancy(&Graph::complete(3), 2, &opts()).unwrap() {
            Redundancy::NonRedundantEdge { edge: (0, 1), .. } => {}
            other => panic!("expected non-redundant edge, got {other:?}"),
        }
    }

    #[test]
    fn rank_report_invariants_and_serde() {
        let g = Graph::complete(4);
        let report = rank_report(&g, 2, &opts(), Some("k4".into())).unwrap();
        assert_eq!(report.rank, 5);
        assert_eq!(report.cap, 5);
        assert!(report.rank <= report.cap);
        assert!(!report.independent);
        assert!(report.rigid);
        let text = serde_json::to_string(&report).unwrap();
        let back: RankReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn d1_rank_matches_graphic_matroid() {
        // rank in dimension 1 is n minus the number of components
        let g = Graph::new(6, [(0, 1), (1, 2), (3, 4)]).unwrap();
        assert_eq!(generic_rank(g.edges(), 6, 1, &opts()).unwrap(), 3);
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(generic_rank(c5.edges(), 5, 1, &opts()).unwrap(), 4);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(generic_rank(&[(0, 0)], 3, 2, &opts()).is_err());
        assert!(generic_rank(&[(0, 5)], 3, 2, &opts()).is_err());
        assert!(generic_rank(&[(0, 1)], 3, 0, &opts()).is_err());
        let bad = RankOpts { trials: 0, seed: 0 };
        assert!(generic_rank(&[(0, 1)], 3, 2, &bad).is_err());
    }
}
