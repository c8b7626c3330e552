//! Global-rigidity verdicts.
//!
//! Necessity comes from Hendrickson's conditions ((d+1)-connectivity and
//! redundant rigidity); sufficiency from a randomized stress-matrix
//! certificate: sample a realization, draw a random equilibrium stress from
//! the left kernel of the rigidity matrix, and certify when the stress
//! matrix reaches rank n - d - 1. The certificate has one-sided error: a
//! failed run is inconclusive, never a negative.

use serde::{Deserialize, Serialize};

use crate::automorphism::{self, SearchLimits};
use crate::connectivity::{is_connected, vertex_connectivity_with_cut};
use crate::error::{Error, Result};
use crate::field;
use crate::graph::{Graph, Pair};
use crate::rank::{
    full_rank_target, generic_rank, is_rigid, realization_for_vertices, redundancy,
    rows_for_pairs, RankOpts, Redundancy,
};
use crate::rng::{derive_seed, stream, Rng};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    CertifiedGloballyRigid,
    CertifiedNotGloballyRigid,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// n <= d+1 and complete: globally rigid by convention.
    CompleteSmallGraph,
    /// n <= d+1 with a missing pair: not globally rigid by convention.
    MissingPair { pair: Pair },
    /// d = 1 positive branch: 2-connected.
    TwoConnected { connectivity: usize },
    LowConnectivity {
        connectivity: usize,
        required: usize,
        cut: Vec<usize>,
    },
    NotRigid {
        rank: usize,
        target: usize,
    },
    NonRedundantEdge {
        edge: Pair,
        rank_without: usize,
        target: usize,
    },
    StressCertificate {
        seed: u64,
        stress_rank: usize,
        target_rank: usize,
    },
    CertificateFailed { attempts: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalRigidityVerdict {
    pub status: VerdictStatus,
    pub evidence: Evidence,
}

#[derive(Clone, Copy, Debug)]
pub struct VerdictConfig {
    pub rank: RankOpts,
    pub retries: u32,
    pub limits: SearchLimits,
}

impl Default for VerdictConfig {
    fn default() -> Self {
        VerdictConfig {
            rank: RankOpts::default(),
            retries: 5,
            limits: SearchLimits::default(),
        }
    }
}

/// Symmetric n×n equilibrium-stress matrix over GF(p): off-diagonal (u,v) is
/// -ω_uv for edges, zero elsewhere; diagonals make every row sum to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StressMatrix {
    n: usize,
    entries: Vec<Vec<u64>>,
}

impl StressMatrix {
    pub fn from_stress(edges: &[Pair], n: usize, omega: &[u64]) -> Result<Self> {
        if edges.len() != omega.len() {
            return Err(Error::Input(
                "stress vector length must match edge count".into(),
            ));
        }
        let mut entries = vec![vec![0u64; n]; n];
        for (&(u, v), &w) in edges.iter().zip(omega) {
            let w = w % field::P;
            entries[u][v] = field::neg(w);
            entries[v][u] = field::neg(w);
            entries[u][u] = field::add(entries[u][u], w);
            entries[v][v] = field::add(entries[v][v], w);
        }
        Ok(StressMatrix { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, u: usize, v: usize) -> u64 {
        self.entries[u][v]
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.entries.clone();
        field::rank(&mut rows)
    }

    /// Row sums are zero and the matrix is symmetric; support is confined to
    /// the given edge set.
    pub fn check_invariants(&self, g: &Graph) -> Result<()> {
        for u in 0..self.n {
            let sum = self.entries[u]
                .iter()
                .fold(0u64, |acc, &x| field::add(acc, x));
            if sum != 0 {
                return Err(Error::PropertyViolation(format!(
                    "stress matrix row {u} does not sum to zero"
                )));
            }
            for v in 0..self.n {
                if self.entries[u][v] != self.entries[v][u] {
                    return Err(Error::PropertyViolation(
                        "stress matrix is not symmetric".into(),
                    ));
                }
                if u != v && self.entries[u][v] != 0 && !g.has_edge(u, v) {
                    return Err(Error::PropertyViolation(format!(
                        "stress support outside the edge set at ({u},{v})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// One certificate attempt at a fixed seed. Certifies global rigidity when
/// the random stress matrix has rank exactly n - d - 1; anything else is
/// inconclusive.
pub fn stress_certificate(
    g: &Graph,
    d: usize,
    seed: u64,
    rank_opts: &RankOpts,
) -> Result<GlobalRigidityVerdict> {
    let n = g.n();
    if n < d + 2 {
        return Err(Error::Input(format!(
            "stress certificate needs n >= d+2, got n = {n}, d = {d}"
        )));
    }
    let target = full_rank_target(n, d);
    if !is_rigid(g, d, rank_opts)? {
        let rank = generic_rank(g.edges(), n, d, rank_opts)?;
        return Ok(GlobalRigidityVerdict {
            status: VerdictStatus::Inconclusive,
            evidence: Evidence::NotRigid { rank, target },
        });
    }
    let m = g.edge_count();
    let rho = realization_for_vertices(n, d, derive_seed(seed, stream::STRESS, 0))?;
    let rows = rows_for_pairs(g.edges(), &rho);
    let kernel = field::null_space(field::transpose(&rows, d * n), m);
    if kernel.is_empty() {
        if m != target {
            return Err(Error::PropertyViolation(format!(
                "empty stress space but {m} edges exceed rank target {target}"
            )));
        }
        // minimally rigid: only the zero stress exists
        return Ok(GlobalRigidityVerdict {
            status: VerdictStatus::Inconclusive,
            evidence: Evidence::StressCertificate {
                seed,
                stress_rank: 0,
                target_rank: n - d - 1,
            },
        });
    }
    let mut rng = Rng::from_seed(derive_seed(seed, stream::STRESS, 1));
    let mut omega = vec![0u64; m];
    for basis_vec in &kernel {
        let c = rng.field_element();
        for (acc, &x) in omega.iter_mut().zip(basis_vec) {
            *acc = field::add(*acc, field::mul(c, x));
        }
    }
    let stress = StressMatrix::from_stress(g.edges(), n, &omega)?;
    debug_assert!(stress.check_invariants(g).is_ok());
    let stress_rank = stress.rank();
    let target_rank = n - d - 1;
    if stress_rank > target_rank {
        return Err(Error::PropertyViolation(format!(
            "stress rank {stress_rank} exceeds n - d - 1 = {target_rank}"
        )));
    }
    let status = if stress_rank == target_rank {
        VerdictStatus::CertifiedGloballyRigid
    } else {
        VerdictStatus::Inconclusive
    };
    Ok(GlobalRigidityVerdict {
        status,
        evidence: Evidence::StressCertificate {
            seed,
            stress_rank,
            target_rank,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HendricksonOutcome {
    pub passes: bool,
    pub connectivity: usize,
    /// The violated condition when `passes` is false.
    pub witness: Option<Evidence>,
}

/// Hendrickson's necessary conditions: vertex connectivity >= d+1 and
/// redundant rigidity. Connectivity runs first since it is cheap.
pub fn hendrickson_check(g: &Graph, d: usize, cfg: &VerdictConfig) -> Result<HendricksonOutcome> {
    let (kappa, cut) = vertex_connectivity_with_cut(g)?;
    if kappa < d + 1 {
        return Ok(HendricksonOutcome {
            passes: false,
            connectivity: kappa,
            witness: Some(Evidence::LowConnectivity {
                connectivity: kappa,
                required: d + 1,
                cut: cut.unwrap_or_default(),
            }),
        });
    }
    let witness = match redundancy(g, d, &cfg.rank)? {
        Redundancy::RedundantlyRigid => None,
        Redundancy::NotRigid { rank, target } => Some(Evidence::NotRigid { rank, target }),
        Redundancy::NonRedundantEdge {
            edge,
            rank_without,
            target,
        } => Some(Evidence::NonRedundantEdge {
            edge,
            rank_without,
            target,
        }),
    };
    Ok(HendricksonOutcome {
        passes: witness.is_none(),
        connectivity: kappa,
        witness,
    })
}

/// Combined verdict: convention branch for n <= d+1, the 2-connectivity
/// characterization for d = 1, then Hendrickson necessity followed by up to
/// `retries` certificate attempts.
pub fn global_rigidity_verdict(
    g: &Graph,
    d: usize,
    cfg: &VerdictConfig,
) -> Result<GlobalRigidityVerdict> {
    if d == 0 {
        return Err(Error::Input("dimension must be at least 1".into()));
    }
    if g.n() == 0 {
        return Err(Error::Input("verdict needs at least one vertex".into()));
    }
    let n = g.n();
    if n <= d + 1 {
        return Ok(if g.is_complete() {
            GlobalRigidityVerdict {
                status: VerdictStatus::CertifiedGloballyRigid,
                evidence: Evidence::CompleteSmallGraph,
            }
        } else {
            let pair = missing_pair(g).expect("incomplete graph has a missing pair");
            GlobalRigidityVerdict {
                status: VerdictStatus::CertifiedNotGloballyRigid,
                evidence: Evidence::MissingPair { pair },
            }
        });
    }
    if d == 1 {
        let (kappa, cut) = vertex_connectivity_with_cut(g)?;
        return Ok(if kappa >= 2 {
            GlobalRigidityVerdict {
                status: VerdictStatus::CertifiedGloballyRigid,
                evidence: Evidence::TwoConnected { connectivity: kappa },
            }
        } else {
            GlobalRigidityVerdict {
                status: VerdictStatus::CertifiedNotGloballyRigid,
                evidence: Evidence::LowConnectivity {
                    connectivity: kappa,
                    required: 2,
                    cut: cut.unwrap_or_default(),
                },
            }
        });
    }
    let hendrickson = hendrickson_check(g, d, cfg)?;
    if let Some(witness) = hendrickson.witness {
        return Ok(GlobalRigidityVerdict {
            status: VerdictStatus::CertifiedNotGloballyRigid,
            evidence: witness,
        });
    }
    for attempt in 0..cfg.retries {
        let seed = derive_seed(cfg.rank.seed, stream::CERTIFICATE, u64::from(attempt));
        let verdict = stress_certificate(g, d, seed, &cfg.rank)?;
        if verdict.status == VerdictStatus::CertifiedGloballyRigid {
            return Ok(verdict);
        }
    }
    Ok(GlobalRigidityVerdict {
        status: VerdictStatus::Inconclusive,
        evidence: Evidence::CertificateFailed {
            attempts: cfg.retries,
        },
    })
}

fn missing_pair(g: &Graph) -> Option<Pair> {
    (0..g.n()).find_map(|u| {
        ((u + 1)..g.n()).find_map(|v| (!g.has_edge(u, v)).then_some((u, v)))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WatkinsCheck {
    pub degree: usize,
    pub connectivity: usize,
    pub lower_bound: usize,
    pub satisfied: bool,
}

/// Hypothesis flags and verdict for "connected vertex-transitive of degree
/// at least d(d+1) implies globally rigid", plus the connectivity lower
/// bound of two thirds of the degree for connected vertex-transitive graphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdProbe {
    pub d: usize,
    pub connected: bool,
    pub vertex_transitive: bool,
    pub regular_degree: Option<usize>,
    pub degree_threshold: usize,
    pub hypotheses_hold: bool,
    pub watkins: Option<WatkinsCheck>,
    pub verdict: GlobalRigidityVerdict,
    /// Hypotheses hold but the one-sided certificate did not fire.
    pub needs_attention: bool,
}

pub fn degree_threshold_probe(g: &Graph, d: usize, cfg: &VerdictConfig) -> Result<ThresholdProbe> {
    if d == 0 {
        return Err(Error::Input("dimension must be at least 1".into()));
    }
    if g.n() == 0 {
        return Err(Error::Input("probe needs at least one vertex".into()));
    }
    let connected = is_connected(g);
    let vertex_transitive = automorphism::is_vertex_transitive(g, &cfg.limits)?;
    let regular_degree = g.regular_degree();
    let degree_threshold = d * (d + 1);
    let hypotheses_hold = connected
        && vertex_transitive
        && regular_degree.is_some_and(|w| w >= degree_threshold);
    let watkins = if connected && vertex_transitive && g.n() >= 2 {
        let degree = regular_degree.expect("vertex-transitive graphs are regular");
        let connectivity = vertex_connectivity_with_cut(g)?.0;
        let lower_bound = (2 * degree).div_ceil(3);
        Some(WatkinsCheck {
            degree,
            connectivity,
            lower_bound,
            satisfied: connectivity >= lower_bound,
        })
    } else {
        None
    };
    let verdict = global_rigidity_verdict(g, d, cfg)?;
    let needs_attention =
        hypotheses_hold && verdict.status != VerdictStatus::CertifiedGloballyRigid;
    Ok(ThresholdProbe {
        d,
        connected,
        vertex_transitive,
        regular_degree,
        degree_threshold,
        hypotheses_hold,
        watkins,
        verdict,
        needs_attention,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> VerdictConfig {
        VerdictConfig::default()
    }

    fn circulant(n: usize, conns: &[usize]) -> Graph {
        let mut pairs = std::collections::BTreeSet::new();
        for i in 0..n {
            for &c in conns {
                pairs.insert(crate::graph::norm_pair(i, (i + c) % n));
            }
        }
        Graph::new(n, pairs).unwrap()
    }

    #[test]
    fn k4_stress_certificate_in_plane() {
        let verdict = stress_certificate(&Graph::complete(4), 2, 0, &RankOpts::default()).unwrap();
        assert_eq!(verdict.status, VerdictStatus::CertifiedGloballyRigid);
        match verdict.evidence {
            Evidence::StressCertificate {
                stress_rank: 1,
                target_rank: 1,
                ..
            } => {}
            other => panic!("expected rank-1 stress, got {other:?}"),
        }
    }

    #[test]
    fn non_rigid_graph_is_inconclusive() {
        let verdict =
            stress_certificate(&Graph::cycle(4).unwrap(), 2, 0, &RankOpts::default()).unwrap();
        assert_eq!(verdict.status, VerdictStatus::Inconclusive);
    }

    #[test]
    fn minimally_rigid_graph_never_certifies() {
        // K4 minus an edge is minimally rigid in the plane
        let g = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let verdict = stress_certificate(&g, 2, 0, &RankOpts::default()).unwrap();
        assert_eq!(verdict.status, VerdictStatus::Inconclusive);
    }

    #[test]
    fn circulant_certifies_in_plane() {
        let g = circulant(13, &[1, 2, 3]);
        let verdict = stress_certificate(&g, 2, 0, &RankOpts::default()).unwrap();
        assert_eq!(verdict.status, VerdictStatus::CertifiedGloballyRigid);
        match verdict.evidence {
            Evidence::StressCertificate {
                stress_rank,
                target_rank,
                ..
            } => {
                assert_eq!(target_rank, 10);
                assert_eq!(stress_rank, 10);
            }
            other => panic!("unexpected evidence {other:?}"),
        }
    }

    #[test]
    fn hendrickson_examples() {
        let out = hendrickson_check(&Graph::complete(5), 2, &cfg()).unwrap();
        assert!(out.passes);
        assert_eq!(out.connectivity, 4);

        let out = hendrickson_check(&Graph::path(3), 2, &cfg()).unwrap();
        assert!(!out.passes);
        match out.witness {
            Some(Evidence::LowConnectivity {
                connectivity: 1,
                required: 3,
                ..
            }) => {}
            other => panic!("expected connectivity witness, got {other:?}"),
        }
    }

    #[test]
    fn verdict_examples() {
        let v = global_rigidity_verdict(&Graph::complete(6), 3, &cfg()).unwrap();
        assert_eq!(v.status, VerdictStatus::CertifiedGloballyRigid);
        match v.evidence {
            Evidence::StressCertificate {
                stress_rank: 2,
                target_rank: 2,
                ..
            } => {}
            other => panic!("expected stress rank 2, got {other:?}"),
        }

        // two triangles sharing one vertex: cut vertex kills it
        let bowtie = Graph::new(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
        let v = global_rigidity_verdict(&bowtie, 2, &cfg()).unwrap();
        assert_eq!(v.status, VerdictStatus::CertifiedNotGloballyRigid);
        match v.evidence {
            Evidence::LowConnectivity {
                connectivity: 1,
                cut,
                ..
            } => assert_eq!(cut, vec![2]),
            other => panic!("expected cut witness, got {other:?}"),
        }

        let v = global_rigidity_verdict(&Graph::complete(5), 2, &cfg()).unwrap();
        assert_eq!(v.status, VerdictStatus::CertifiedGloballyRigid);
    }

    #[test]
    fn small_graph_convention() {
        let v = global_rigidity_verdict(&Graph::complete(3), 2, &cfg()).unwrap();
        assert_eq!(v.status, VerdictStatus::CertifiedGloballyRigid);
        assert_eq!(v.evidence, Evidence::CompleteSmallGraph);

        let v = global_rigidity_verdict(&Graph::path(3), 2, &cfg()).unwrap();
        assert_eq!(v.status, VerdictStatus::CertifiedNotGloballyRigid);
        assert_eq!(v.evidence, Evidence::MissingPair { pair: (0, 2) });
    }

    #[test]
    fn dimension_one_branch() {
        let v = global_rigidity_verdict(&Graph::cycle(4).unwrap(), 1, &cfg()).unwrap();
        assert_eq!(v.status, VerdictStatus::CertifiedGloballyRigid);

        let v = global_rigidity_verdict(&Graph::path(3), 1, &cfg()).unwrap();
        assert_eq!(v.status, VerdictStatus::CertifiedNotGloballyRigid);
        match v.evidence {
            Evidence::LowConnectivity { cut, .. } => assert_eq!(cut, vec![1]),
            other => panic!("expected cut witness, got {other:?}"),
        }

        let v = global_rigidity_verdict(&Graph::complete(2), 1, &cfg()).unwrap();
        assert_eq!(v.status, VerdictStatus::CertifiedGloballyRigid);
    }

    #[test]
    fn probe_examples() {
        let g = circulant(13, &[1, 2, 3]);
        let probe = degree_threshold_probe(&g, 2, &cfg()).unwrap();
        assert!(probe.hypotheses_hold);
        assert_eq!(probe.regular_degree, Some(6));
        assert_eq!(
            probe.verdict.status,
            VerdictStatus::CertifiedGloballyRigid
        );
        assert!(!probe.needs_attention);
        let watkins = probe.watkins.unwrap();
        assert_eq!(watkins.lower_bound, 4);
        assert!(watkins.satisfied);

        let probe = degree_threshold_probe(&Graph::complete(7), 2, &cfg()).unwrap();
        assert!(probe.hypotheses_hold);
        assert_eq!(
            probe.verdict.status,
            VerdictStatus::CertifiedGloballyRigid
        );

        // path fails every hypothesis
        let probe = degree_threshold_probe(&Graph::path(4), 2, &cfg()).unwrap();
        assert!(!probe.hypotheses_hold);
        assert!(probe.watkins.is_none());
    }

    #[test]
    fn certificate_never_contradicts_necessity() {
        // for a corpus of small graphs: certified implies Hendrickson passes
        for g in [
            Graph::complete(5),
            Graph::complete(6),
            Graph::cycle(6).unwrap(),
            Graph::complete_bipartite(3, 3).unwrap(),
            Graph::complete_bipartite(4, 4).unwrap(),
        ] {
            let v = global_rigidity_verdict(&g, 2, &cfg()).unwrap();
            if v.status == VerdictStatus::CertifiedGloballyRigid && g.n() >= 4 {
                assert!(hendrickson_check(&g, 2, &cfg()).unwrap().passes);
            }
        }
    }

    #[test]
    fn stress_matrix_invariants() {
        let g = Graph::complete(4);
        let omega = vec![1u64, 2, 3, 4, 5, 6];
        let s = StressMatrix::from_stress(g.edges(), 4, &omega).unwrap();
        s.check_invariants(&g).unwrap();
        assert_eq!(s.entry(0, 1), crate::field::neg(1));
        assert_eq!(s.entry(1, 0), crate::field::neg(1));
        // support confined to edges: C4 misses the diagonals
        let c4 = Graph::cycle(4).unwrap();
        assert!(s.check_invariants(&c4).is_err());
        assert!(StressMatrix::from_stress(g.edges(), 4, &[1, 2]).is_err());
    }

    #[test]
    fn verdict_serde_round_trip() {
        let v = GlobalRigidityVerdict {
            status: VerdictStatus::CertifiedNotGloballyRigid,
            evidence: Evidence::NonRedundantEdge {
                edge: (0, 25),
                rank_without: 56,
                target: 57,
            },
        };
        let text = serde_json::to_string(&v).unwrap();
        let back: GlobalRigidityVerdict = serde_json::from_str(&text).unwrap();
        assert_eq!(back, v);
    }
}
