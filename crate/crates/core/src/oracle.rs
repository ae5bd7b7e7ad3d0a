//! The (delta, tau)-subgraph oracle with the deterministic exact backend:
//! for a query set Z, partitions the vertices by how many of their
//! out-neighbors fall in Z and returns the sparse side's edges into Z.

use crate::graph::DiGraph;
use crate::{stats, Vertex};

/// Query: vertex set Z with parameters delta in (0, 3/4] and tau >= 2. The
/// backend answers any delta; the band is the regime the randomized oracle
/// of the analysis would support.
#[derive(Debug, Clone)]
pub struct OracleQuery {
    pub z: Vec<Vertex>,
    pub delta: f64,
    pub tau: f64,
}

/// Partition (Y^h, Y^l) of V(G) plus the edge list E(Y^l, Z).
#[derive(Debug, Clone)]
pub struct OracleResponse {
    pub y_high: Vec<Vertex>,
    pub y_low: Vec<Vertex>,
    pub edges: Vec<(Vertex, Vertex)>,
}

/// Deterministic zero-error oracle over an immutable graph.
#[derive(Debug, Clone, Copy)]
pub struct SubgraphOracle;

impl SubgraphOracle {
    /// Y^l = {v : |N+(v) ∩ Z| < n^(1-delta)}, Y^h the complement,
    /// E' = E(Y^l, Z) exactly.
    pub fn answer_query(&self, g: &DiGraph, q: &OracleQuery) -> OracleResponse {
        let threshold = (g.n() as f64).powf(1.0 - q.delta);
        self.answer_with_threshold(g, &q.z, threshold)
    }

    /// Threshold form used by the dense solver, where the exponent identity
    /// n^(1-delta) = 30000 * lambda * gamma * log n fixes the cutoff
    /// directly.
    pub fn answer_with_threshold(
        &self,
        g: &DiGraph,
        z: &[Vertex],
        threshold: f64,
    ) -> OracleResponse {
        stats::count_oracle_query();
        let mut in_z = vec![false; g.n()];
        for &v in z {
            in_z[v] = true;
        }
        let mut y_high = Vec::new();
        let mut y_low = Vec::new();
        let mut edges = Vec::new();
        for v in 0..g.n() {
            let hits = g.out_neighbors(v).filter(|&u| in_z[u]).count();
            if (hits as f64) < threshold {
                y_low.push(v);
                for u in g.out_neighbors(v) {
                    if in_z[u] {
                        edges.push((v, u));
                    }
                }
            } else {
                y_high.push(v);
            }
        }
        OracleResponse { y_high, y_low, edges }
    }

    /// Elementwise [`Self::answer_query`] over at most n queries.
    pub fn answer_batch(
        &self,
        g: &DiGraph,
        queries: &[OracleQuery],
        delta: f64,
        tau: f64,
    ) -> Vec<OracleResponse> {
        assert!(queries.len() <= g.n());
        queries
            .iter()
            .map(|q| {
                let q = OracleQuery { z: q.z.clone(), delta, tau };
                self.answer_query(g, &q)
            })
            .collect()
    }
}
