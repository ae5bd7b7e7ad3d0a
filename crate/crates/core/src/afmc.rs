//! Approximate Furthest Min-Cut, edge and vertex versions.
//!
//! The edge version computes a max flow, then a min cut of the residual
//! network augmented with low-capacity "fake" edges from the source to every
//! vertex; the fake edges force the returned side X to swallow everything
//! that is cheaply reachable, so any other cut's source side is almost
//! contained in X. The vertex version reduces to the edge version on the
//! split graph.

use crate::flow::{max_flow, min_edge_cut, CapGraph};
use crate::graph::{
    build_split_with_cap, cut_from_split_cut, pow2_at_least, w_max_params, DiGraph, EdgeCut,
    Tripartition,
};
use crate::{mul_w, Error, Result, Vertex, Weight};

/// Edge-AFMC instance: graph, terminals, slack parameter alpha >= 1.
#[derive(Debug, Clone)]
pub struct AfmcEdgeInstance<'a> {
    pub graph: &'a CapGraph,
    pub x: Vertex,
    pub y: Vertex,
    pub alpha: Weight,
}

/// Vertex-AFMC instance. Requires (x, y) not an edge and
/// 0 < alpha < Wmax(G)/2. When the caller's alpha stems from a scale below
/// one, the caller pre-multiplies all weights and alpha by the inverse
/// scale before building the instance.
#[derive(Debug, Clone)]
pub struct AfmcVertexInstance<'a> {
    pub graph: &'a DiGraph,
    pub x: Vertex,
    pub y: Vertex,
    pub alpha: Weight,
}

/// Solves edge-AFMC: returns an x-y edge-cut (X, Y) with
/// c(X,Y) <= OPT + alpha such that every other x-y edge-cut (X', Y')
/// satisfies |X' \ X| <= (c(X',Y') - OPT) * n / alpha.
///
/// The fake edges have capacity alpha/n; to stay integral all capacities
/// are scaled up by n.
pub fn edge_afmc(inst: &AfmcEdgeInstance) -> Result<EdgeCut> {
    assert!(inst.alpha >= 1);
    assert_ne!(inst.x, inst.y);
    let g = inst.graph;
    let n = g.n() as Weight;
    let f = max_flow(g, inst.x, inst.y);
    let residual = f.residual_graph(g);

    let mut scaled = CapGraph::new(residual.n());
    for e in residual.edge_ids() {
        let (u, v, c) = residual.edge(e);
        scaled.add_edge(u, v, mul_w(c, n)?);
    }
    for v in 0..g.n() {
        if v != inst.x {
            scaled.add_edge(inst.x, v, inst.alpha);
        }
    }
    let (cut, _) = min_edge_cut(&scaled, inst.x, inst.y);
    Ok(cut)
}

/// Solves vertex-AFMC by reducing to edge-AFMC on the split graph (with
/// doubled alpha, so the fake-edge capacity matches alpha/n over the 2n
/// split vertices) and translating the edge-cut back. Output (L,S,R) is a
/// valid x-y vertex-cut with w(S) <= OPT + 2*alpha and, for every x-y
/// vertex-cut (L',S',R'): |(L' ∪ S') \ (L ∪ S)| <= (w(S') - OPT) * n / alpha.
pub fn vertex_afmc(inst: &AfmcVertexInstance) -> Result<Tripartition> {
    let (wp, wm) = w_max_params(inst.graph)?;
    vertex_afmc_with_cap(inst, wp, wm)
}

/// Same as [`vertex_afmc`] but with an explicit regular-edge capacity for
/// the internal split graph. Any power of two at least Wmax(G) is valid;
/// callers working on derived subgraphs pass the base graph's Wmax so the
/// alpha range precondition stays satisfiable.
pub fn vertex_afmc_with_cap(
    inst: &AfmcVertexInstance,
    wp_max: Weight,
    regular_cap: Weight,
) -> Result<Tripartition> {
    let g = inst.graph;
    if g.has_edge(inst.x, inst.y) {
        return Err(Error::AdjacentSourceSink);
    }
    if inst.alpha == 0 || inst.alpha >= regular_cap / 2 {
        return Err(Error::AlphaRange);
    }
    // The translated cut must stay below the regular capacity even after the
    // additive 2*alpha slack, so give the regular edges enough headroom.
    let regular_cap = regular_cap.max(pow2_at_least(mul_w(8, inst.alpha)?)?);
    let sg = build_split_with_cap(g, wp_max, regular_cap)?;
    let alpha_edge = mul_w(inst.alpha, 2)?;
    let ec = edge_afmc(&AfmcEdgeInstance {
        graph: &sg.cap,
        x: crate::graph::out_copy(inst.x),
        y: crate::graph::in_copy(inst.y),
        alpha: alpha_edge,
    })?;
    // The min cut was computed on the scaled+faked graph; its value on the
    // split graph is what the translation needs to stay below regular_cap.
    let (tri, _) = cut_from_split_cut(g, &sg, &ec, inst.y)?;
    debug_assert!(tri.is_valid_vertex_cut(g));
    debug_assert!(tri.contains_in_left(inst.x));
    Ok(tri)
}

/// Least power of two >= x; re-exported convenience for scale plumbing.
pub fn pow2_ceil(x: Weight) -> Result<Weight> {
    pow2_at_least(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::rng_from_seed;
    use rand::Rng as _;

    /// Exhaustive check of the edge-AFMC contract on a small graph.
    fn check_edge_afmc(g: &CapGraph, x: Vertex, y: Vertex, alpha: Weight) {
        let n = g.n();
        let cut = edge_afmc(&AfmcEdgeInstance { graph: g, x, y, alpha }).unwrap();
        let mut in_x = vec![false; n];
        for &v in &cut.x {
            in_x[v] = true;
        }
        assert!(in_x[x] && !in_x[y]);
        let cut_value = |mask: &dyn Fn(Vertex) -> bool| -> Weight {
            g.edge_ids()
                .filter(|&e| {
                    let (u, v, _) = g.edge(e);
                    mask(u) && !mask(v)
                })
                .map(|e| g.edge(e).2)
                .sum()
        };
        // OPT over all x-y edge-cuts.
        let mut opt = Weight::MAX;
        for m in 0u32..(1 << n) {
            if m >> x & 1 == 0 || m >> y & 1 == 1 {
                continue;
            }
            opt = opt.min(cut_value(&|v| m >> v & 1 == 1));
        }
        let got = cut_value(&|v| in_x[v]);
        assert!(got <= opt + alpha, "value bound: {got} > {opt} + {alpha}");
        // Furthest inequality over all x-y edge-cuts.
        for m in 0u32..(1 << n) {
            if m >> x & 1 == 0 || m >> y & 1 == 1 {
                continue;
            }
            let other = cut_value(&|v| m >> v & 1 == 1);
            let missing =
                (0..n).filter(|&v| m >> v & 1 == 1 && !in_x[v]).count() as Weight;
            assert!(
                missing * alpha <= (other - opt) * n as Weight,
                "furthest bound violated"
            );
        }
    }

    #[test]
    fn edge_afmc_disconnected() {
        // OPT = 0 (x disconnected from y), alpha = n: X covers whatever is
        // eta-reachable; checked exhaustively.
        let mut g = CapGraph::new(4);
        g.add_edge(0, 1, 2);
        g.add_edge(2, 3, 5);
        check_edge_afmc(&g, 0, 3, 4);
    }

    #[test]
    fn edge_afmc_single_edge() {
        let mut g = CapGraph::new(2);
        g.add_edge(0, 1, 3);
        check_edge_afmc(&g, 0, 1, 1);
    }

    #[test]
    fn edge_afmc_huge_alpha() {
        let mut g = CapGraph::new(3);
        g.add_edge(0, 1, 2);
        g.add_edge(1, 2, 2);
        let total: Weight = 4;
        check_edge_afmc(&g, 0, 2, 3 * total * 10);
    }

    #[test]
    fn edge_afmc_random_exhaustive() {
        let mut rng = rng_from_seed(1001);
        for _ in 0..40 {
            let n = rng.gen_range(2..=7);
            let mut g = CapGraph::new(n);
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.gen_bool(0.4) {
                        g.add_edge(u, v, rng.gen_range(0..=6));
                    }
                }
            }
            let x = 0;
            let y = n - 1;
            let alpha = rng.gen_range(1..=10);
            check_edge_afmc(&g, x, y, alpha);
        }
    }

    /// Exhaustive check of the vertex-AFMC contract.
    fn check_vertex_afmc(g: &DiGraph, x: Vertex, y: Vertex, alpha: Weight) {
        let n = g.n();
        let tri = vertex_afmc(&AfmcVertexInstance { graph: g, x, y, alpha }).unwrap();
        assert!(tri.is_valid_vertex_cut(g));
        assert!(tri.contains_in_left(x));
        assert!(tri.right.binary_search(&y).is_ok());
        let cuts = crate::reference::enumerate_all_tripartitions(g).unwrap();
        let opt = cuts
            .iter()
            .filter(|(t, _)| t.contains_in_left(x) && t.right.binary_search(&y).is_ok())
            .map(|&(_, v)| v)
            .min()
            .unwrap();
        let got = tri.value(g);
        assert!(got <= opt + 2 * alpha, "value bound: {got} > {opt} + 2*{alpha}");
        let mut in_ls = vec![false; n];
        for &v in tri.left.iter().chain(tri.sep.iter()) {
            in_ls[v] = true;
        }
        for (other, val) in &cuts {
            if !(other.contains_in_left(x) && other.right.binary_search(&y).is_ok()) {
                continue;
            }
            let missing = other
                .left
                .iter()
                .chain(other.sep.iter())
                .filter(|&&v| !in_ls[v])
                .count() as Weight;
            assert!(
                missing * alpha <= (val - opt) * n as Weight,
                "vertex furthest bound violated"
            );
        }
    }

    #[test]
    fn vertex_afmc_diamond() {
        let g = DiGraph::new(4, vec![1, 2, 3, 1], &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        check_vertex_afmc(&g, 0, 3, 1);
    }

    #[test]
    fn vertex_afmc_path() {
        let g = DiGraph::new(3, vec![1, 4, 1], &[(0, 1), (1, 2)]).unwrap();
        let tri =
            vertex_afmc(&AfmcVertexInstance { graph: &g, x: 0, y: 2, alpha: 1 }).unwrap();
        assert!(tri.value(&g) <= 4 + 2);
        check_vertex_afmc(&g, 0, 2, 1);
    }

    #[test]
    fn vertex_afmc_star() {
        // Star with k middle vertices, alpha = k.
        let k = 4;
        let mut edges = Vec::new();
        for i in 0..k {
            edges.push((0, 1 + i));
            edges.push((1 + i, k + 1));
        }
        let g = DiGraph::unit(k + 2, &edges).unwrap();
        check_vertex_afmc(&g, 0, k + 1, k as Weight);
    }

    #[test]
    fn vertex_afmc_random_exhaustive() {
        let mut rng = rng_from_seed(2002);
        for _ in 0..30 {
            let n = rng.gen_range(3..=7);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in 0..n {
                    if u != v && !(u == 0 && v == n - 1) && rng.gen_bool(0.35) {
                        edges.push((u, v));
                    }
                }
            }
            let w: Vec<Weight> = (0..n).map(|_| rng.gen_range(1..=6)).collect();
            let g = DiGraph::new(n, w, &edges).unwrap();
            let alpha = rng.gen_range(1..=6);
            check_vertex_afmc(&g, 0, n - 1, alpha);
        }
    }

    #[test]
    fn vertex_afmc_rejects_bad_inputs() {
        let g = DiGraph::unit(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let r = vertex_afmc(&AfmcVertexInstance { graph: &g, x: 0, y: 2, alpha: 1 });
        assert_eq!(r.unwrap_err(), Error::AdjacentSourceSink);

        let g = DiGraph::unit(3, &[(0, 1), (1, 2)]).unwrap();
        let (_, wm) = w_max_params(&g).unwrap();
        let r = vertex_afmc(&AfmcVertexInstance { graph: &g, x: 0, y: 2, alpha: wm });
        assert_eq!(r.unwrap_err(), Error::AlphaRange);
    }
}
