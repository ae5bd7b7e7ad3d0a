//! Dense-regime weighted solver: per pair (x, y), a ladder of scales; each
//! phase sparsifies the reweighted graph with one subgraph-oracle query,
//! warm-starts with a small-support flow, runs local flow on the scaled
//! residual split graph, and recovers the next cut with a vertex-AFMC on
//! the derived graph of the promising set.

use std::collections::HashMap;

use crate::afmc::{vertex_afmc_with_cap, AfmcVertexInstance};
use crate::flow::{small_support_max_flow, CapGraph, Flow};
use crate::graph::{
    build_split, cut_from_derived_cut, derive_via, fallback_cut, in_copy, induced_tripartition,
    out_copy, pow2_at_least, w_max_params, DiGraph, Tripartition,
};
use crate::local_flow::alg_local_flow;
use crate::oracle::SubgraphOracle;
use crate::sampling::{log2_exact, select_pairs_dense, Rng};
use crate::sparse::div_pow2;
use crate::{mul_w, Error, Result, Vertex, Weight};

/// Matrix-multiplication exponent used by the default gamma formula.
const OMEGA: f64 = 2.371552;

#[derive(Debug, Clone, Default)]
pub struct DenseConfig {
    /// Sparsification tradeoff; None uses ceil(n^((6-2w)/(11-3w))) clamped
    /// to [1, max(1, n / (100 lambda))].
    pub gamma: Option<u64>,
}

pub fn default_gamma(n: usize, lambda: u64) -> u64 {
    let expo = (6.0 - 2.0 * OMEGA) / (11.0 - 3.0 * OMEGA);
    let raw = (n as f64).powf(expo).ceil() as u64;
    let ceiling = ((n as u64) / (100 * lambda)).max(1);
    raw.clamp(1, ceiling)
}

/// Reweighted vertex weight for scale M' = 2^e: zero below 2M', otherwise
/// floor((w - M') / M'), satisfying w/M' - 2 <= what <= w/M'.
pub fn reweight(w: Weight, m_log: i64) -> Weight {
    if !crate::sparse::ge_pow2(w, m_log + 1) {
        0
    } else {
        div_pow2(w, m_log).expect("weight fits after scaling") - 1
    }
}

/// Internals of one promising-set computation, kept for auditing.
#[derive(Debug, Clone, Default)]
pub struct PhaseAudit {
    pub y_high: Vec<Vertex>,
    pub shortcut_edges: Vec<(Vertex, Vertex)>,
    pub sparsifier_edges: usize,
    pub initial_flow_value: Weight,
    pub local_flow_saturated: bool,
}

/// Computes a promising vertex set for scale 2^m_log given the previous
/// phase's cut. Guarantees x in A and y outside A ∪ N+(A).
#[allow(clippy::too_many_arguments)]
pub fn compute_promising(
    g: &DiGraph,
    x: Vertex,
    y: Vertex,
    lambda: u64,
    gamma: u64,
    m_log: i64,
    prev: &Tripartition,
    oracle: &SubgraphOracle,
    rng: &mut Rng,
) -> Result<(Vec<Vertex>, PhaseAudit)> {
    let n = g.n();
    let mut audit = PhaseAudit::default();
    let what: Vec<Weight> = (0..n).map(|v| reweight(g.weight(v), m_log)).collect();
    let vol_bound = 100.0 * (n as f64) * (n as f64) / gamma as f64;

    // ---- Step 1: sparsify.
    if (g.out_volume(&prev.left) as f64) > vol_bound {
        return Ok((vec![x], audit));
    }
    let mut side = vec![2u8; n];
    for &v in &prev.left {
        side[v] = 0;
    }
    for &v in &prev.sep {
        side[v] = 1;
    }
    let e1: Vec<(Vertex, Vertex)> = prev
        .left
        .iter()
        .flat_map(|&u| g.out_neighbors(u).map(move |v| (u, v)))
        .collect();
    let z_query: Vec<Vertex> = (0..n).filter(|&v| what[v] >= 4 && side[v] == 2).collect();
    let threshold = 30000.0 * lambda as f64 * gamma as f64 * (n as f64).log2();
    let resp = oracle.answer_with_threshold(g, &z_query, threshold);
    audit.y_high = resp.y_high.clone();
    let e_tilde: Vec<(Vertex, Vertex)> = resp
        .y_high
        .iter()
        .copied()
        .filter(|&v| v != y && !g.has_edge(v, y))
        .map(|v| (v, y))
        .collect();
    audit.shortcut_edges = e_tilde.clone();
    let mut g_tilde: Vec<(Vertex, Vertex)> = resp
        .edges
        .iter()
        .copied()
        .chain(e1.iter().copied())
        .filter(|&(_, v)| what[v] >= 4 || v == y)
        .collect();
    g_tilde.sort_unstable();
    g_tilde.dedup();
    audit.sparsifier_edges = g_tilde.len();

    // ---- Step 2: initial flow and the scaled residual split graph.
    let sparse_edges: Vec<(Vertex, Vertex)> = {
        let mut e = g_tilde.clone();
        e.extend(e_tilde.iter().copied());
        e.sort_unstable();
        e.dedup();
        e
    };
    let sparse_graph = DiGraph::new(n, what.clone(), &sparse_edges)?;
    let f0 = small_support_max_flow(&sparse_graph, x, y, rng)?;
    audit.initial_flow_value = f0.value;

    let j_edges: Vec<(Vertex, Vertex)> = {
        let mut e: Vec<(Vertex, Vertex)> = g.edges().collect();
        e.extend(e_tilde.iter().copied());
        e.sort_unstable();
        e.dedup();
        e
    };
    let j_graph = DiGraph::new(n, what.clone(), &j_edges)?;
    let j_split = build_split(&j_graph)?;
    // Lift f0 to the split graph: regular edges carry the projected flow,
    // special edges the per-vertex throughput.
    let mut edge_id: HashMap<(Vertex, Vertex), usize> = HashMap::new();
    for (idx, (u, v)) in j_graph.edges().enumerate() {
        edge_id.insert((u, v), n + idx);
    }
    let mut values = vec![0 as Weight; j_split.cap.edge_count()];
    let mut through = vec![0 as Weight; n];
    for &(u, v, f) in &f0.flows {
        values[edge_id[&(u, v)]] = f;
        through[u] += f;
    }
    for v in 0..n {
        if v != x && v != y {
            values[j_split.special_edge(v)] = through[v];
        }
    }
    let f0_split = Flow { values, value: f0.value, s: out_copy(x), t: in_copy(y) };
    let z_graph = f0_split.residual_graph(&j_split.cap);
    let scale = (n as Weight).div_ceil(gamma as Weight);
    let mut zhat = CapGraph::new(z_graph.n());
    for e in z_graph.edge_ids() {
        let (u, v, c) = z_graph.edge(e);
        zhat.add_edge(u, v, mul_w(c, scale)?);
    }

    // ---- Step 3: local flow on the scaled graph.
    let delta: Weight = (50 * (n as Weight) * (n as Weight)).div_ceil(gamma as Weight);
    let h = 2 * lambda as usize + 4;
    let local = alg_local_flow(&zhat, out_copy(x), in_copy(y), delta, h)?;
    if local.flow.value >= delta {
        audit.local_flow_saturated = true;
        return Ok((vec![x], audit));
    }
    let mut excluded = vec![false; n];
    excluded[y] = true;
    for u in g.in_neighbors(y) {
        excluded[u] = true;
    }
    let mut in_a = vec![false; n];
    for &v in &local.a {
        if crate::graph::is_out_copy(v) {
            let b = crate::graph::base_of(v);
            if !excluded[b] {
                in_a[b] = true;
            }
        }
    }
    in_a[x] = true;
    let a: Vec<Vertex> = (0..n).filter(|&v| in_a[v]).collect();
    debug_assert!(!a.contains(&y));
    debug_assert!(a.iter().all(|&v| !g.has_edge(v, y)));
    Ok((a, audit))
}

/// One phase: promising set, volume check, then vertex-AFMC recovery on the
/// derived graph with alpha = n * M' (rescaled when M' < 1).
#[allow(clippy::too_many_arguments)]
pub fn phase_step(
    g: &DiGraph,
    x: Vertex,
    y: Vertex,
    lambda: u64,
    gamma: u64,
    m_log: i64,
    prev: &Tripartition,
    oracle: &SubgraphOracle,
    rng: &mut Rng,
) -> Result<Tripartition> {
    let n = g.n();
    let (a, _) = compute_promising(g, x, y, lambda, gamma, m_log, prev, oracle, rng)?;
    let trivial = || -> Result<Tripartition> {
        let (tri, valid) = induced_tripartition(g, &[x])?;
        debug_assert!(valid);
        Ok(tri)
    };
    if (g.out_volume(&a) as f64) > 100.0 * (n as f64) * (n as f64) / gamma as f64 {
        return trivial();
    }
    let derived = derive_via(g, &a)?;
    if derived.to_base.len() >= n {
        return trivial();
    }
    let (_, wm_base) = w_max_params(g)?;
    // alpha = n * M'; when M' < 1 the instance is rescaled by 1/M'.
    let lift = (-m_log).max(0) as u32;
    let inst_graph = if lift == 0 {
        derived.graph.clone()
    } else {
        let scaled: Result<Vec<Weight>> = derived
            .graph
            .weights()
            .iter()
            .map(|&w| {
                w.checked_shl(lift).filter(|&s| s >> lift == w).ok_or(Error::CapacityOverflow)
            })
            .collect();
        derived.graph.with_weights(scaled?)
    };
    let alpha = if m_log >= 0 {
        mul_w(n as Weight, 1u128 << m_log)?
    } else {
        n as Weight
    };
    let regular_cap = mul_w(wm_base, 1u128 << lift)?;
    // alpha stays below half the base-graph capacity because M' <= W'max/2.
    debug_assert!(alpha < regular_cap / 2);
    let x_idx = derived.from_base(x).expect("x in A");
    let wp_inst = pow2_at_least(inst_graph.max_weight() + 1)?;
    let tri_d = vertex_afmc_with_cap(
        &AfmcVertexInstance { graph: &inst_graph, x: x_idx, y: derived.sink, alpha },
        wp_inst,
        regular_cap,
    )?;
    let tri = cut_from_derived_cut(g, &derived, &tri_d)?;
    debug_assert!(tri.is_valid_vertex_cut(g));
    debug_assert!(tri.contains_in_left(x));
    debug_assert!(tri.right.binary_search(&y).is_ok());
    Ok(tri)
}

/// Per-pair main subroutine: z = ceil(log(20 n W'max)) phases over the
/// scale ladder M_i = W'max / 2^i, starting from the cut induced by x.
/// With the zero-error oracle backend the result is an exact minimum x-y
/// vertex-cut whenever some minimum x-y cut has |L| <= lambda.
pub fn main_subroutine(
    g: &DiGraph,
    x: Vertex,
    y: Vertex,
    lambda: u64,
    gamma: u64,
    oracle: &SubgraphOracle,
    rng: &mut Rng,
) -> Result<Tripartition> {
    assert!(x != y && !g.has_edge(x, y));
    assert!(lambda >= 1 && gamma >= 1);
    assert!(
        (lambda as u128) * (gamma as u128) <= g.n() as u128,
        "lambda * gamma must stay within n"
    );
    let (wp, _) = w_max_params(g)?;
    let wp_log = log2_exact(wp) as i64;
    let z = {
        let v = 20.0 * g.n() as f64 * wp as f64;
        v.log2().ceil() as i64
    };
    let (mut cut, valid) = induced_tripartition(g, &[x])?;
    debug_assert!(valid);
    for i in 1..=z {
        cut = phase_step(g, x, y, lambda, gamma, wp_log - i, &cut, oracle, rng)?;
    }
    Ok(cut)
}

/// One round of the dense solver: pair selection, early exit when lambda
/// overshoots 2 sqrt(n) or no admissible pair survives, then the main
/// subroutine per pair, minimum value wins. Drivers amplify externally.
pub fn solve_dense(g: &DiGraph, cfg: &DenseConfig, rng: &mut Rng) -> Result<Tripartition> {
    assert!(g.weights().iter().all(|&w| w >= 1), "weights must be lifted to >= 1");
    if g.n() < 2 {
        return Err(Error::NoCut);
    }
    let fallback = fallback_cut(g).ok_or(Error::NoCut)?;
    let sel = select_pairs_dense(g, rng);
    if (sel.lambda as f64) > 2.0 * (g.n() as f64).sqrt() || sel.pairs.is_empty() {
        return Ok(fallback);
    }
    let gamma = cfg.gamma.unwrap_or_else(|| default_gamma(g.n(), sel.lambda));
    let oracle = SubgraphOracle;
    let mut best: Option<Tripartition> = None;
    for &(x, y) in &sel.pairs {
        if (sel.lambda as u128) * (gamma as u128) > g.n() as u128 {
            continue;
        }
        let cut = main_subroutine(g, x, y, sel.lambda, gamma, &oracle, rng)?;
        if best.as_ref().map_or(true, |b| cut.value(g) < b.value(g)) {
            best = Some(cut);
        }
    }
    Ok(best.unwrap_or(fallback))
}

/// Amplified driver over alternating orientations; used by the command-line
/// front end, which picks the repeat count.
pub fn solve_dense_amplified(
    g: &DiGraph,
    cfg: &DenseConfig,
    repeats: usize,
    rng: &mut Rng,
) -> Result<Tripartition> {
    let reversed = g.reversed();
    let mut best: Option<Tripartition> = None;
    for rep in 0..repeats.max(1) {
        let (graph, flip) = if rep % 2 == 0 { (g, false) } else { (&reversed, true) };
        let cut = solve_dense(graph, cfg, rng)?;
        let cut = if flip { cut.reversed() } else { cut };
        debug_assert!(cut.is_valid_vertex_cut(g));
        if best.as_ref().map_or(true, |b| cut.value(g) < b.value(g)) {
            best = Some(cut);
        }
    }
    Ok(best.expect("at least one repeat"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::min_vertex_cut;
    use crate::instance::{gen_planted, PlantedSpec};
    use crate::reference::exact_global_min_vertex_cut;
    use crate::sampling::rng_from_seed;

    #[test]
    fn reweight_identity() {
        // w/M' - 2 <= what <= w/M' over a grid of weights and scales.
        for w in 1..=200u128 {
            for m_log in -4..=8i64 {
                let what = reweight(w, m_log);
                let ratio_num = div_pow2(w, m_log).unwrap();
                assert!(what <= ratio_num);
                assert!(ratio_num <= what + 2);
            }
        }
    }

    #[test]
    fn diamond_exact() {
        let g = DiGraph::new(4, vec![1, 2, 3, 1], &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let mut rng = rng_from_seed(1);
        let cut = main_subroutine(&g, 0, 3, 1, 1, &SubgraphOracle, &mut rng).unwrap();
        assert_eq!(cut.value(&g), 5);
        assert_eq!(cut, Tripartition::new(vec![0], vec![1, 2], vec![3]));
    }

    #[test]
    fn path_with_heavy_middle() {
        let g = DiGraph::new(3, vec![1, 7, 1], &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let mut rng = rng_from_seed(2);
        for lambda in [1u64, 2, 3] {
            let cut = main_subroutine(&g, 0, 2, lambda, 1, &SubgraphOracle, &mut rng).unwrap();
            assert_eq!(cut.value(&g), 7);
        }
    }

    #[test]
    fn main_subroutine_exact_on_random_pairs() {
        // Zero-error oracle: exact min x-y vertex-cut on every instance with
        // a min cut of |L| <= lambda; tested with lambda = n so every pair
        // qualifies.
        let mut rng = rng_from_seed(33);
        for case in 0..8 {
            let n = rand::Rng::gen_range(&mut rng, 4..=9);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in 0..n {
                    if u != v && rand::Rng::gen_bool(&mut rng, 0.45) {
                        edges.push((u, v));
                    }
                }
            }
            let w: Vec<Weight> = (0..n).map(|_| rand::Rng::gen_range(&mut rng, 1..=8)).collect();
            let g = DiGraph::new(n, w, &edges).unwrap();
            let lambda = n as u64;
            for x in 0..n {
                for y in 0..n {
                    if x == y || g.has_edge(x, y) {
                        continue;
                    }
                    let want = min_vertex_cut(&g, &[x], &[y]).unwrap().value(&g);
                    let got = main_subroutine(&g, x, y, lambda, 1, &SubgraphOracle, &mut rng)
                        .unwrap()
                        .value(&g);
                    assert_eq!(got, want, "case {case}, pair ({x},{y})");
                }
            }
        }
    }

    #[test]
    fn scaled_residual_capacities() {
        // c_zhat(e) = ceil(n/gamma) * c_z(e) for every edge.
        let g =
            DiGraph::new(5, vec![3, 4, 5, 2, 6], &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 4)])
                .unwrap();
        let what: Vec<Weight> = (0..5).map(|v| reweight(g.weight(v), 0)).collect();
        let j = g.with_weights(what);
        let js = build_split(&j).unwrap();
        let zero = Flow {
            values: vec![0; js.cap.edge_count()],
            value: 0,
            s: out_copy(0),
            t: in_copy(3),
        };
        let z = zero.residual_graph(&js.cap);
        let scale = 3u128;
        let mut zh = CapGraph::new(z.n());
        for e in z.edge_ids() {
            let (u, v, c) = z.edge(e);
            zh.add_edge(u, v, c * scale);
        }
        for e in z.edge_ids() {
            assert_eq!(zh.edge(e).2, scale * z.edge(e).2);
        }
    }

    #[test]
    fn degenerate_scale_gives_ball() {
        // All weights < 2M': reweighted weights vanish, the shortcut set is
        // empty, the initial flow is zero.
        let g = DiGraph::new(
            6,
            vec![2, 2, 2, 2, 2, 2],
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)],
        )
        .unwrap();
        let (tri, _) = induced_tripartition(&g, &[0]).unwrap();
        let mut rng = rng_from_seed(4);
        let m_log = 3; // M' = 8 > every weight
        let (a, audit) =
            compute_promising(&g, 0, 3, 1, 1, m_log, &tri, &SubgraphOracle, &mut rng).unwrap();
        assert!(audit.shortcut_edges.is_empty());
        assert_eq!(audit.initial_flow_value, 0);
        assert!(a.contains(&0));
        assert!(!a.contains(&3));
    }

    #[test]
    fn shortcut_edges_only_from_y_high() {
        let spec =
            PlantedSpec { n: 30, l_size: 2, cut_weight: 6, max_weight: 8, density: 0.3, seed: 9 };
        let (inst, plant) = gen_planted(&spec).unwrap();
        let g = &inst.graph;
        let tri = plant.tripartition();
        let x = tri.left[0];
        let y = tri.right[0];
        let (prev, _) = induced_tripartition(g, &[x]).unwrap();
        let mut rng = rng_from_seed(5);
        let (_, audit) =
            compute_promising(g, x, y, 2, 1, 1, &prev, &SubgraphOracle, &mut rng).unwrap();
        for &(v, yy) in &audit.shortcut_edges {
            assert_eq!(yy, y);
            assert!(audit.y_high.contains(&v));
        }
    }

    /// Well-behaving check of `cut` against `reference` for scale 2^m_log.
    fn well_behaving(
        g: &DiGraph,
        cut: &Tripartition,
        reference: &Tripartition,
        lambda: u64,
        gamma: u64,
        m_log: i64,
    ) -> bool {
        let n = g.n() as f64;
        if (g.out_volume(&cut.left) as f64) > 100.0 * n * n / gamma as f64 {
            return false;
        }
        // w(S') <= w(S) + 10 n M' compared in quarters of the scale unit so
        // everything stays integral down to M' = 1/4.
        let lhs = 4 * cut.value(g);
        let m4 = div_pow2(4, -m_log).unwrap_or(0);
        let rhs = 4 * reference.value(g) + 10 * g.n() as Weight * m4;
        if lhs > rhs {
            return false;
        }
        let in_cut: Vec<bool> = {
            let mut m = vec![false; g.n()];
            for &v in cut.left.iter().chain(cut.sep.iter()) {
                m[v] = true;
            }
            m
        };
        let missing = reference
            .left
            .iter()
            .chain(reference.sep.iter())
            .filter(|&&v| !in_cut[v] && crate::sparse::ge_pow2(g.weight(v), m_log))
            .count() as u64;
        missing <= 20 * lambda * gamma
    }

    #[test]
    fn phases_preserve_well_behavior_and_promising_sets() {
        // On small instances: whenever the previous cut is well-behaving for
        // scale 2M' against a minimum x-y cut with |L| <= lambda, the
        // promising set admits an induced witness cut (searched over all
        // subsets of A), and every phase output is well-behaving for M'.
        let mut rng = rng_from_seed(71);
        for case in 0..6 {
            let n = 9usize;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in 0..n {
                    if u != v && rand::Rng::gen_bool(&mut rng, 0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let w: Vec<Weight> = (0..n).map(|_| rand::Rng::gen_range(&mut rng, 1..=6)).collect();
            let g = DiGraph::new(n, w, &edges).unwrap();
            let Some((x, y)) = (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .find(|&(x, y)| x != y && !g.has_edge(x, y))
            else {
                continue;
            };
            let lambda = n as u64;
            let gamma = 1u64;
            let cuts = crate::reference::enumerate_all_tripartitions(&g).unwrap();
            let xy: Vec<_> = cuts
                .iter()
                .filter(|(t, _)| t.contains_in_left(x) && t.right.binary_search(&y).is_ok())
                .collect();
            let Some(opt) = xy.iter().map(|&(_, v)| *v).min() else { continue };
            let reference = xy
                .iter()
                .filter(|&&(_, v)| *v == opt)
                .min_by_key(|(t, _)| t.left.len())
                .map(|(t, _)| t.clone())
                .unwrap();

            let (wp, _) = w_max_params(&g).unwrap();
            let wp_log = log2_exact(wp) as i64;
            let z = (20.0 * n as f64 * wp as f64).log2().ceil() as i64;
            let (mut cut, _) = induced_tripartition(&g, &[x]).unwrap();
            for i in 1..=z {
                let m_log = wp_log - i;
                let prev_good = well_behaving(&g, &cut, &reference, lambda, gamma, m_log + 1);
                let (a, _) = compute_promising(
                    &g,
                    x,
                    y,
                    lambda,
                    gamma,
                    m_log,
                    &cut,
                    &SubgraphOracle,
                    &mut rng,
                )
                .unwrap();
                if prev_good && a.len() <= 12 {
                    // Promising: some subset of A induces an x-y cut of
                    // value within 8 lambda gamma M' of the reference.
                    let mut found = false;
                    for mask in 0u32..(1u32 << a.len()) {
                        let sub: Vec<Vertex> = a
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| mask >> i & 1 == 1)
                            .map(|(_, &v)| v)
                            .collect();
                        if !sub.contains(&x) {
                            continue;
                        }
                        let Ok((tri, valid)) = induced_tripartition(&g, &sub) else { continue };
                        if !valid
                            || !tri.contains_in_left(x)
                            || tri.right.binary_search(&y).is_err()
                        {
                            continue;
                        }
                        let m8 = div_pow2(8, -m_log).unwrap_or(0);
                        if 8 * tri.value(&g)
                            <= 8 * reference.value(&g)
                                + lambda as Weight * gamma as Weight * m8
                        {
                            found = true;
                            break;
                        }
                    }
                    assert!(found, "case {case}: no witness inside A at scale {m_log}");
                }
                cut = phase_step(&g, x, y, lambda, gamma, m_log, &cut, &SubgraphOracle, &mut rng)
                    .unwrap();
                assert!(cut.is_valid_vertex_cut(&g));
                assert!(
                    well_behaving(&g, &cut, &reference, lambda, gamma, m_log),
                    "case {case}: phase output not well-behaving at scale {m_log}"
                );
            }
            assert_eq!(cut.value(&g), opt, "case {case}: final cut not exact");
        }
    }

    #[test]
    fn solve_dense_valid_and_often_optimal_on_plants() {
        let mut hits = 0;
        let trials = 10u64;
        for seed in 0..trials {
            let spec = PlantedSpec {
                n: 30,
                l_size: 2,
                cut_weight: 6,
                max_weight: 8,
                density: 0.25,
                seed,
            };
            let Some((inst, _)) = gen_planted(&spec) else { continue };
            let g = &inst.graph;
            let oracle = exact_global_min_vertex_cut(g).unwrap();
            let mut rng = rng_from_seed(seed);
            let cut = solve_dense_amplified(g, &DenseConfig::default(), 16, &mut rng).unwrap();
            assert!(cut.is_valid_vertex_cut(g));
            if cut.value(g) == oracle.value {
                hits += 1;
            }
        }
        assert!(hits * 10 >= trials * 7, "{hits}/{trials} matched");
    }
}
