//! Randomized selection subroutines shared by the solvers: terminal and
//! pair selection, the weighted sampling structure, the "cut if some left
//! vertex is known" routine, and the easy-special-case solver.

use std::collections::HashMap;

use rand::{Rng as _, SeedableRng as _};

use crate::flow::min_vertex_cut;
use crate::graph::{fallback_cut, DiGraph, Tripartition};
use crate::{Error, Result, Vertex, Weight};

/// Seedable pseudo-random stream. Identical seed implies identical output.
pub type Rng = rand_chacha::ChaCha12Rng;

pub fn rng_from_seed(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}

/// Independent sub-stream of a seed, e.g. one per repeat index.
pub fn rng_for_stream(seed: u64, stream: u64) -> Rng {
    let mut r = Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub fn log2_ceil(x: usize) -> u32 {
    debug_assert!(x >= 1);
    (usize::BITS - (x - 1).leading_zeros()).max(1)
}

/// Exponent of a power of two.
pub fn log2_exact(x: Weight) -> u32 {
    debug_assert!(x.is_power_of_two());
    x.trailing_zeros()
}

/// Hierarchical binary interval partition of the vertex ids with
/// per-interval weight sums: O(log n) weighted sampling with temporary
/// exclusions.
#[derive(Debug, Clone)]
pub struct WeightedSampler {
    size: usize,
    tree: Vec<Weight>,
    undo: Vec<(usize, Weight)>,
}

impl WeightedSampler {
    pub fn new(weights: &[Weight]) -> Self {
        let size = weights.len().next_power_of_two().max(1);
        let mut tree = vec![0; 2 * size];
        tree[size..size + weights.len()].copy_from_slice(weights);
        for i in (1..size).rev() {
            tree[i] = tree[2 * i] + tree[2 * i + 1];
        }
        WeightedSampler { size, tree, undo: Vec::new() }
    }

    pub fn total(&self) -> Weight {
        self.tree[1]
    }

    /// Temporarily zeroes a vertex weight; undone by [`Self::restore`].
    pub fn exclude(&mut self, v: Vertex) {
        let leaf = self.size + v;
        if self.tree[leaf] == 0 {
            return;
        }
        self.undo.push((v, self.tree[leaf]));
        let mut i = leaf;
        let w = self.tree[leaf];
        self.tree[i] = 0;
        while i > 1 {
            i /= 2;
            self.tree[i] -= w;
        }
    }

    /// Restores every exclusion done since construction or the last restore.
    pub fn restore(&mut self) {
        while let Some((v, w)) = self.undo.pop() {
            let mut i = self.size + v;
            self.tree[i] = w;
            while i > 1 {
                i /= 2;
                self.tree[i] += w;
            }
        }
    }

    /// Samples a vertex with probability proportional to its weight.
    /// Returns None when the current total is zero.
    pub fn sample(&self, rng: &mut Rng) -> Option<Vertex> {
        let total = self.total();
        if total == 0 {
            return None;
        }
        let mut r = gen_weight_range(rng, total);
        let mut i = 1;
        while i < self.size {
            if r < self.tree[2 * i] {
                i *= 2;
            } else {
                r -= self.tree[2 * i];
                i = 2 * i + 1;
            }
        }
        Some(i - self.size)
    }
}

/// Uniform draw from [0, bound).
fn gen_weight_range(rng: &mut Rng, bound: Weight) -> Weight {
    if bound <= u64::MAX as u128 {
        rng.gen_range(0..bound as u64) as u128
    } else {
        // Rejection sampling over two words.
        loop {
            let x = ((rng.gen::<u64>() as u128) << 64) | rng.gen::<u64>() as u128;
            let limit = u128::MAX - u128::MAX % bound;
            if x < limit {
                return x % bound;
            }
        }
    }
}

/// Average total degree 2m/n.
pub fn avg_degree(g: &DiGraph) -> f64 {
    2.0 * g.m() as f64 / g.n() as f64
}

/// Low/high degree split: high-degree means deg(v) >= d * n^eps.
pub fn degree_threshold(g: &DiGraph, eps: f64) -> f64 {
    avg_degree(g) * (g.n() as f64).powf(eps)
}

pub fn low_degree_vertices(g: &DiGraph, eps: f64) -> Vec<Vertex> {
    let thr = degree_threshold(g, eps);
    (0..g.n()).filter(|&v| (g.degree(v) as f64) < thr).collect()
}

/// Output of the pair-selection routines.
#[derive(Debug, Clone)]
pub struct PairSelection {
    /// Power of two; estimate for |L| of the distinguished cut.
    pub lambda: u64,
    /// Power of two; guess for the critical threshold (sparse variant only).
    pub tau: Option<Weight>,
    /// Pairs (x, y) with x != y and (x, y) not an edge.
    pub pairs: Vec<(Vertex, Vertex)>,
}

/// Selects lambda = 2^i for i uniform in [1, ceil(log n)] and a set of
/// terminals drawn uniformly with repetition over ceil(100 n log n / lambda)
/// trials; the returned set is deduplicated.
pub fn select_terminals(g: &DiGraph, rng: &mut Rng) -> (u64, Vec<Vertex>) {
    let n = g.n();
    assert!(n >= 2);
    let i = rng.gen_range(1..=log2_ceil(n));
    let lambda = 1u64 << i;
    let trials = (100.0 * n as f64 * (n as f64).log2() / lambda as f64).ceil() as usize;
    let mut seen = vec![false; n];
    let mut t = Vec::new();
    for _ in 0..trials {
        let v = rng.gen_range(0..n);
        if !seen[v] {
            seen[v] = true;
            t.push(v);
        }
    }
    t.sort_unstable();
    (lambda, t)
}

/// Pair selection for the non-dense weighted solver. Each trial picks a
/// low-degree x uniformly and y weight-proportionally from
/// V \ ({x} ∪ N+(x)). `trial_factor` scales the number of trials; the count
/// never exceeds the ceil(100 n log n / lambda) bound.
pub fn select_pairs_sparse(
    g: &DiGraph,
    eps: f64,
    rng: &mut Rng,
    trial_factor: f64,
) -> Result<PairSelection> {
    let n = g.n();
    assert!(n >= 2);
    let (wp_max, _) = crate::graph::w_max_params(g)?;
    let i_max = ((eps * (n as f64).log2()).ceil() as u32).max(1);
    let i = rng.gen_range(1..=i_max);
    let lambda = 1u64 << i;
    let j_max = log2_exact(wp_max).max(1);
    let j = rng.gen_range(1..=j_max);
    let tau: Weight = 1 << j;

    let bound = (100.0 * n as f64 * (n as f64).log2() / lambda as f64).ceil() as usize;
    let trials = ((trial_factor * n as f64 * (n as f64).log2() / lambda as f64).ceil() as usize)
        .min(bound)
        .max(1);
    let low = low_degree_vertices(g, eps);
    let mut sampler = WeightedSampler::new(g.weights());
    let mut pairs = Vec::new();
    for _ in 0..trials {
        let x = low[rng.gen_range(0..low.len())];
        sampler.exclude(x);
        for u in g.out_neighbors(x) {
            sampler.exclude(u);
        }
        if let Some(y) = sampler.sample(rng) {
            pairs.push((x, y));
        }
        sampler.restore();
    }
    pairs.sort_unstable();
    pairs.dedup();
    Ok(PairSelection { lambda, tau: Some(tau), pairs })
}

/// Pair selection for the dense solver: terminals via [`select_terminals`],
/// then one weight-proportional sink per terminal.
pub fn select_pairs_dense(g: &DiGraph, rng: &mut Rng) -> PairSelection {
    let (lambda, t) = select_terminals(g, rng);
    let mut sampler = WeightedSampler::new(g.weights());
    let mut pairs = Vec::new();
    for &x in &t {
        sampler.exclude(x);
        for u in g.out_neighbors(x) {
            sampler.exclude(u);
        }
        if let Some(y) = sampler.sample(rng) {
            debug_assert!(x != y && !g.has_edge(x, y));
            pairs.push((x, y));
        }
        sampler.restore();
    }
    PairSelection { lambda, tau: None, pairs }
}

/// Runs ceil(4 log n) + 1 trials; each picks y weight-proportionally from
/// V \ ({x} ∪ N+(x)) and computes the exact min x-y vertex-cut value.
/// Returns the minimizing (y, value). If x lies in the left side of some
/// global minimum vertex-cut (under the w(L) <= w(R) convention), the value
/// equals OPT with probability at least 1 - 1/n^4.
pub fn cut_given_left_vertex(g: &DiGraph, x: Vertex, rng: &mut Rng) -> Result<(Vertex, Weight)> {
    let n = g.n();
    let mut sampler = WeightedSampler::new(g.weights());
    sampler.exclude(x);
    for u in g.out_neighbors(x) {
        sampler.exclude(u);
    }
    if sampler.total() == 0 {
        return Err(Error::NoCandidateSink);
    }
    let trials = ((4.0 * (n as f64).log2()).ceil() as usize) + 1;
    let mut best: Option<(Vertex, Weight)> = None;
    for _ in 0..trials {
        let y = sampler.sample(rng).expect("nonzero total");
        let c = min_vertex_cut(g, &[x], &[y])?.value(g);
        if best.map_or(true, |(_, bc)| c < bc) {
            best = Some((y, c));
        }
    }
    Ok(best.expect("at least one trial"))
}

/// Per-invocation memoization of [`cut_given_left_vertex`]: repeated
/// queries for the same source reuse the first answer.
pub struct CutSourceCache<'a> {
    g: &'a DiGraph,
    memo: HashMap<Vertex, (Vertex, Weight)>,
}

impl<'a> CutSourceCache<'a> {
    pub fn new(g: &'a DiGraph) -> Self {
        CutSourceCache { g, memo: HashMap::new() }
    }

    pub fn query(&mut self, x: Vertex, rng: &mut Rng) -> Result<(Vertex, Weight)> {
        if let Some(&hit) = self.memo.get(&x) {
            return Ok(hit);
        }
        let ans = cut_given_left_vertex(self.g, x, rng)?;
        self.memo.insert(x, ans);
        Ok(ans)
    }
}

/// Easy special cases: q = 128 n^(1-eps) ceil(log n) trials with uniform
/// vertex sources (and the same with random-edge endpoints), one exact cut
/// for the best candidate. Runs on both edge orientations and returns the
/// smaller cut. Optimal with probability >= 1 - 1/n^2 whenever some global
/// minimum vertex-cut has |L| >= n^eps or Vol(L) >= n^eps * d.
pub fn alg_special(g: &DiGraph, eps: f64, rng: &mut Rng) -> Result<Tripartition> {
    let mut best: Option<Tripartition> = None;
    for orientation in 0..2 {
        let gr;
        let graph = if orientation == 0 {
            g
        } else {
            gr = g.reversed();
            &gr
        };
        let cut = alg_special_oriented(graph, eps, rng)?;
        let cut = if orientation == 0 { cut } else { cut.reversed() };
        debug_assert!(cut.is_valid_vertex_cut(g));
        if best.as_ref().map_or(true, |b| cut.value(g) < b.value(g)) {
            best = Some(cut);
        }
    }
    Ok(best.expect("two orientations"))
}

fn alg_special_oriented(g: &DiGraph, eps: f64, rng: &mut Rng) -> Result<Tripartition> {
    let n = g.n();
    let q = (128.0 * (n as f64).powf(1.0 - eps) * log2_ceil(n) as f64).ceil() as usize;
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let mut cache = CutSourceCache::new(g);
    let fallback = fallback_cut(g).ok_or(Error::NoCut)?;

    // Alg1: uniform vertex sources.
    let mut best1: Option<(Weight, Vertex, Vertex)> = None;
    for _ in 0..q {
        let x = rng.gen_range(0..n);
        if let Ok((y, c)) = cache.query(x, rng) {
            if best1.map_or(true, |(bc, _, _)| c < bc) {
                best1 = Some((c, x, y));
            }
        }
    }
    let cut1 = match best1 {
        Some((_, x, y)) => min_vertex_cut(g, &[x], &[y])?,
        None => fallback.clone(),
    };

    // Alg2: endpoints of uniformly random edges.
    let mut best2: Option<(Weight, Vertex, Vertex)> = None;
    if !edges.is_empty() {
        for _ in 0..q {
            let (a, b) = edges[rng.gen_range(0..edges.len())];
            for x in [a, b] {
                if let Ok((y, c)) = cache.query(x, rng) {
                    if best2.map_or(true, |(bc, _, _)| c < bc) {
                        best2 = Some((c, x, y));
                    }
                }
            }
        }
    }
    let cut2 = match best2 {
        Some((_, x, y)) => min_vertex_cut(g, &[x], &[y])?,
        None => fallback,
    };

    Ok(if cut1.value(g) <= cut2.value(g) { cut1 } else { cut2 })
}
