//! Weighted non-dense solver: critical thresholds, beta/sigma sets,
//! suspicious vertices, Case 1 (small local separator: bounded search +
//! tau'-integral local flow augmentation over the split graph with
//! shortcuts, yielding a promising vertex set Z, then a derived-graph cut)
//! and Case 2 (large local separator: J-set symmetric differences).

use std::collections::HashMap;

use rand::Rng as _;

use crate::flow::{max_flow, min_vertex_cut, CapGraph};
use crate::graph::{
    base_of, build_split, cut_from_derived_cut, derive_via, fallback_cut, in_copy, is_out_copy,
    out_copy, w_max_params, DiGraph, SplitGraph, Tripartition,
};
use crate::modadj::ModifiedAdjacency;
use crate::sampling::{
    alg_special, cut_given_left_vertex, degree_threshold, log2_exact, select_pairs_sparse, Rng,
};
use crate::{Error, Result, Vertex, Weight};

/// Tuning knobs; the defaults follow the analysis with desk-scale budgets.
#[derive(Debug, Clone)]
pub struct SparseConfig {
    /// Balance exponent; None uses 1/12 - log(d)/(12 log n) clamped to
    /// (0.01, 0.9).
    pub eps: Option<f64>,
    /// Outer amplification count; None derives it from log n * log Wmax.
    pub repeats: Option<usize>,
    /// Scales the number of pair-selection trials (the cap stays at the
    /// 100 n log n / lambda bound).
    pub pair_trial_factor: f64,
}

impl Default for SparseConfig {
    fn default() -> Self {
        SparseConfig { eps: None, repeats: None, pair_trial_factor: 8.0 }
    }
}

pub fn default_eps(g: &DiGraph) -> f64 {
    let n = g.n().max(2) as f64;
    let d = (2.0 * g.m() as f64 / n).max(1.0);
    (1.0 / 12.0 - d.log2() / (12.0 * n.log2())).clamp(0.01, 0.9)
}

/// Scale test: w >= 2^e, where e may be negative.
pub(crate) fn ge_pow2(w: Weight, e: i64) -> bool {
    if e <= 0 {
        w >= 1
    } else if e >= 127 {
        false
    } else {
        w >= (1u128 << e)
    }
}

/// floor(w / 2^e) with e possibly negative (then an exact left shift).
pub(crate) fn div_pow2(w: Weight, e: i64) -> Result<Weight> {
    if e >= 0 {
        Ok(if e >= 128 { 0 } else { w >> e })
    } else {
        let shift = (-e) as u32;
        w.checked_shl(shift)
            .filter(|&x| x >> shift == w)
            .ok_or(Error::CapacityOverflow)
    }
}

/// Per-invocation parameters of the non-dense solver. tau and lambda are
/// powers of two; tau' = tau / (64 lambda^2) and tau-hat = tau / (8 lambda)
/// are tracked as exact powers of two via their exponents (possibly
/// negative).
#[derive(Debug, Clone)]
pub struct SparseParams {
    pub eps: f64,
    pub lambda: u64,
    pub tau: Weight,
    /// Case-1 separator cardinality bound; default 2^12 lambda^3.
    pub rho: u128,
    pub tau_prime_log: i64,
    pub tau_hat_log: i64,
}

impl SparseParams {
    pub fn new(eps: f64, lambda: u64, tau: Weight) -> SparseParams {
        let tau_log = log2_exact(tau) as i64;
        let lambda_log = lambda.trailing_zeros() as i64;
        SparseParams {
            eps,
            lambda,
            tau,
            rho: (1u128 << 12) * (lambda as u128).pow(3),
            tau_prime_log: tau_log - 6 - 2 * lambda_log,
            tau_hat_log: tau_log - 3 - lambda_log,
        }
    }
}

/// Bounded-DFS reachability sets through heavy low-degree vertices, their
/// inverse map, and the suspicious vertices whose inverse map is abnormally
/// large.
#[derive(Debug, Clone)]
pub struct BetaSigma {
    pub beta: Vec<Vec<Vertex>>,
    pub sigma: Vec<Vec<Vertex>>,
    pub suspicious: Vec<bool>,
    pub low_degree: Vec<bool>,
}

/// Exploration threshold for the beta DFS: weight at least 2^e (Case 1,
/// e = log tau-hat) or weight strictly above tau (Case 2).
#[derive(Debug, Clone, Copy)]
pub enum BetaThreshold {
    AtLeastPow2(i64),
    Above(Weight),
}

impl BetaThreshold {
    fn admits(&self, w: Weight) -> bool {
        match *self {
            BetaThreshold::AtLeastPow2(e) => ge_pow2(w, e),
            BetaThreshold::Above(t) => w > t,
        }
    }
}

/// Builds the beta sets by DFS through low-degree vertices above the
/// threshold (capped at 2*lambda discovered vertices, using out-lists
/// truncated at 2*lambda+1), then inverts them into sigma sets and flags
/// vertices with |sigma| > 2 n^eps lambda as suspicious.
pub fn build_beta_sigma(
    g: &DiGraph,
    eps: f64,
    lambda: u64,
    thr: BetaThreshold,
) -> BetaSigma {
    let n = g.n();
    let dthr = degree_threshold(g, eps);
    let low_degree: Vec<bool> = (0..n).map(|v| (g.degree(v) as f64) < dthr).collect();
    let cap = 2 * lambda as usize;
    // Truncated out-lists of qualified successors.
    let out: Vec<Vec<Vertex>> = (0..n)
        .map(|u| {
            g.out_neighbors(u)
                .filter(|&z| low_degree[z] && thr.admits(g.weight(z)))
                .take(cap + 1)
                .collect()
        })
        .collect();
    let mut beta: Vec<Vec<Vertex>> = Vec::with_capacity(n);
    let mut stamp = vec![u32::MAX; n];
    for v in 0..n {
        let mut set = vec![v];
        stamp[v] = v as u32;
        let mut stack = vec![v];
        'dfs: while let Some(u) = stack.pop() {
            for &z in &out[u] {
                if stamp[z] != v as u32 {
                    stamp[z] = v as u32;
                    set.push(z);
                    stack.push(z);
                    if set.len() >= cap.max(1) {
                        break 'dfs;
                    }
                }
            }
        }
        set.sort_unstable();
        beta.push(set);
    }
    let mut sigma: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for v in 0..n {
        for &u in &beta[v] {
            if low_degree[u] {
                sigma[u].push(v);
            }
        }
    }
    let sus_bound = 2.0 * (n as f64).powf(eps) * lambda as f64;
    let suspicious: Vec<bool> =
        (0..n).map(|u| low_degree[u] && (sigma[u].len() as f64) > sus_bound).collect();
    BetaSigma { beta, sigma, suspicious, low_degree }
}

/// Returns the tripartition induced by a single low-degree vertex; used for
/// the degenerate exits of the per-pair solvers.
fn degenerate_cut(g: &DiGraph, bs: &BetaSigma) -> Result<Tripartition> {
    let v = (0..g.n())
        .filter(|&v| bs.low_degree[v] && g.out_degree(v) + 1 < g.n())
        .min_by_key(|&v| g.out_degree(v));
    match v {
        Some(v) => {
            let (tri, valid) = crate::graph::induced_tripartition(g, &[v])?;
            if valid {
                return Ok(tri);
            }
            fallback_cut(g).ok_or(Error::NoCut)
        }
        None => fallback_cut(g).ok_or(Error::NoCut),
    }
}

/// Best exact cut through the suspicious set: for every suspicious vertex,
/// one randomized sink selection plus exact value, then a full cut for the
/// minimizer.
fn suspicious_branch(
    g: &DiGraph,
    suspicious: &[bool],
    rng: &mut Rng,
) -> Result<Option<Tripartition>> {
    let mut best: Option<(Weight, Vertex, Vertex)> = None;
    for u in 0..g.n() {
        if !suspicious[u] {
            continue;
        }
        if let Ok((y, c)) = cut_given_left_vertex(g, u, rng) {
            if best.map_or(true, |(bc, _, _)| c < bc) {
                best = Some((c, u, y));
            }
        }
    }
    match best {
        Some((_, u, y)) => Ok(Some(min_vertex_cut(g, &[u], &[y])?)),
        None => Ok(None),
    }
}

/// Derived-graph cut from a candidate vertex set A containing x: strips y
/// and its in-neighbors, then takes a minimum x-t vertex-cut of the graph
/// derived via A and maps it back.
fn finalize_from_a(
    g: &DiGraph,
    bs: &BetaSigma,
    x: Vertex,
    y: Vertex,
    a: &[Vertex],
) -> Result<Tripartition> {
    let mut keep = vec![false; g.n()];
    for &v in a {
        keep[v] = true;
    }
    keep[y] = false;
    for u in g.in_neighbors(y) {
        keep[u] = false;
    }
    if !keep[x] {
        return degenerate_cut(g, bs);
    }
    let a: Vec<Vertex> = (0..g.n()).filter(|&v| keep[v]).collect();
    let derived = derive_via(g, &a)?;
    if derived.to_base.len() >= g.n() {
        // A with its out-neighborhood covers V; no outside vertex remains.
        return degenerate_cut(g, bs);
    }
    let x_idx = derived.from_base(x).expect("x in A");
    let cut = min_vertex_cut(&derived.graph, &[x_idx], &[derived.sink])?;
    let tri = cut_from_derived_cut(g, &derived, &cut)?;
    debug_assert!(tri.is_valid_vertex_cut(g));
    Ok(tri)
}

/// View modes over the split graph with shortcuts: the search graph of
/// Step 1 drops low-degree copies of weight <= tau, the augmentation graph
/// of Step 2 keeps everything of weight >= tau'.
#[derive(Clone, Copy, PartialEq)]
enum ViewMode {
    Search,
    Augment,
}

/// Simulated adjacency view over the modified adjacency representation:
/// vertex filters by weight and degree class, truncated out-lists for
/// shortcut-bearing vertices, special capacities rounded down to tau'
/// units, regular and shortcut capacities of Wmax in tau' units.
struct GhView<'a> {
    g: &'a DiGraph,
    ma: &'a ModifiedAdjacency,
    x: Vertex,
    y: Vertex,
    tau: Weight,
    tau_prime_log: i64,
    wm_units: Weight,
    mode: ViewMode,
    t: Vertex,
}

impl<'a> GhView<'a> {
    fn kept(&self, base: Vertex) -> bool {
        if base == self.x || base == self.y {
            return true;
        }
        let w = self.g.weight(base);
        match self.mode {
            ViewMode::Augment => ge_pow2(w, self.tau_prime_log),
            ViewMode::Search => {
                if self.ma.is_high_degree(base) {
                    ge_pow2(w, self.tau_prime_log)
                } else {
                    w > self.tau
                }
            }
        }
    }

    fn special_units(&self, base: Vertex) -> Weight {
        div_pow2(self.g.weight(base), self.tau_prime_log).unwrap_or(0)
    }

    /// Out-edges of a view vertex as (head, capacity in tau' units).
    fn out_edges(&self, u: Vertex, buf: &mut Vec<(Vertex, Weight)>) {
        buf.clear();
        if u == self.t {
            return;
        }
        let base = base_of(u);
        debug_assert!(self.kept(base));
        if self.ma.has_shortcut(u) {
            buf.push((self.t, self.wm_units));
            return;
        }
        if !is_out_copy(u) {
            let cap = self.special_units(base);
            if cap > 0 {
                buf.push((out_copy(base), cap));
            }
            return;
        }
        for head in self.ma.out_regular(u, 1, false) {
            if self.kept(base_of(head)) {
                buf.push((head, self.wm_units));
            }
        }
    }
}

/// Outcome of the promising-set computation, including the audit trail of
/// shortcut targets for planted-instance tests.
#[derive(Debug, Clone, Default)]
pub struct PromisingZ {
    pub z: Vec<Vertex>,
    /// Base vertices whose out-copies got shortcut during Step 2.
    pub shortcut_targets: Vec<Vertex>,
}

/// Step 1: bounded search in the heavy part of the split graph with
/// shortcuts and an initial tau'-integral max flow. Step 2: local
/// augmentations along residual paths of length <= 16 lambda, with a random
/// shortcut whenever the search fans out over 16 z lambda out-copies.
/// Step 3: Z collects the low-degree vertices touched by augmenting paths
/// or reached by the final search.
pub fn compute_promising_z(
    g: &DiGraph,
    ma: &mut ModifiedAdjacency,
    x: Vertex,
    y: Vertex,
    params: &SparseParams,
    wm: Weight,
    rng: &mut Rng,
) -> Result<PromisingZ> {
    let n = g.n();
    let t: Vertex = 2 * n;
    let s: Vertex = out_copy(x);
    let wm_units = div_pow2(wm, params.tau_prime_log)?;
    let d = 2.0 * g.m() as f64 / n as f64;
    let lambda = params.lambda as u128;
    let rho = params.rho;

    // ---- Step 1: bounded search over the search view.
    let search = GhView {
        g,
        ma,
        x,
        y,
        tau: params.tau,
        tau_prime_log: params.tau_prime_log,
        wm_units,
        mode: ViewMode::Search,
        t,
    };
    let budget = (8.0 * (n as f64).powf(params.eps) * d).ceil() as usize + 4;
    let mut discovered: Vec<Vertex> = vec![s];
    let mut seen: HashMap<Vertex, u32> = HashMap::new();
    seen.insert(s, 0);
    let mut edges: Vec<(Vertex, Vertex, Weight)> = Vec::new();
    let mut head_ptr = 0usize;
    let mut buf = Vec::new();
    let mut aborted = false;
    while head_ptr < discovered.len() {
        let u = discovered[head_ptr];
        head_ptr += 1;
        if u == t {
            continue;
        }
        search.out_edges(u, &mut buf);
        for &(v, cap) in &buf {
            edges.push((u, v, cap));
            if !seen.contains_key(&v) {
                seen.insert(v, discovered.len() as u32);
                discovered.push(v);
            }
            if discovered.len() + edges.len() > budget {
                aborted = true;
                break;
            }
        }
        if aborted {
            break;
        }
    }
    if aborted {
        return Ok(PromisingZ::default());
    }

    // Reachable base sets and their guards.
    let mut j_members = vec![false; n];
    for &v in &discovered {
        if v != t {
            j_members[base_of(v)] = true;
        }
    }
    let j_ld: Vec<Vertex> = (0..n).filter(|&v| j_members[v] && !ma.is_high_degree(v)).collect();
    if j_ld.len() as u128 > lambda {
        return Ok(PromisingZ::default());
    }
    let mut n_set: Vec<Vertex> = Vec::new();
    {
        let mut seen_n = vec![false; n];
        let in_jld = {
            let mut m = vec![false; n];
            for &v in &j_ld {
                m[v] = true;
            }
            m
        };
        for &u in &j_ld {
            for v in g.out_neighbors(u) {
                if !in_jld[v] && !seen_n[v] && ge_pow2(g.weight(v), params.tau_prime_log) {
                    seen_n[v] = true;
                    n_set.push(v);
                }
            }
        }
    }
    if (n_set.len() as f64) > (n as f64).powf(params.eps) * d {
        return Ok(PromisingZ::default());
    }
    let n_ld = n_set.iter().filter(|&&v| !ma.is_high_degree(v)).count() as u128;
    if n_ld > lambda + rho {
        return Ok(PromisingZ::default());
    }

    // Initial flow on the discovered subgraph.
    let mut local = CapGraph::new(discovered.len() + usize::from(!seen.contains_key(&t)));
    let t_local = seen.get(&t).map(|&i| i as usize).unwrap_or(discovered.len());
    for &(u, v, cap) in &edges {
        local.add_edge(seen[&u] as usize, seen[&v] as usize, cap);
    }
    let mut flow: HashMap<(Vertex, Vertex), Weight> = HashMap::new();
    let mut back: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
    if t_local < discovered.len() && s != t {
        let f = max_flow(&local, seen[&s] as usize, t_local);
        for e in local.edge_ids() {
            if f.values[e] > 0 {
                let (lu, lv, _) = local.edge(e);
                let (u, v) = (discovered[lu], if lv == t_local { t } else { discovered[lv] });
                *flow.entry((u, v)).or_insert(0) += f.values[e];
                back.entry(v).or_default().push(u);
            }
        }
    }

    // ---- Step 2: local augmentation over the augment view.
    let radius = 16 * params.lambda as usize;
    let z_iters = 256 * lambda * lambda * rho;
    let q2_threshold = 16 * z_iters * lambda;
    let unit_budget = 128 * lambda * lambda * rho + 1;
    // Shortest residual paths saturate an edge per batched push; beyond the
    // EK-style bound (plus one slot per possible shortcut insertion) the
    // premise of the iteration cap has already failed.
    let event_budget = 16 * lambda * (g.m() as u128 + 2 * n as u128) + z_iters + 2;
    let mut units_used: u128 = 0;
    let mut events: u128 = 0;
    let mut z_marks = vec![false; n];
    let mut shortcut_targets = Vec::new();
    let augment = |gv: &GhView, u: Vertex, buf: &mut Vec<(Vertex, Weight)>| {
        gv.out_edges(u, buf);
    };

    #[derive(Clone, Copy)]
    struct ParentRec {
        prev: u32,
        forward: bool,
        res: Weight,
    }

    let final_discovered: Vec<Vertex>;
    loop {
        let view = GhView {
            g,
            ma,
            x,
            y,
            tau: params.tau,
            tau_prime_log: params.tau_prime_log,
            wm_units,
            mode: ViewMode::Augment,
            t,
        };
        // Level-bounded BFS in the residual network.
        let mut parent: HashMap<Vertex, ParentRec> = HashMap::new();
        parent.insert(s, ParentRec { prev: u32::MAX, forward: true, res: 0 });
        let mut frontier = vec![s];
        let mut bfs_order = vec![s];
        let mut out_copies: Vec<Vertex> = if is_out_copy(s) { vec![s] } else { vec![] };
        let mut outcome: Option<u8> = None; // 1 = reached t, 2 = fan-out
        let mut depth = 0usize;
        'bfs: while !frontier.is_empty() && depth < radius {
            depth += 1;
            let mut next = Vec::new();
            for &u in &frontier {
                // Forward residual edges.
                augment(&view, u, &mut buf);
                let push_edge = |v: Vertex,
                                     res: Weight,
                                     forward: bool,
                                     parent: &mut HashMap<Vertex, ParentRec>,
                                     next: &mut Vec<Vertex>,
                                     bfs_order: &mut Vec<Vertex>,
                                     out_copies: &mut Vec<Vertex>|
                 -> Option<u8> {
                    if res == 0 || parent.contains_key(&v) {
                        return None;
                    }
                    parent.insert(v, ParentRec { prev: u as u32, forward, res });
                    next.push(v);
                    bfs_order.push(v);
                    if v == t {
                        return Some(1);
                    }
                    if v != t && is_out_copy(v) {
                        out_copies.push(v);
                        if (out_copies.len() as u128) >= q2_threshold {
                            return Some(2);
                        }
                    }
                    None
                };
                let fwd_edges: Vec<(Vertex, Weight)> = buf.clone();
                for (v, cap) in fwd_edges {
                    let used = flow.get(&(u, v)).copied().unwrap_or(0);
                    if let Some(o) = push_edge(
                        v,
                        cap.saturating_sub(used),
                        true,
                        &mut parent,
                        &mut next,
                        &mut bfs_order,
                        &mut out_copies,
                    ) {
                        outcome = Some(o);
                        break 'bfs;
                    }
                }
                // Backward residual edges.
                if let Some(srcs) = back.get(&u) {
                    let srcs = srcs.clone();
                    for w in srcs {
                        let f = flow.get(&(w, u)).copied().unwrap_or(0);
                        if let Some(o) = push_edge(
                            w,
                            f,
                            false,
                            &mut parent,
                            &mut next,
                            &mut bfs_order,
                            &mut out_copies,
                        ) {
                            outcome = Some(o);
                            break 'bfs;
                        }
                    }
                }
            }
            frontier = next;
        }

        match outcome {
            Some(1) | Some(2) => {
                // Reconstruct the path to t (directly, or via a random
                // fanned-out out-copy that gets a shortcut first).
                let target = if outcome == Some(1) {
                    t
                } else {
                    let pick = out_copies[rng.gen_range(0..out_copies.len())];
                    ma.add_shortcut(pick);
                    shortcut_targets.push(base_of(pick));
                    pick
                };
                let mut path: Vec<(Vertex, Vertex, bool, Weight)> = Vec::new();
                let mut v = target;
                while v != s {
                    let rec = parent[&v];
                    let u = rec.prev as usize;
                    path.push((u, v, rec.forward, rec.res));
                    v = u;
                }
                let mut bottleneck = Weight::MAX;
                for &(_, _, _, res) in &path {
                    bottleneck = bottleneck.min(res);
                }
                if outcome == Some(2) {
                    // The fresh shortcut edge continues the path to t.
                    path.push((target, t, true, wm_units));
                }
                debug_assert!(bottleneck > 0);
                let push = bottleneck.min((unit_budget - units_used) as Weight);
                for &(u, v, forward, _) in &path {
                    if forward {
                        let e = flow.entry((u, v)).or_insert(0);
                        if *e == 0 {
                            back.entry(v).or_default().push(u);
                        }
                        *e += push;
                    } else {
                        let e = flow.get_mut(&(v, u)).expect("backward edge has flow");
                        *e -= push;
                    }
                    if u != t {
                        z_marks[base_of(u)] = true;
                    }
                    if v != t {
                        z_marks[base_of(v)] = true;
                    }
                }
                units_used += push as u128;
                events += 1;
                if units_used >= unit_budget || events > event_budget {
                    return Ok(PromisingZ::default());
                }
            }
            _ => {
                // Exhausted the radius: Step 2 is done.
                final_discovered = bfs_order;
                break;
            }
        }
    }

    // ---- Step 3: assemble Z.
    for &v in &final_discovered {
        if v != t && is_out_copy(v) {
            z_marks[base_of(v)] = true;
        }
    }
    let z: Vec<Vertex> = (0..n).filter(|&v| z_marks[v] && !ma.is_high_degree(v)).collect();
    Ok(PromisingZ { z, shortcut_targets })
}

/// Builds the candidate set A from a promising set Z by sigma-expansion of
/// the low-degree non-suspicious in-neighbors of Z.
fn a_from_z(g: &DiGraph, bs: &BetaSigma, x: Vertex, z: &[Vertex]) -> Option<Vec<Vertex>> {
    if z.iter().any(|&v| !bs.low_degree[v]) {
        return None; // a promising set has low-degree members only
    }
    let mut in_a = vec![false; g.n()];
    in_a[x] = true;
    for &v in z {
        for u in g.in_neighbors(v) {
            if bs.low_degree[u] && !bs.suspicious[u] {
                for &w in &bs.sigma[u] {
                    if bs.low_degree[w] {
                        in_a[w] = true;
                    }
                }
            }
        }
    }
    Some((0..g.n()).filter(|&v| in_a[v]).collect())
}

/// Bounded low-degree DFS used by the tau = 1 subcase: the reachable set
/// from x through low-degree vertices, or None once it exceeds lambda
/// vertices.
fn bounded_low_degree_dfs(
    g: &DiGraph,
    bs: &BetaSigma,
    x: Vertex,
    lambda: u64,
) -> Option<Vec<Vertex>> {
    let mut seen = vec![false; g.n()];
    seen[x] = true;
    let mut stack = vec![x];
    let mut found = vec![x];
    while let Some(u) = stack.pop() {
        for v in g.out_neighbors(u) {
            if !seen[v] && bs.low_degree[v] {
                seen[v] = true;
                found.push(v);
                stack.push(v);
                if found.len() > lambda as usize {
                    return None;
                }
            }
        }
    }
    Some(found)
}

/// Case 1 (small local separator). A random bit selects the suspicious
/// branch; otherwise every pair gets a promising set Z via local flow
/// augmentation and a derived-graph cut from the sigma-expansion of Z.
pub fn case1(
    g: &DiGraph,
    pairs: &[(Vertex, Vertex)],
    params: &SparseParams,
    rng: &mut Rng,
) -> Result<Tripartition> {
    let bs = build_beta_sigma(g, params.eps, params.lambda, BetaThreshold::AtLeastPow2(params.tau_hat_log));
    if rng.gen_bool(0.5) {
        if let Some(cut) = suspicious_branch(g, &bs.suspicious, rng)? {
            return Ok(cut);
        }
        return degenerate_cut(g, &bs);
    }
    let (_, wm) = w_max_params(g)?;
    let sg: SplitGraph = build_split(g)?;
    let dthr = degree_threshold(g, params.eps);
    let b_init: Vec<Vertex> =
        (0..g.n()).filter(|&v| g.degree(v) as f64 >= dthr).map(out_copy).collect();
    let mut ma = ModifiedAdjacency::new(g, &sg, dthr, &b_init);

    let mut best: Option<Tripartition> = None;
    for &(x, y) in pairs {
        let mark = ma.shortcut_mark();
        ma.add_shortcut(in_copy(y));
        let cut = case1_pair(g, &mut ma, &bs, x, y, params, wm, rng)?;
        ma.undo_shortcuts(mark);
        if best.as_ref().map_or(true, |b| cut.value(g) < b.value(g)) {
            best = Some(cut);
        }
    }
    match best {
        Some(cut) => Ok(cut),
        None => degenerate_cut(g, &bs),
    }
}

fn case1_pair(
    g: &DiGraph,
    ma: &mut ModifiedAdjacency,
    bs: &BetaSigma,
    x: Vertex,
    y: Vertex,
    params: &SparseParams,
    wm: Weight,
    rng: &mut Rng,
) -> Result<Tripartition> {
    if !bs.low_degree[x] {
        return degenerate_cut(g, bs);
    }
    if params.tau == 1 {
        if let Some(a) = bounded_low_degree_dfs(g, bs, x, params.lambda) {
            return finalize_from_a(g, bs, x, y, &a);
        }
    }
    let pz = compute_promising_z(g, ma, x, y, params, wm, rng)?;
    match a_from_z(g, bs, x, &pz.z) {
        Some(a) => finalize_from_a(g, bs, x, y, &a),
        None => degenerate_cut(g, bs),
    }
}

/// Case 2 (large local separator): strict-threshold beta sets, bad set B,
/// and per pair the union of sampled J(x) neighborhoods with their
/// sigma-expansions.
pub fn case2(
    g: &DiGraph,
    pairs: &[(Vertex, Vertex)],
    params: &SparseParams,
    rng: &mut Rng,
) -> Result<Tripartition> {
    let bs = build_beta_sigma(g, params.eps, params.lambda, BetaThreshold::Above(params.tau));
    if rng.gen_bool(0.5) {
        if let Some(cut) = suspicious_branch(g, &bs.suspicious, rng)? {
            return Ok(cut);
        }
        return degenerate_cut(g, &bs);
    }
    let bad: Vec<bool> = (0..g.n())
        .map(|v| {
            bs.beta[v].len() as u64 > params.lambda
                || bs.beta[v].iter().any(|&u| bs.suspicious[u])
        })
        .collect();
    let mut best: Option<Tripartition> = None;
    for &(x, y) in pairs {
        let cut = case2_pair(g, &bs, &bad, x, y, params, rng)?;
        if best.as_ref().map_or(true, |b| cut.value(g) < b.value(g)) {
            best = Some(cut);
        }
    }
    match best {
        Some(cut) => Ok(cut),
        None => degenerate_cut(g, &bs),
    }
}

/// J(v): low-degree out-neighbors of beta(v) with weight at least tau'.
pub(crate) fn j_set(g: &DiGraph, bs: &BetaSigma, params: &SparseParams, v: Vertex) -> Vec<Vertex> {
    let mut marks = vec![false; g.n()];
    for &u in &bs.beta[v] {
        for z in g.out_neighbors(u) {
            if bs.low_degree[z] && ge_pow2(g.weight(z), params.tau_prime_log) {
                marks[z] = true;
            }
        }
    }
    (0..g.n()).filter(|&z| marks[z]).collect()
}

fn case2_pair(
    g: &DiGraph,
    bs: &BetaSigma,
    bad: &[bool],
    x: Vertex,
    y: Vertex,
    params: &SparseParams,
    rng: &mut Rng,
) -> Result<Tripartition> {
    if bad[x] || !bs.low_degree[x] {
        return degenerate_cut(g, bs);
    }
    let j = j_set(g, bs, params, x);
    if j.is_empty() {
        return degenerate_cut(g, bs);
    }
    let q = 64 * crate::sampling::log2_ceil(g.n()) as usize;
    let mut in_a = vec![false; g.n()];
    in_a[x] = true;
    for _ in 0..q {
        let v = j[rng.gen_range(0..j.len())];
        for u in g.in_neighbors(v) {
            in_a[u] = true;
            if bs.low_degree[u]
                && !bs.suspicious[u]
                && ge_pow2(g.weight(u), params.tau_prime_log)
            {
                for &w in &bs.sigma[u] {
                    in_a[w] = true;
                }
            }
        }
    }
    // Strip high-degree members; x is low-degree by the guard above.
    let a: Vec<Vertex> = (0..g.n()).filter(|&v| in_a[v] && bs.low_degree[v]).collect();
    let d = 2.0 * g.m() as f64 / g.n() as f64;
    debug_assert!(
        (a.len() as f64)
            <= 512.0
                * d
                * (g.n() as f64).powf(2.0 * params.eps)
                * params.lambda as f64
                * (g.n() as f64).log2()
                + 1.0,
        "candidate set larger than the size bound"
    );
    finalize_from_a(g, bs, x, y, &a)
}

/// Weighted non-dense solver: the easy-special-case solver once, then
/// amplified rounds of pair selection plus the Case 1 / Case 2 pipelines on
/// alternating orientations, best cut overall.
pub fn solve_sparse(g: &DiGraph, cfg: &SparseConfig, rng: &mut Rng) -> Result<Tripartition> {
    assert!(g.weights().iter().all(|&w| w >= 1), "weights must be lifted to >= 1");
    if g.n() < 2 {
        return Err(Error::NoCut);
    }
    fallback_cut(g).ok_or(Error::NoCut)?;
    let eps = cfg.eps.unwrap_or_else(|| default_eps(g));
    let (_, wm) = w_max_params(g)?;
    let repeats = cfg.repeats.unwrap_or_else(|| {
        let ln = (g.n() as f64).log2();
        let lw = (wm as f64).log2();
        ((ln * lw / 8.0).ceil() as usize).clamp(4, 512)
    });

    let mut best = alg_special(g, eps, rng)?;
    let reversed = g.reversed();
    for rep in 0..repeats {
        let (graph, flip) = if rep % 2 == 0 { (g, false) } else { (&reversed, true) };
        let sel = select_pairs_sparse(graph, eps, rng, cfg.pair_trial_factor)?;
        let params = SparseParams::new(eps, sel.lambda, sel.tau.expect("sparse selection sets tau"));
        for cut in [
            case1(graph, &sel.pairs, &params, rng)?,
            case2(graph, &sel.pairs, &params, rng)?,
        ] {
            let cut = if flip { cut.reversed() } else { cut };
            debug_assert!(cut.is_valid_vertex_cut(g));
            if cut.value(g) < best.value(g) {
                best = cut;
            }
        }
    }
    Ok(best)
}
