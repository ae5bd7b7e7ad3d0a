//! Global minimum vertex-cut for unweighted directed graphs: the inner
//! algorithm with a guessed cut size (terminal batches processed along a
//! hierarchical partition) and the outer driver over guesses.

use rand::Rng as _;

use crate::flow::min_vertex_cut;
use crate::graph::{
    check_strong_connectivity_or_trivial_cut, cut_from_derived_cut, derive_via, fallback_cut,
    induced_tripartition, DiGraph, Tripartition,
};
use crate::reference::exact_global_min_vertex_cut;
use crate::sampling::{log2_ceil, Rng};
use crate::{Error, Result, Vertex, Weight};

/// Hierarchical partition of the terminals: level 0 is the whole set, every
/// level refines the previous one, every last-level batch is a singleton.
#[derive(Debug, Clone)]
pub struct BatchHierarchy {
    /// levels[i] lists the level-i batches.
    pub levels: Vec<Vec<Vec<Vertex>>>,
    /// parents[i][b] is the index of the level-(i-1) batch containing
    /// levels[i][b]; parents[0] is empty.
    pub parents: Vec<Vec<usize>>,
    /// Largest batch size per level.
    pub eta: Vec<usize>,
}

impl BatchHierarchy {
    pub fn new(terminals: &[Vertex]) -> Self {
        assert!(!terminals.is_empty());
        let mut levels = vec![vec![terminals.to_vec()]];
        let mut parents = vec![Vec::new()];
        let mut eta = vec![terminals.len()];
        while *eta.last().unwrap() > 1 {
            let prev = levels.last().unwrap();
            let eta_prev = *eta.last().unwrap();
            let mut level = Vec::new();
            let mut parent = Vec::new();
            for (pi, batch) in prev.iter().enumerate() {
                if batch.len() == 1 || 2 * batch.len() <= eta_prev {
                    level.push(batch.clone());
                    parent.push(pi);
                } else {
                    let mid = batch.len().div_ceil(2);
                    level.push(batch[..mid].to_vec());
                    parent.push(pi);
                    level.push(batch[mid..].to_vec());
                    parent.push(pi);
                }
            }
            let eta_new = level.iter().map(Vec::len).max().unwrap();
            levels.push(level);
            parents.push(parent);
            eta.push(eta_new);
        }
        BatchHierarchy { levels, parents, eta }
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }
}

/// Processes one batch of terminals: on the derived graph of the parent's
/// vertex set, attaches a weight-2k pseudoterminal per batch terminal, takes
/// a minimum s-t vertex-cut, and grows the child's vertex set from the
/// terminals that stayed on the source side. Returns None ("FAIL") when the
/// batch provably cannot host the distinguished cut.
pub fn process_batch(
    g: &DiGraph,
    k_hat: u64,
    parent_a: &[Vertex],
    child: &[Vertex],
    eta_i: usize,
    volume_bound: f64,
    t_blocked: &[bool],
) -> Result<Option<Vec<Vertex>>> {
    let in_parent = {
        let mut m = vec![false; g.n()];
        for &v in parent_a {
            m[v] = true;
        }
        m
    };
    let t_hat: Vec<Vertex> = child.iter().copied().filter(|&v| in_parent[v]).collect();
    if t_hat.is_empty() {
        return Ok(None);
    }
    let derived = derive_via(g, parent_a)?;
    let dg = &derived.graph;

    // Graph H: derived graph plus one pseudoterminal per batch terminal and
    // a source wired to all pseudoterminals.
    let base_n = dg.n();
    let s = base_n + t_hat.len();
    let mut weights: Vec<Weight> = vec![1; base_n];
    weights.extend(std::iter::repeat(2 * k_hat as Weight).take(t_hat.len()));
    weights.push(1); // source
    let mut edges: Vec<(Vertex, Vertex)> = dg.edges().collect();
    for (idx, &v) in t_hat.iter().enumerate() {
        let pseudo = base_n + idx;
        for u in g.out_neighbors(v) {
            let ui = derived.from_base(u).expect("out-neighbors of A lie in the derived graph");
            edges.push((pseudo, ui));
        }
        edges.push((s, pseudo));
    }
    let h = DiGraph::new(s + 1, weights, &edges)?;
    let mut cut = min_vertex_cut(&h, &[s], &[derived.sink])?;

    // Normalization: whenever a pseudoterminal sits in L, pull its terminal
    // into L as well.
    let mut side = vec![2u8; h.n()];
    for &v in &cut.left {
        side[v] = 0;
    }
    for &v in &cut.sep {
        side[v] = 1;
    }
    let mut changed = false;
    for (idx, &v) in t_hat.iter().enumerate() {
        let pseudo = base_n + idx;
        let vd = derived.from_base(v).expect("terminal lies in parent set");
        if side[pseudo] == 0 && side[vd] != 0 {
            side[vd] = 0;
            changed = true;
        }
    }
    if changed {
        cut = Tripartition::from_sides(&side);
    }

    // Projection onto the derived graph.
    let mut proj_side = vec![2u8; base_n];
    for &v in &cut.left {
        if v < base_n {
            proj_side[v] = 0;
        }
    }
    for &v in &cut.sep {
        if v < base_n {
            proj_side[v] = 1;
        }
    }
    let projected = Tripartition::from_sides(&proj_side);
    let b_hat: Vec<Vertex> = t_hat
        .iter()
        .copied()
        .filter(|&v| proj_side[derived.from_base(v).unwrap()] == 0)
        .collect();
    if b_hat.is_empty() {
        return Ok(None);
    }
    let separates = projected.is_valid_vertex_cut(dg) && proj_side[derived.sink] == 2;
    if !separates {
        return Ok(None);
    }
    if projected.sep.len() as u64 > 3 * k_hat * eta_i as u64 {
        return Ok(None);
    }

    // Child vertex set: everything reachable from the surviving terminals
    // in the derived graph minus the separator.
    let mut blocked = vec![false; base_n];
    for &v in &projected.sep {
        blocked[v] = true;
    }
    let mut seen = vec![false; base_n];
    let mut stack: Vec<Vertex> = Vec::new();
    for &v in &b_hat {
        let vd = derived.from_base(v).unwrap();
        if !seen[vd] {
            seen[vd] = true;
            stack.push(vd);
        }
    }
    while let Some(v) = stack.pop() {
        for u in dg.out_neighbors(v) {
            if !seen[u] && !blocked[u] && u != derived.sink {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    let child_a: Vec<Vertex> = (0..base_n)
        .filter(|&v| seen[v] && v != derived.sink)
        .map(|v| derived.to_base[v])
        .collect();
    debug_assert!(child_a.iter().all(|&v| !t_blocked[v]), "child set must avoid T''");
    if (g.out_volume(&child_a) as f64) > volume_bound {
        return Ok(None);
    }
    Ok(Some(child_a))
}

/// One pass of the inner algorithm on a fixed orientation.
fn single_shot(g: &DiGraph, k_hat: u64, rng: &mut Rng) -> Result<Tripartition> {
    let n = g.n();
    let m = g.m();
    let fallback = fallback_cut(g).ok_or(Error::NoCut)?;
    if m == 0 {
        return Ok(fallback);
    }
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let degree_proportional = |rng: &mut Rng| edges[rng.gen_range(0..edges.len())].0;

    let j = rng.gen_range(1..=log2_ceil(m));
    let r = 1usize << j; // = ceil(m / lambda) for lambda = m / 2^j
    let t_star = rng.gen_range(0..n);

    if rng.gen_bool(0.5) {
        // High out-volume branch: one exact cut from a degree-proportional
        // source.
        let s_star = degree_proportional(rng);
        if s_star != t_star && !g.has_edge(s_star, t_star) {
            return min_vertex_cut(g, &[s_star], &[t_star]);
        }
        return Ok(fallback);
    }

    // Terminals and anti-terminals.
    let mut t0 = vec![false; n];
    let mut t_anti = vec![false; n];
    for _ in 0..r.min(8 * m) {
        t0[degree_proportional(rng)] = true;
    }
    for _ in 0..r.min(8 * m) {
        t_anti[degree_proportional(rng)] = true;
    }
    let mut t_blocked = t_anti.clone();
    t_blocked[t_star] = true;
    for u in g.in_neighbors(t_star) {
        t_blocked[u] = true;
    }
    let terminals: Vec<Vertex> = (0..n).filter(|&v| t0[v] && !t_blocked[v]).collect();
    if terminals.is_empty() {
        return Ok(fallback);
    }

    let hierarchy = BatchHierarchy::new(&terminals);
    let z = hierarchy.depth();
    let log_n = (n as f64).log2();
    let root_a: Vec<Vertex> = (0..n).filter(|&v| !t_blocked[v]).collect();
    let mut active: Vec<Option<Vec<Vertex>>> = vec![Some(root_a)];
    for i in 1..=z {
        let n_i = hierarchy.levels[i].len();
        let bound = 1000.0 * k_hat as f64 * m as f64 * log_n / n_i as f64;
        let mut next: Vec<Option<Vec<Vertex>>> = Vec::with_capacity(n_i);
        for (bi, child) in hierarchy.levels[i].iter().enumerate() {
            let parent = hierarchy.parents[i][bi];
            let Some(parent_a) = &active[parent] else {
                next.push(None);
                continue;
            };
            next.push(process_batch(
                g,
                k_hat,
                parent_a,
                child,
                hierarchy.eta[i],
                bound,
                &t_blocked,
            )?);
        }
        active = next;
    }

    // Last level: exact terminal-to-sink cut on each surviving batch.
    let mut best: Option<(Weight, Tripartition)> = None;
    for (bi, batch) in hierarchy.levels[z].iter().enumerate() {
        let Some(a) = &active[bi] else { continue };
        debug_assert_eq!(batch.len(), 1);
        let s_b = batch[0];
        let derived = derive_via(g, a)?;
        let Some(s_idx) = derived.from_base(s_b) else { continue };
        if derived.graph.has_edge(s_idx, derived.sink) {
            continue;
        }
        let cut = min_vertex_cut(&derived.graph, &[s_idx], &[derived.sink])?;
        let value = cut.sep.len() as Weight;
        let translated = cut_from_derived_cut(g, &derived, &cut)?;
        if best.as_ref().map_or(true, |(bv, _)| value < *bv) {
            best = Some((value, translated));
        }
    }
    match best {
        Some((_, tri)) => {
            let (induced, valid) = induced_tripartition(g, &tri.left)?;
            debug_assert!(valid, "t* outside A ∪ N+(A) keeps the induced cut valid");
            Ok(if valid { induced } else { fallback })
        }
        None => Ok(fallback),
    }
}

/// Inner solver with a guessed cut size. Runs the single-shot pipeline
/// ceil(8 log^2 n) times, alternating edge orientations, and keeps the best
/// cut. With k_hat/2 < k <= k_hat the result is optimal with probability at
/// least 1 - 1/n.
pub fn inner_unweighted(g: &DiGraph, k_hat: u64, rng: &mut Rng) -> Result<Tripartition> {
    let n = g.n();
    if k_hat == 0 || k_hat > n as u64 {
        return Err(Error::KhatRange);
    }
    if fallback_cut(g).is_none() {
        return Err(Error::NoCut);
    }
    let reps = (8.0 * (n as f64).log2().powi(2)).ceil() as usize;
    let reversed = g.reversed();
    let mut best: Option<Tripartition> = None;
    for rep in 0..reps.max(1) {
        let (graph, flip) = if rep % 2 == 0 { (g, false) } else { (&reversed, true) };
        let cut = single_shot(graph, k_hat, rng)?;
        let cut = if flip { cut.reversed() } else { cut };
        debug_assert!(cut.is_valid_vertex_cut(g));
        if best.as_ref().map_or(true, |b| cut.sep.len() < b.sep.len()) {
            best = Some(cut);
        }
        if best.as_ref().is_some_and(|b| b.sep.is_empty()) {
            break;
        }
    }
    Ok(best.expect("at least one repetition"))
}

/// Driver: guesses k_hat = 2^i for i = 0..floor(log(n/1000)) ascending with
/// early stop (accept when the returned value fits the guess); falls back to
/// the exact reference when every guess fails or n < 1000.
pub fn global_min_vertex_cut_unweighted(g: &DiGraph, rng: &mut Rng) -> Result<Tripartition> {
    if g.n() < 2 {
        return Err(Error::NoCut);
    }
    if let Some(cut) = check_strong_connectivity_or_trivial_cut(g) {
        return Ok(cut);
    }
    let n = g.n();
    let m = g.m();
    let mut candidates: Vec<Tripartition> = Vec::new();
    if n >= 1000 {
        let max_i = (n as f64 / 1000.0).log2().floor() as u32;
        for i in 0..=max_i {
            let k_hat = 1u64 << i;
            let cut = inner_unweighted(g, k_hat, rng)?;
            let accept = cut.sep.len() as u64 <= k_hat;
            candidates.push(cut);
            if accept {
                if (k_hat as u128) * (m as u128) < (n as u128) * (n as u128) {
                    return Ok(candidates.pop().unwrap());
                }
                break;
            }
        }
    }
    let exact = exact_global_min_vertex_cut(g)?;
    candidates.push(exact.witness);
    Ok(candidates
        .into_iter()
        .min_by_key(|c| c.sep.len())
        .expect("at least the exact fallback"))
}
