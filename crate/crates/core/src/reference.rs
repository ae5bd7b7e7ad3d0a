//! Ground-truth computations used by tests and as the substituted solver
//! fallback: exact global minimum vertex-cut, exhaustive tripartition
//! enumeration, exhaustive s-t separator search.

use crate::flow::min_vertex_cut;
use crate::graph::{check_strong_connectivity_or_trivial_cut, DiGraph, Tripartition};
use crate::{Error, Result, Vertex, Weight};

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub value: Weight,
    pub witness: Tripartition,
}

/// Exact global minimum vertex-cut via minimum s-t vertex-cuts. For general
/// weights this runs over all ordered non-adjacent pairs (O(n^2) flow
/// calls). For uniform weights it uses the pivot argument instead: with any
/// k+1 fixed pivots, where k bounds the optimal separator cardinality, some
/// pivot avoids the optimal separator, so scanning min cuts from and into
/// each pivot is exact.
pub fn exact_global_min_vertex_cut(g: &DiGraph) -> Result<OracleResult> {
    if g.n() < 2 {
        return Err(Error::NoCut);
    }
    if let Some(cut) = check_strong_connectivity_or_trivial_cut(g) {
        return Ok(OracleResult { value: 0, witness: cut });
    }
    if (0..g.n()).all(|v| g.out_degree(v) == g.n() - 1) {
        return Err(Error::NoCut);
    }
    let uniform = g.weights().windows(2).all(|w| w[0] == w[1]);
    if uniform {
        exact_uniform_pivoted(g)
    } else {
        exact_all_pairs(g)
    }
}

fn exact_all_pairs(g: &DiGraph) -> Result<OracleResult> {
    let mut best: Option<OracleResult> = None;
    for s in 0..g.n() {
        for t in 0..g.n() {
            if s == t || g.has_edge(s, t) {
                continue;
            }
            let cut = min_vertex_cut(g, &[s], &[t])?;
            let value = cut.value(g);
            if best.as_ref().map_or(true, |b| value < b.value) {
                best = Some(OracleResult { value, witness: cut });
            }
        }
    }
    best.ok_or(Error::NoCut)
}

fn exact_uniform_pivoted(g: &DiGraph) -> Result<OracleResult> {
    let unit = g.weight(0).max(1);
    // Upper bound on the separator cardinality: the smallest induced cut.
    let v0 = (0..g.n())
        .filter(|&v| g.out_degree(v) + 1 < g.n())
        .min_by_key(|&v| g.out_degree(v))
        .ok_or(Error::NoCut)?;
    let k0 = g.out_degree(v0);
    let pivots: Vec<Vertex> = {
        // k0 + 1 lowest-total-degree vertices.
        let mut order: Vec<Vertex> = (0..g.n()).collect();
        order.sort_by_key(|&v| g.degree(v));
        order.truncate(k0 + 1);
        order
    };
    let mut best: Option<OracleResult> = None;
    let consider = |cut: Tripartition, best: &mut Option<OracleResult>| {
        let value = cut.value(g);
        if best.as_ref().map_or(true, |b| value < b.value) {
            *best = Some(OracleResult { value, witness: cut });
        }
    };
    for &w in &pivots {
        for t in 0..g.n() {
            if t != w && !g.has_edge(w, t) {
                consider(min_vertex_cut(g, &[w], &[t])?, &mut best);
            }
            if t != w && !g.has_edge(t, w) {
                consider(min_vertex_cut(g, &[t], &[w])?, &mut best);
            }
            // Early exit: a unit-weight cut cannot beat value 1 here
            // (strong connectivity rules out value 0).
            if best.as_ref().is_some_and(|b| b.value <= unit) {
                return Ok(best.unwrap());
            }
        }
    }
    best.ok_or(Error::NoCut)
}

/// Every valid vertex-cut of the graph, exactly once, with its value.
/// Guarded at n <= 14.
pub fn enumerate_all_tripartitions(g: &DiGraph) -> Result<Vec<(Tripartition, Weight)>> {
    let n = g.n();
    if n > 14 {
        return Err(Error::EnumerationTooLarge);
    }
    let mut res = Vec::new();
    let mut sides = vec![0u8; n];
    loop {
        let t = Tripartition::from_sides(&sides);
        if t.is_valid_vertex_cut(g) {
            let value = t.value(g);
            res.push((t, value));
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(res);
            }
            sides[i] += 1;
            if sides[i] == 3 {
                sides[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

/// Minimum weight over subsets S of V \ {s, t} whose removal destroys every
/// s-t path. Guarded at n <= 20; requires (s, t) not an edge.
pub fn exhaustive_min_st_separator(g: &DiGraph, s: Vertex, t: Vertex) -> Result<Weight> {
    let n = g.n();
    if n > 20 {
        return Err(Error::EnumerationTooLarge);
    }
    if s == t || g.has_edge(s, t) {
        return Err(Error::AdjacentTerminals);
    }
    let others: Vec<Vertex> = (0..n).filter(|&v| v != s && v != t).collect();
    let mut best: Option<Weight> = None;
    for mask in 0u32..(1 << others.len()) {
        let mut removed = vec![false; n];
        let mut weight: Weight = 0;
        for (i, &v) in others.iter().enumerate() {
            if mask >> i & 1 == 1 {
                removed[v] = true;
                weight += g.weight(v);
            }
        }
        if best.is_some_and(|b| weight >= b) {
            continue;
        }
        // Is t reachable from s avoiding removed vertices?
        let mut seen = vec![false; n];
        let mut stack = vec![s];
        seen[s] = true;
        let mut reached = false;
        while let Some(v) = stack.pop() {
            if v == t {
                reached = true;
                break;
            }
            for u in g.out_neighbors(v) {
                if !seen[u] && !removed[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        if !reached {
            best = Some(weight);
        }
    }
    best.ok_or(Error::NoCut)
}
