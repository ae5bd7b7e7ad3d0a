//! The h-distancing flow algorithm (phase-structured blocking flow over
//! layered graphs with cleanup queues) and the local flow routine built on
//! top of it.

use std::collections::VecDeque;

use crate::flow::{CapGraph, Flow};
use crate::{Error, Result, Vertex, Weight};

/// Flow whose residual network has no s-t path shorter than h edges.
#[derive(Debug, Clone)]
pub struct DistancingFlowResult {
    pub flow: Flow,
}

/// Result of the local flow routine: a flow on the augmented graph and a
/// low-out-volume vertex set around the source.
#[derive(Debug, Clone)]
pub struct LocalFlowResult {
    /// Flow on [`Self::ghat`] (the input graph plus sink shortcuts).
    pub flow: Flow,
    /// The augmented graph the flow lives on.
    pub ghat: CapGraph,
    /// Vertex set with s inside, t outside, and Vol+_G(A) <= delta.
    pub a: Vec<Vertex>,
}

/// Shortest residual s-t distance (in edges), or usize::MAX.
fn residual_distance(
    res: &[Weight],
    head: &[u32],
    arcs: &[u32],
    to: &[u32],
    s: Vertex,
    t: Vertex,
) -> usize {
    let n = head.len() - 1;
    let mut dist = vec![usize::MAX; n];
    dist[s] = 0;
    let mut q = VecDeque::new();
    q.push_back(s);
    while let Some(v) = q.pop_front() {
        if v == t {
            return dist[t];
        }
        for i in head[v]..head[v + 1] {
            let a = arcs[i as usize] as usize;
            let u = to[a] as usize;
            if res[a] > 0 && dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                q.push_back(u);
            }
        }
    }
    dist[t]
}

/// Computes an h-distancing s-t flow: h phases; phase j builds the layered
/// DAG of BFS levels L_0..L_j of the residual network (edges only between
/// consecutive levels, with L_j = {t}), repeatedly extracts length-j
/// augmenting paths, pushes the path bottleneck, deletes saturated edges and
/// cleans up vertices whose out-degree dropped to zero. The output flow is
/// zero on every edge leaving t.
pub fn h_distancing_flow(
    g: &CapGraph,
    s: Vertex,
    t: Vertex,
    h: usize,
) -> Result<DistancingFlowResult> {
    assert_ne!(s, t);
    assert!(h >= 1);
    if g.out_edges(s).any(|e| g.edge(e).1 == t) {
        return Err(Error::AdjacentSourceSink);
    }
    let n = g.n();
    let m = g.edge_count();

    // Residual arena, arc 2e forward / 2e+1 backward, CSR by tail.
    let mut deg = vec![0u32; n];
    for e in g.edge_ids() {
        let (u, v, _) = g.edge(e);
        deg[u] += 1;
        deg[v] += 1;
    }
    let mut head = vec![0u32; n + 1];
    for v in 0..n {
        head[v + 1] = head[v] + deg[v];
    }
    let mut pos = head.clone();
    let mut arcs = vec![0u32; 2 * m];
    let mut to = vec![0u32; 2 * m];
    let mut res: Vec<Weight> = vec![0; 2 * m];
    for e in g.edge_ids() {
        let (u, v, c) = g.edge(e);
        arcs[pos[u] as usize] = (2 * e) as u32;
        pos[u] += 1;
        to[2 * e] = v as u32;
        res[2 * e] = c;
        arcs[pos[v] as usize] = (2 * e + 1) as u32;
        pos[v] += 1;
        to[2 * e + 1] = u as u32;
    }

    let mut dist = vec![usize::MAX; n];
    let mut value: Weight = 0;
    for phase in 1..=h {
        // BFS levels in the residual network, stopping at depth `phase`.
        dist.fill(usize::MAX);
        dist[s] = 0;
        let mut q = VecDeque::new();
        q.push_back(s);
        while let Some(v) = q.pop_front() {
            if dist[v] >= phase {
                break;
            }
            for i in head[v]..head[v + 1] {
                let a = arcs[i as usize] as usize;
                let u = to[a] as usize;
                if res[a] > 0 && dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    q.push_back(u);
                }
            }
        }
        debug_assert!(dist[t] >= phase, "shortest residual distance decreased");
        if dist[t] != phase {
            continue; // nothing of length exactly `phase` to augment
        }

        // Layered graph over vertices of dist < phase, plus t.
        let mut nodes: Vec<Vertex> = (0..n).filter(|&v| dist[v] < phase && v != t).collect();
        nodes.push(t);
        let mut local = vec![u32::MAX; n];
        for (i, &v) in nodes.iter().enumerate() {
            local[v] = i as u32;
        }
        let t_loc = (nodes.len() - 1) as u32;
        let mut out_list: Vec<Vec<u32>> = vec![Vec::new(); nodes.len()];
        let mut in_list: Vec<Vec<(u32, u32)>> = vec![Vec::new(); nodes.len()]; // (tail, arc)
        for (li, &v) in nodes.iter().enumerate() {
            if v == t {
                continue;
            }
            let dv = dist[v];
            for i in head[v]..head[v + 1] {
                let a = arcs[i as usize] as usize;
                if res[a] == 0 {
                    continue;
                }
                let u = to[a] as usize;
                let qualifies = if u == t {
                    dv + 1 == phase
                } else {
                    dist[u] == dv + 1 && dist[u] < phase
                };
                if qualifies {
                    out_list[li].push(a as u32);
                    in_list[local[u] as usize].push((li as u32, a as u32));
                }
            }
        }

        let mut outdeg: Vec<u32> = out_list.iter().map(|l| l.len() as u32).collect();
        let mut alive = vec![true; nodes.len()];
        let mut arc_dead = vec![false; 2 * m]; // scoped to this phase's arcs
        let mut cursor = vec![0usize; nodes.len()];
        let mut cleanup: VecDeque<u32> = VecDeque::new();
        for (li, &d) in outdeg.iter().enumerate() {
            if d == 0 && li as u32 != t_loc {
                cleanup.push_back(li as u32);
            }
        }
        let run_cleanup = |cleanup: &mut VecDeque<u32>,
                           alive: &mut Vec<bool>,
                           outdeg: &mut Vec<u32>,
                           arc_dead: &mut Vec<bool>| {
            while let Some(li) = cleanup.pop_front() {
                let li = li as usize;
                if !alive[li] {
                    continue;
                }
                alive[li] = false;
                for &(tail, a) in &in_list[li] {
                    if !arc_dead[a as usize] {
                        arc_dead[a as usize] = true;
                        let tl = tail as usize;
                        if alive[tl] {
                            outdeg[tl] -= 1;
                            if outdeg[tl] == 0 && tail != t_loc {
                                cleanup.push_back(tail);
                            }
                        }
                    }
                }
            }
        };
        run_cleanup(&mut cleanup, &mut alive, &mut outdeg, &mut arc_dead);

        let s_loc = local[s] as usize;
        let mut path: Vec<u32> = Vec::with_capacity(phase);
        while alive[s_loc] {
            // Walk: every alive vertex except t keeps out-degree >= 1, and
            // layered edges advance one level, so `phase` steps reach t.
            path.clear();
            let mut v = s_loc;
            while v != t_loc as usize {
                let l = &out_list[v];
                let mut c = cursor[v];
                while arc_dead[l[c] as usize] {
                    c += 1;
                }
                cursor[v] = c;
                let a = l[c] as usize;
                path.push(a as u32);
                v = local[to[a] as usize] as usize;
            }
            let mut bottleneck = Weight::MAX;
            for &a in &path {
                bottleneck = bottleneck.min(res[a as usize]);
            }
            debug_assert!(bottleneck > 0);
            value += bottleneck;
            for &a in &path {
                let a = a as usize;
                res[a] -= bottleneck;
                res[a ^ 1] += bottleneck;
                if res[a] == 0 && !arc_dead[a] {
                    arc_dead[a] = true;
                    let tail = local[to[a ^ 1] as usize] as usize;
                    if alive[tail] {
                        outdeg[tail] -= 1;
                        if outdeg[tail] == 0 && tail as u32 != t_loc {
                            cleanup.push_back(tail as u32);
                        }
                    }
                }
            }
            run_cleanup(&mut cleanup, &mut alive, &mut outdeg, &mut arc_dead);
        }
    }

    debug_assert!(residual_distance(&res, &head, &arcs, &to, s, t) >= h);
    let values: Vec<Weight> = (0..m).map(|e| res[2 * e + 1]).collect();
    debug_assert!(g.out_edges(t).all(|e| values[e] == 0));
    Ok(DistancingFlowResult { flow: Flow { values, value, s, t } })
}

/// Local flow: augments the input graph with sink shortcuts (v, t) of
/// capacity deg+(v), adds a super-source of capacity delta, runs an
/// (h+2)-distancing flow, and returns the flow together with the ball
/// A = {v : dist <= h-1 from s in the residual} (or {s} when the flow
/// saturated delta). Guarantees s in A, t not in A, Vol+_G(A) <= delta, and,
/// when val(f) < delta, every residual path from s to V \ A has >= h edges.
pub fn alg_local_flow(
    g: &CapGraph,
    s: Vertex,
    t: Vertex,
    delta: Weight,
    h: usize,
) -> Result<LocalFlowResult> {
    assert_ne!(s, t);
    assert!(h >= 1);
    if (g.out_degree(s) as Weight) > delta {
        return Err(Error::SourceDegreeExceedsDelta);
    }
    let mut ghat = g.clone();
    for v in 0..g.n() {
        if v != t && g.out_degree(v) > 0 {
            ghat.add_edge(v, t, g.out_degree(v) as Weight);
        }
    }
    let mut gstar = ghat.clone();
    let s_prime = gstar.add_vertex();
    gstar.add_edge(s_prime, s, delta);

    let dist_res = h_distancing_flow(&gstar, s_prime, t, h + 2)?;
    let f_star = dist_res.flow;
    // Project onto ghat: drop the super-source edge (the last edge id).
    let ghat_edges = ghat.edge_count();
    let values: Vec<Weight> = f_star.values[..ghat_edges].to_vec();
    let flow = Flow { values, value: f_star.value, s, t };

    let a = if flow.value >= delta {
        vec![s]
    } else {
        // Bounded BFS in the residual of ghat wrt the projected flow.
        let res = flow.residual_graph(&ghat);
        let mut dist = vec![usize::MAX; res.n()];
        dist[s] = 0;
        let mut q = VecDeque::new();
        q.push_back(s);
        while let Some(v) = q.pop_front() {
            if dist[v] >= h - 1 {
                continue;
            }
            for e in res.out_edges(v) {
                let u = res.edge(e).1;
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    q.push_back(u);
                }
            }
        }
        (0..g.n()).filter(|&v| v != t && dist[v] <= h - 1).collect()
    };
    debug_assert!(a.contains(&s));
    debug_assert!(!a.contains(&t));
    debug_assert!(
        a.iter().map(|&v| g.out_degree(v) as Weight).sum::<Weight>() <= delta,
        "out-volume of A exceeds delta"
    );
    Ok(LocalFlowResult { flow, ghat, a })
}
