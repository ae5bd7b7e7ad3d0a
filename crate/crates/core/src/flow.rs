//! Exact edge-capacitated max-flow / min-cut (Dinic), min-cost max-flow
//! (successive shortest paths with potentials), flow decomposition, vertex
//! cuts via the split graph, and small-support max flow.

use rand::Rng as _;

use crate::graph::{
    self, base_of, build_split, in_copy, is_out_copy, out_copy, DiGraph, EdgeCut, Tripartition,
};
use crate::sampling::Rng;
use crate::{stats, Error, Result, Vertex, Weight};

/// Edge-capacitated directed graph. Parallel edges are permitted (residual
/// networks and scaled graphs need them).
#[derive(Debug, Clone, Default)]
pub struct CapGraph {
    from: Vec<u32>,
    to: Vec<u32>,
    cap: Vec<Weight>,
    out: Vec<Vec<u32>>,
}

impl CapGraph {
    pub fn new(n: usize) -> Self {
        CapGraph { from: Vec::new(), to: Vec::new(), cap: Vec::new(), out: vec![Vec::new(); n] }
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.out.push(Vec::new());
        self.out.len() - 1
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex, c: Weight) -> usize {
        debug_assert!(u < self.n() && v < self.n() && u != v);
        let id = self.from.len();
        self.from.push(u as u32);
        self.to.push(v as u32);
        self.cap.push(c);
        self.out[u].push(id as u32);
        id
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn edge_count(&self) -> usize {
        self.from.len()
    }

    pub fn edge(&self, e: usize) -> (Vertex, Vertex, Weight) {
        (self.from[e] as Vertex, self.to[e] as Vertex, self.cap[e])
    }

    pub fn edge_ids(&self) -> std::ops::Range<usize> {
        0..self.from.len()
    }

    pub fn out_edges(&self, v: Vertex) -> impl Iterator<Item = usize> + '_ {
        self.out[v].iter().map(|&e| e as usize)
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out[v].len()
    }

    pub fn set_cap(&mut self, e: usize, c: Weight) {
        self.cap[e] = c;
    }

    /// Total capacity leaving a vertex, saturating at Weight::MAX.
    pub fn out_capacity(&self, v: Vertex) -> Weight {
        self.out[v]
            .iter()
            .fold(0u128, |acc, &e| acc.saturating_add(self.cap[e as usize]))
    }
}

/// An s-t flow on a [`CapGraph`], stored per edge id.
#[derive(Debug, Clone)]
pub struct Flow {
    pub values: Vec<Weight>,
    pub value: Weight,
    pub s: Vertex,
    pub t: Vertex,
}

impl Flow {
    /// Edge ids carrying positive flow.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.values.iter().enumerate().filter(|(_, &f)| f > 0).map(|(e, _)| e)
    }

    /// Residual network as an explicit graph: forward edges with remaining
    /// capacity and backward edges with the current flow.
    pub fn residual_graph(&self, g: &CapGraph) -> CapGraph {
        let mut r = CapGraph::new(g.n());
        for e in g.edge_ids() {
            let (u, v, c) = g.edge(e);
            if self.values[e] < c {
                r.add_edge(u, v, c - self.values[e]);
            }
            if self.values[e] > 0 {
                r.add_edge(v, u, self.values[e]);
            }
        }
        r
    }
}

/// Borrowed residual view; for any s-t edge-cut (X,Y),
/// residual capacity of the cut = c(X,Y) - val(f).
pub struct ResidualView<'a> {
    pub graph: &'a CapGraph,
    pub flow: &'a Flow,
}

pub fn residual<'a>(g: &'a CapGraph, f: &'a Flow) -> ResidualView<'a> {
    ResidualView { graph: g, flow: f }
}

impl ResidualView<'_> {
    /// Residual edges as (from, to, residual capacity).
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, Weight)> + '_ {
        self.graph.edge_ids().flat_map(move |e| {
            let (u, v, c) = self.graph.edge(e);
            let f = self.flow.values[e];
            let fwd = (f < c).then_some((u, v, c - f));
            let bwd = (f > 0).then_some((v, u, f));
            fwd.into_iter().chain(bwd)
        })
    }

    /// Residual capacity of a cut given X as a membership mask.
    pub fn cut_capacity(&self, in_x: &[bool]) -> Weight {
        let mut val = 0;
        for (u, v, c) in self.edges() {
            if in_x[u] && !in_x[v] {
                val += c;
            }
        }
        val
    }
}

/// Dinic blocking-flow arena. Arc 2e is the forward copy of input edge e,
/// arc 2e+1 its reverse.
struct Dinic {
    head: Vec<u32>,     // CSR offsets
    arcs: Vec<u32>,     // arc ids per vertex, concatenated
    to: Vec<u32>,
    res: Vec<Weight>,
    level: Vec<u32>,
    iter: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl Dinic {
    fn new(g: &CapGraph) -> Self {
        let n = g.n();
        let m = g.edge_count();
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
        let mut res = vec![0; 2 * m];
        for e in g.edge_ids() {
            let (u, v, c) = g.edge(e);
            arcs[pos[u] as usize] = (2 * e) as u32;
            pos[u] += 1;
            to[2 * e] = v as u32;
            res[2 * e] = c;
            arcs[pos[v] as usize] = (2 * e + 1) as u32;
            pos[v] += 1;
            to[2 * e + 1] = u as u32;
            res[2 * e + 1] = 0;
        }
        Dinic { head, arcs, to, res, level: vec![NONE; n], iter: vec![0; n] }
    }

    fn bfs(&mut self, s: Vertex, t: Vertex) -> bool {
        self.level.fill(NONE);
        self.level[s] = 0;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(s as u32);
        while let Some(u) = queue.pop_front() {
            let u = u as usize;
            for i in self.head[u]..self.head[u + 1] {
                let a = self.arcs[i as usize] as usize;
                let v = self.to[a] as usize;
                if self.res[a] > 0 && self.level[v] == NONE {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v as u32);
                }
            }
        }
        self.level[t] != NONE
    }

    fn dfs(&mut self, s: Vertex, t: Vertex) -> Weight {
        // Iterative DFS with current-arc; pushes the path bottleneck.
        let mut path: Vec<u32> = Vec::new();
        let mut v = s;
        loop {
            if v == t {
                let mut bottleneck = Weight::MAX;
                for &a in &path {
                    bottleneck = bottleneck.min(self.res[a as usize]);
                }
                for &a in &path {
                    self.res[a as usize] -= bottleneck;
                    self.res[(a ^ 1) as usize] += bottleneck;
                }
                return bottleneck;
            }
            let mut advanced = false;
            while self.iter[v] < self.head[v + 1] - self.head[v] {
                let a = self.arcs[(self.head[v] + self.iter[v]) as usize] as usize;
                let u = self.to[a] as usize;
                if self.res[a] > 0 && self.level[u] == self.level[v] + 1 {
                    path.push(a as u32);
                    v = u;
                    advanced = true;
                    break;
                }
                self.iter[v] += 1;
            }
            if !advanced {
                self.level[v] = NONE; // dead end for this phase
                match path.pop() {
                    Some(a) => v = self.to[(a ^ 1) as usize] as usize,
                    None => return 0,
                }
            }
        }
    }

    fn run(&mut self, s: Vertex, t: Vertex) -> Weight {
        let mut total: Weight = 0;
        while self.bfs(s, t) {
            self.iter.fill(0);
            loop {
                let pushed = self.dfs(s, t);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
        total
    }

    fn flow_on(&self, e: usize) -> Weight {
        self.res[2 * e + 1]
    }

    /// Vertices reachable from s in the residual network.
    fn residual_reachable(&self, s: Vertex) -> Vec<bool> {
        let n = self.level.len();
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for i in self.head[u]..self.head[u + 1] {
                let a = self.arcs[i as usize] as usize;
                let v = self.to[a] as usize;
                if self.res[a] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

/// Integral maximum s-t flow via Dinic blocking flows.
pub fn max_flow(g: &CapGraph, s: Vertex, t: Vertex) -> Flow {
    assert_ne!(s, t);
    stats::count_flow_call();
    let mut d = Dinic::new(g);
    let value = d.run(s, t);
    let values = g.edge_ids().map(|e| d.flow_on(e)).collect();
    Flow { values, value, s, t }
}

/// Minimum s-t edge-cut: X is the set reachable from s in the residual of a
/// maximum flow (the "closest" minimum cut).
pub fn min_edge_cut(g: &CapGraph, s: Vertex, t: Vertex) -> (EdgeCut, Weight) {
    assert_ne!(s, t);
    stats::count_flow_call();
    let mut d = Dinic::new(g);
    let value = d.run(s, t);
    let reach = d.residual_reachable(s);
    let x: Vec<_> = (0..g.n()).filter(|&v| reach[v]).collect();
    let y: Vec<_> = (0..g.n()).filter(|&v| !reach[v]).collect();
    (EdgeCut { x, y }, value)
}

/// Minimum S-T vertex-cut. Raises the weights of S ∪ T to Wmax, attaches
/// fresh unit-weight terminals s and t, solves a min edge-cut on the split
/// graph and translates back.
pub fn min_vertex_cut(g: &DiGraph, src: &[Vertex], dst: &[Vertex]) -> Result<Tripartition> {
    if src.is_empty() || dst.is_empty() {
        return Err(Error::EmptySource);
    }
    let mut is_dst = vec![false; g.n()];
    for &v in dst {
        is_dst[v] = true;
    }
    for &v in src {
        if is_dst[v] || g.out_neighbors(v).any(|u| is_dst[u]) {
            return Err(Error::AdjacentTerminals);
        }
    }
    let (_, wmax) = graph::w_max_params(g)?;
    let n = g.n();
    let s = n;
    let t = n + 1;
    let mut weights: Vec<Weight> = g.weights().to_vec();
    for &v in src.iter().chain(dst.iter()) {
        weights[v] = wmax;
    }
    weights.push(1);
    weights.push(1);
    let mut edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    for &v in src {
        edges.push((s, v));
    }
    for &v in dst {
        edges.push((v, t));
    }
    let gh = DiGraph::new(n + 2, weights, &edges)?;
    let sg = build_split(&gh)?;
    let (cut, _) = min_edge_cut(&sg.cap, out_copy(s), in_copy(t));
    let (tri, _) = graph::cut_from_split_cut(&gh, &sg, &cut, t)?;
    // Strip the artificial terminals.
    let keep = |set: &[Vertex]| -> Vec<Vertex> {
        set.iter().copied().filter(|&v| v < n).collect()
    };
    Ok(Tripartition::new(keep(&tri.left), keep(&tri.sep), keep(&tri.right)))
}

/// Min-cost maximum flow by successive shortest augmenting paths with
/// Johnson potentials. Costs must be >= 1 per edge; among maximum flows the
/// result minimizes sum f(e) * cost(e).
pub fn min_cost_max_flow(g: &CapGraph, s: Vertex, t: Vertex, cost: &[u64]) -> Flow {
    assert_ne!(s, t);
    assert_eq!(cost.len(), g.edge_count());
    stats::count_flow_call();
    let n = g.n();
    let m = g.edge_count();
    // Arena: arc 2e forward (cost +c), 2e+1 backward (cost -c).
    let mut d = Dinic::new(g);
    let arc_cost = |a: usize| -> i128 {
        let c = cost[a / 2] as i128;
        if a % 2 == 0 {
            c
        } else {
            -c
        }
    };
    let mut potential = vec![0i128; n];
    let mut dist = vec![i128::MAX; n];
    let mut parent: Vec<u32> = vec![NONE; n];
    let mut value: Weight = 0;
    loop {
        // Dijkstra over reduced costs.
        dist.fill(i128::MAX);
        parent.fill(NONE);
        dist[s] = 0;
        let mut heap = std::collections::BinaryHeap::new();
        heap.push(std::cmp::Reverse((0i128, s as u32)));
        while let Some(std::cmp::Reverse((du, u))) = heap.pop() {
            let u = u as usize;
            if du > dist[u] {
                continue;
            }
            for i in d.head[u]..d.head[u + 1] {
                let a = d.arcs[i as usize] as usize;
                if d.res[a] == 0 {
                    continue;
                }
                let v = d.to[a] as usize;
                let nd = du + arc_cost(a) + potential[u] - potential[v];
                debug_assert!(arc_cost(a) + potential[u] - potential[v] >= 0);
                if nd < dist[v] {
                    dist[v] = nd;
                    parent[v] = a as u32;
                    heap.push(std::cmp::Reverse((nd, v as u32)));
                }
            }
        }
        if dist[t] == i128::MAX {
            break;
        }
        for v in 0..n {
            if dist[v] < i128::MAX {
                potential[v] += dist[v];
            } else {
                potential[v] += dist[t];
            }
        }
        // Push bottleneck along the shortest path.
        let mut bottleneck = Weight::MAX;
        let mut v = t;
        while v != s {
            let a = parent[v] as usize;
            bottleneck = bottleneck.min(d.res[a]);
            v = d.to[a ^ 1] as usize;
        }
        let mut v = t;
        while v != s {
            let a = parent[v] as usize;
            d.res[a] -= bottleneck;
            d.res[a ^ 1] += bottleneck;
            v = d.to[a ^ 1] as usize;
        }
        value += bottleneck;
    }
    let _ = m;
    let values = g.edge_ids().map(|e| d.flow_on(e)).collect();
    Flow { values, value, s, t }
}

/// Integral maximum vertex-capacitated s-t flow on the edges of `g`, listing
/// only its support.
#[derive(Debug, Clone)]
pub struct VertexFlow {
    /// (u, v, f) for every edge with positive flow.
    pub flows: Vec<(Vertex, Vertex, Weight)>,
    pub value: Weight,
}

/// Maximum s-t flow respecting vertex capacities whose support has at most
/// 4n edges. Assigns independent uniform random costs to the split-graph
/// edges, runs min-cost max-flow, projects to the base graph and retries
/// until the support bound holds (expected O(1) retries; hard error after
/// 64 attempts).
pub fn small_support_max_flow(
    g: &DiGraph,
    s: Vertex,
    t: Vertex,
    rng: &mut Rng,
) -> Result<VertexFlow> {
    small_support_max_flow_with_attempts(g, s, t, rng).map(|(f, _)| f)
}

/// As [`small_support_max_flow`], additionally reporting the number of
/// attempts the retry loop used (1 when the first draw already met the
/// support bound).
pub fn small_support_max_flow_with_attempts(
    g: &DiGraph,
    s: Vertex,
    t: Vertex,
    rng: &mut Rng,
) -> Result<(VertexFlow, usize)> {
    assert_ne!(s, t);
    let sg = build_split(g)?;
    let m = sg.cap.edge_count();
    let target = 4 * g.n();
    for attempt in 1..=64 {
        if attempt > 1 {
            stats::count_support_retry();
        }
        let cost: Vec<u64> = (0..m).map(|_| rng.gen_range(1..=(1u64 << 62))).collect();
        let f = min_cost_max_flow(&sg.cap, out_copy(s), in_copy(t), &cost);
        let mut flows = Vec::new();
        for e in g.n()..m {
            if f.values[e] > 0 {
                let (u, v, _) = sg.cap.edge(e);
                flows.push((base_of(u), base_of(v), f.values[e]));
            }
        }
        if flows.len() <= target {
            debug_assert!(flows.iter().all(|&(u, v, _)| is_out_copy(out_copy(u)) && v < g.n()));
            return Ok((VertexFlow { flows, value: f.value }, attempt));
        }
    }
    Err(Error::SupportRetriesExhausted)
}

/// Flow-path decomposition into simple s-t paths. Flow cycles are dropped,
/// which cannot decrease the decomposed value.
#[derive(Debug, Clone)]
pub struct FlowPathDecomposition {
    pub paths: Vec<(Vec<Vertex>, Weight)>,
}

impl FlowPathDecomposition {
    pub fn total(&self) -> Weight {
        self.paths.iter().map(|(_, v)| v).sum()
    }
}

pub fn decompose(g: &CapGraph, f: &Flow) -> FlowPathDecomposition {
    let mut rem: Vec<Weight> = f.values.clone();
    // Positive-flow out-edges per vertex, with a cursor for amortization.
    let mut out: Vec<Vec<u32>> = vec![Vec::new(); g.n()];
    for e in g.edge_ids() {
        if rem[e] > 0 {
            out[g.edge(e).0].push(e as u32);
        }
    }
    let mut cursor = vec![0usize; g.n()];
    let mut paths = Vec::new();
    let mut guard = 0usize;
    let budget = 4 * (g.edge_count() + g.n() + 2) * (g.n() + 2);
    'outer: loop {
        guard += 1;
        if guard > budget {
            break; // defensive: malformed flow input
        }
        // Walk from s following positive-flow edges; cancel cycles on revisit.
        let mut path_edges: Vec<u32> = Vec::new();
        let mut on_path = vec![usize::MAX; g.n()];
        let mut v = f.s;
        on_path[v] = 0;
        while v != f.t {
            let mut next = None;
            while cursor[v] < out[v].len() {
                let e = out[v][cursor[v]] as usize;
                if rem[e] > 0 {
                    next = Some(e);
                    break;
                }
                cursor[v] += 1;
            }
            let Some(e) = next else {
                if v == f.s {
                    break 'outer; // no s-out flow left
                }
                // Dead end off the sink: drop the last edge (stranded cycle
                // remnant) by rewinding one step.
                let e = path_edges.pop().expect("nonempty path") as usize;
                rem[e] = 0;
                on_path[v] = usize::MAX;
                v = g.edge(e).0;
                continue;
            };
            let u = g.edge(e).1;
            if on_path[u] != usize::MAX {
                // Cycle: cancel the minimum flow along it and unwind.
                let start = on_path[u];
                let mut cyc_min = rem[e];
                for &a in &path_edges[start..] {
                    cyc_min = cyc_min.min(rem[a as usize]);
                }
                rem[e] -= cyc_min;
                for &a in &path_edges[start..] {
                    rem[a as usize] -= cyc_min;
                }
                while path_edges.len() > start {
                    let a = path_edges.pop().unwrap() as usize;
                    on_path[g.edge(a).1] = usize::MAX;
                }
                v = u;
                on_path[u] = path_edges.len();
                continue;
            }
            path_edges.push(e as u32);
            on_path[u] = path_edges.len();
            v = u;
        }
        if v != f.t {
            continue;
        }
        let mut val = Weight::MAX;
        for &a in &path_edges {
            val = val.min(rem[a as usize]);
        }
        if val == 0 || path_edges.is_empty() {
            break;
        }
        let mut verts = vec![f.s];
        for &a in &path_edges {
            rem[a as usize] -= val;
            verts.push(g.edge(a as usize).1);
        }
        paths.push((verts, val));
    }
    FlowPathDecomposition { paths }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::rng_from_seed;

    fn diamond() -> DiGraph {
        DiGraph::new(4, vec![1, 2, 3, 1], &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn max_flow_examples() {
        // Two parallel length-2 paths, caps all 1 -> value 2.
        let mut g = CapGraph::new(4);
        g.add_edge(0, 1, 1);
        g.add_edge(1, 3, 1);
        g.add_edge(0, 2, 1);
        g.add_edge(2, 3, 1);
        assert_eq!(max_flow(&g, 0, 3).value, 2);

        let mut g = CapGraph::new(2);
        g.add_edge(0, 1, 7);
        assert_eq!(max_flow(&g, 0, 1).value, 7);

        // Diamond split graph, s_out = a_out, t_in = d_in -> value 5.
        let sg = build_split(&diamond()).unwrap();
        assert_eq!(max_flow(&sg.cap, out_copy(0), in_copy(3)).value, 5);
    }

    #[test]
    fn min_edge_cut_examples() {
        let mut g = CapGraph::new(4);
        g.add_edge(0, 1, 1);
        g.add_edge(1, 3, 1);
        g.add_edge(0, 2, 1);
        g.add_edge(2, 3, 1);
        let (cut, value) = min_edge_cut(&g, 0, 3);
        assert_eq!(value, 2);
        assert_eq!(cut.value(&g), 2);
        assert!(cut.x.contains(&0) && cut.y.contains(&3));

        let sg = build_split(&diamond()).unwrap();
        let (cut, value) = min_edge_cut(&sg.cap, out_copy(0), in_copy(3));
        assert_eq!(value, 5);
        assert_eq!(cut.value(&sg.cap), 5);
    }

    #[test]
    fn min_vertex_cut_examples() {
        let g = diamond();
        let t = min_vertex_cut(&g, &[0], &[3]).unwrap();
        assert_eq!(t, Tripartition::new(vec![0], vec![1, 2], vec![3]));
        assert_eq!(t.value(&g), 5);

        let g = DiGraph::new(3, vec![1, 2, 3], &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let t = min_vertex_cut(&g, &[2], &[1]).unwrap();
        assert_eq!(t, Tripartition::new(vec![2], vec![0], vec![1]));

        let path = DiGraph::new(3, vec![1, 9, 1], &[(0, 1), (1, 2)]).unwrap();
        let t = min_vertex_cut(&path, &[0], &[2]).unwrap();
        assert_eq!(t.value(&path), 9);

        let adj = DiGraph::new(2, vec![1, 1], &[(0, 1)]).unwrap();
        assert_eq!(min_vertex_cut(&adj, &[0], &[1]).unwrap_err(), Error::AdjacentTerminals);
    }

    #[test]
    fn min_cost_examples() {
        let mut g = CapGraph::new(2);
        let e1 = g.add_edge(0, 1, 1);
        let e2 = g.add_edge(0, 1, 1);
        let f = min_cost_max_flow(&g, 0, 1, &[1, 5]);
        assert_eq!(f.value, 2);
        let total: u128 = f.values[e1] * 1 + f.values[e2] * 5;
        assert_eq!(total, 6);

        // Single path: cost = value * path cost.
        let mut g = CapGraph::new(3);
        g.add_edge(0, 1, 4);
        g.add_edge(1, 2, 4);
        let f = min_cost_max_flow(&g, 0, 2, &[3, 2]);
        assert_eq!(f.value, 4);
        let cost: u128 = f.values[0] * 3 + f.values[1] * 2;
        assert_eq!(cost, 4 * 5);
    }

    /// Enumerates all integral flows on a tiny graph and checks the engine
    /// picks a cheapest maximum one.
    #[test]
    fn min_cost_matches_enumeration() {
        // 2x2 bipartite gadget: s -> {a,b} -> {c,d} -> t with distinct costs.
        let mut g = CapGraph::new(6);
        let s = 0;
        let t = 5;
        let mut ids = Vec::new();
        ids.push(g.add_edge(s, 1, 2));
        ids.push(g.add_edge(s, 2, 2));
        ids.push(g.add_edge(1, 3, 1));
        ids.push(g.add_edge(1, 4, 1));
        ids.push(g.add_edge(2, 3, 1));
        ids.push(g.add_edge(2, 4, 1));
        ids.push(g.add_edge(3, t, 2));
        ids.push(g.add_edge(4, t, 2));
        let costs: Vec<u64> = vec![7, 1, 4, 9, 2, 8, 3, 6];
        let f = min_cost_max_flow(&g, s, t, &costs);
        let engine_cost: u128 =
            f.values.iter().zip(&costs).map(|(&fv, &c)| fv * c as u128).sum();

        // Brute force: iterate all per-edge values <= cap, keep conserving
        // flows, find max value then min cost.
        let caps: Vec<u128> = g.edge_ids().map(|e| g.edge(e).2).collect();
        let mut best_val = 0u128;
        let mut best_cost = u128::MAX;
        let m = caps.len();
        let mut assign = vec![0u128; m];
        fn rec(
            i: usize,
            assign: &mut Vec<u128>,
            caps: &[u128],
            g: &CapGraph,
            costs: &[u64],
            best_val: &mut u128,
            best_cost: &mut u128,
        ) {
            if i == caps.len() {
                // conservation at 1..=4
                for v in 1..=4usize {
                    let mut inflow = 0u128;
                    let mut outflow = 0u128;
                    for e in g.edge_ids() {
                        let (a, b, _) = g.edge(e);
                        if b == v {
                            inflow += assign[e];
                        }
                        if a == v {
                            outflow += assign[e];
                        }
                    }
                    if inflow != outflow {
                        return;
                    }
                }
                let val: u128 = g
                    .edge_ids()
                    .filter(|&e| g.edge(e).0 == 0)
                    .map(|e| assign[e])
                    .sum();
                let cost: u128 =
                    assign.iter().zip(costs).map(|(&f, &c)| f * c as u128).sum();
                if val > *best_val || (val == *best_val && cost < *best_cost) {
                    *best_val = val;
                    *best_cost = cost;
                }
                return;
            }
            for x in 0..=caps[i] {
                assign[i] = x;
                rec(i + 1, assign, caps, g, costs, best_val, best_cost);
            }
            assign[i] = 0;
        }
        rec(0, &mut assign, &caps, &g, &costs, &mut best_val, &mut best_cost);
        assert_eq!(f.value, best_val);
        assert_eq!(engine_cost, best_cost);
    }

    #[test]
    fn small_support_tree() {
        // Tree-shaped: support already <= m <= 4n.
        let g = DiGraph::new(4, vec![5, 2, 3, 5], &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let mut rng = rng_from_seed(1);
        let f = small_support_max_flow(&g, 0, 3, &mut rng).unwrap();
        assert_eq!(f.value, 5);
        assert!(f.flows.len() <= 16);
    }

    #[test]
    fn small_support_matches_split_maxflow() {
        let mut rng = rng_from_seed(42);
        for _ in 0..100 {
            let n = rng.gen_range(2..=20);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.gen_bool(0.25) {
                        edges.push((u, v));
                    }
                }
            }
            let w: Vec<Weight> = (0..n).map(|_| rng.gen_range(1..=8)).collect();
            let g = DiGraph::new(n, w, &edges).unwrap();
            let s = 0;
            let t = n - 1;
            if s == t {
                continue;
            }
            let f = small_support_max_flow(&g, s, t, &mut rng).unwrap();
            let sg = build_split(&g).unwrap();
            let reference = max_flow(&sg.cap, out_copy(s), in_copy(t)).value;
            assert_eq!(f.value, reference);
            assert!(f.flows.len() <= 4 * n);
            // Vertex capacities respected.
            for v in 0..n {
                if v == s || v == t {
                    continue;
                }
                let through: Weight =
                    f.flows.iter().filter(|&&(u, _, _)| u == v).map(|&(_, _, x)| x).sum();
                assert!(through <= g.weight(v));
            }
        }
    }

    #[test]
    fn small_support_k4_orientation() {
        // A tournament on 4 vertices without the direct 0 -> 3 edge.
        let g = DiGraph::unit(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 0)]).unwrap();
        let mut rng = rng_from_seed(5);
        let f = small_support_max_flow(&g, 0, 3, &mut rng).unwrap();
        assert!(f.flows.len() <= 16);
        let oracle = crate::reference::exhaustive_min_st_separator(&g, 0, 3).unwrap();
        assert_eq!(f.value, oracle);
        assert_eq!(f.value, 2);
    }

    #[test]
    fn residual_and_decompose_examples() {
        let mut g = CapGraph::new(2);
        g.add_edge(0, 1, 3);
        let zero = Flow { values: vec![0], value: 0, s: 0, t: 1 };
        let rv = residual(&g, &zero);
        assert_eq!(rv.edges().collect::<Vec<_>>(), vec![(0, 1, 3)]);
        assert!(decompose(&g, &zero).paths.is_empty());

        let full = max_flow(&g, 0, 1);
        let rv = residual(&g, &full);
        assert_eq!(rv.edges().collect::<Vec<_>>(), vec![(1, 0, 3)]);

        let d = decompose(&g, &full);
        assert_eq!(d.total(), 3);
        assert_eq!(d.paths.len(), 1);
    }

    #[test]
    fn residual_identity_all_cuts() {
        let mut rng = rng_from_seed(9);
        for _ in 0..30 {
            let n = rng.gen_range(2..=8);
            let mut g = CapGraph::new(n);
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.gen_bool(0.4) {
                        g.add_edge(u, v, rng.gen_range(1..=6));
                    }
                }
            }
            let s = 0;
            let t = n - 1;
            if g.edge_count() == 0 || s == t {
                continue;
            }
            let f = max_flow(&g, s, t);
            let rv = residual(&g, &f);
            for mask in 0u32..(1 << n) {
                if mask >> s & 1 == 0 || mask >> t & 1 == 1 {
                    continue;
                }
                let in_x: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
                let mut cut_cap = 0u128;
                for e in g.edge_ids() {
                    let (u, v, c) = g.edge(e);
                    if in_x[u] && !in_x[v] {
                        cut_cap += c;
                    }
                }
                assert_eq!(rv.cut_capacity(&in_x), cut_cap - f.value);
            }
        }
    }

    #[test]
    fn decompose_properties() {
        let mut rng = rng_from_seed(17);
        for _ in 0..50 {
            let n = rng.gen_range(2..=10);
            let mut g = CapGraph::new(n);
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.gen_bool(0.35) {
                        g.add_edge(u, v, rng.gen_range(1..=7));
                    }
                }
            }
            let f = max_flow(&g, 0, n - 1);
            let d = decompose(&g, &f);
            assert_eq!(d.total(), f.value);
            for (p, _) in &d.paths {
                assert_eq!(p[0], 0);
                assert_eq!(*p.last().unwrap(), n - 1);
                let mut seen = std::collections::HashSet::new();
                assert!(p.iter().all(|v| seen.insert(*v)), "path not simple");
            }
            // Per-edge path sums do not exceed the flow.
            let mut used = vec![0u128; g.edge_count()];
            for (p, val) in &d.paths {
                for w in p.windows(2) {
                    let e = g
                        .edge_ids()
                        .find(|&e| g.edge(e).0 == w[0] && g.edge(e).1 == w[1] && used[e] + val <= f.values[e])
                        .or_else(|| {
                            g.edge_ids().find(|&e| g.edge(e).0 == w[0] && g.edge(e).1 == w[1])
                        })
                        .unwrap();
                    used[e] += val;
                }
            }
        }
    }

    #[test]
    fn maxflow_equals_mincut_random() {
        let mut rng = rng_from_seed(23);
        for _ in 0..100 {
            let n = rng.gen_range(2..=9);
            let mut g = CapGraph::new(n);
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.gen_bool(0.4) {
                        g.add_edge(u, v, rng.gen_range(0..=9));
                    }
                }
            }
            let f = max_flow(&g, 0, n - 1);
            let (cut, val) = min_edge_cut(&g, 0, n - 1);
            assert_eq!(f.value, val);
            assert_eq!(cut.value(&g), val);
        }
    }
}
