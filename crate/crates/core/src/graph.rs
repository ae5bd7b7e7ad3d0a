//! Directed vertex-weighted graphs, vertex-cuts, and the split-graph /
//! derived-graph reductions with their cut translations.

use crate::flow::CapGraph;
use crate::{add_w, mul_w, Error, Result, Vertex, Weight};

/// Simple directed graph with non-negative integer vertex weights.
///
/// Adjacency lists are kept sorted so edge membership is a binary search.
#[derive(Debug, Clone)]
pub struct DiGraph {
    weights: Vec<Weight>,
    out: Vec<Vec<u32>>,
    inn: Vec<Vec<u32>>,
    m: usize,
}

impl DiGraph {
    /// Builds a graph from an edge list. Rejects self-loops and duplicates.
    pub fn new(n: usize, weights: Vec<Weight>, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        assert_eq!(weights.len(), n, "one weight per vertex");
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for &(u, v) in edges {
            assert!(u < n && v < n, "edge endpoint out of range");
            if u == v {
                return Err(Error::NotACut); // self-loop: not a simple graph
            }
            out[u].push(v as u32);
            inn[v].push(u as u32);
        }
        for l in out.iter_mut().chain(inn.iter_mut()) {
            l.sort_unstable();
            if l.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::NotACut); // parallel edge
            }
        }
        Ok(DiGraph { weights, out, inn, m: edges.len() })
    }

    /// Unit-weight convenience constructor.
    pub fn unit(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        Self::new(n, vec![1; n], edges)
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn weight(&self, v: Vertex) -> Weight {
        self.weights[v]
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn max_weight(&self) -> Weight {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    pub fn out_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.out[v].iter().map(|&u| u as Vertex)
    }

    pub fn in_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.inn[v].iter().map(|&u| u as Vertex)
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.inn[v].len()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.out[v].len() + self.inn[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.out[u].binary_search(&(v as u32)).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n()).flat_map(move |u| self.out[u].iter().map(move |&v| (u, v as Vertex)))
    }

    /// Total weight of a vertex set.
    pub fn weight_of(&self, set: &[Vertex]) -> Weight {
        set.iter().map(|&v| self.weights[v]).sum()
    }

    /// Out-volume: sum of out-degrees over the set.
    pub fn out_volume(&self, set: &[Vertex]) -> usize {
        set.iter().map(|&v| self.out[v].len()).sum()
    }

    /// Total-degree volume over the set.
    pub fn volume(&self, set: &[Vertex]) -> usize {
        set.iter().map(|&v| self.degree(v)).sum()
    }

    /// N+(A): out-neighbors of the set, excluding the set itself.
    pub fn out_neighborhood(&self, set: &[Vertex]) -> Vec<Vertex> {
        let mut in_set = vec![false; self.n()];
        for &v in set {
            in_set[v] = true;
        }
        let mut seen = vec![false; self.n()];
        let mut res = Vec::new();
        for &v in set {
            for &u in &self.out[v] {
                let u = u as Vertex;
                if !in_set[u] && !seen[u] {
                    seen[u] = true;
                    res.push(u);
                }
            }
        }
        res.sort_unstable();
        res
    }

    /// Graph with all edges reversed; weights unchanged.
    pub fn reversed(&self) -> DiGraph {
        DiGraph {
            weights: self.weights.clone(),
            out: self.inn.clone(),
            inn: self.out.clone(),
            m: self.m,
        }
    }

    /// Same graph with new weights.
    pub fn with_weights(&self, weights: Vec<Weight>) -> DiGraph {
        assert_eq!(weights.len(), self.n());
        DiGraph { weights, out: self.out.clone(), inn: self.inn.clone(), m: self.m }
    }
}

/// Ordered vertex partition (L, S, R). A valid vertex-cut additionally has
/// L and R nonempty and no edge from L to R; its value is w(S).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tripartition {
    pub left: Vec<Vertex>,
    pub sep: Vec<Vertex>,
    pub right: Vec<Vertex>,
}

impl Tripartition {
    pub fn new(mut left: Vec<Vertex>, mut sep: Vec<Vertex>, mut right: Vec<Vertex>) -> Self {
        left.sort_unstable();
        sep.sort_unstable();
        right.sort_unstable();
        Tripartition { left, sep, right }
    }

    /// Builds (A, V \ (A ∪ S) , ...) from side markers; `side[v]` in {0,1,2}.
    pub fn from_sides(sides: &[u8]) -> Self {
        let mut parts = [Vec::new(), Vec::new(), Vec::new()];
        for (v, &s) in sides.iter().enumerate() {
            parts[s as usize].push(v);
        }
        let [left, sep, right] = parts;
        Tripartition { left, sep, right }
    }

    pub fn value(&self, g: &DiGraph) -> Weight {
        g.weight_of(&self.sep)
    }

    /// Checks that the three parts partition V(g) and form a vertex-cut:
    /// L, R nonempty and no edge from L to R.
    pub fn is_valid_vertex_cut(&self, g: &DiGraph) -> bool {
        if self.left.is_empty() || self.right.is_empty() {
            return false;
        }
        let n = g.n();
        if self.left.len() + self.sep.len() + self.right.len() != n {
            return false;
        }
        let mut side = vec![u8::MAX; n];
        for &v in &self.left {
            if v >= n || side[v] != u8::MAX {
                return false;
            }
            side[v] = 0;
        }
        for &v in &self.sep {
            if v >= n || side[v] != u8::MAX {
                return false;
            }
            side[v] = 1;
        }
        for &v in &self.right {
            if v >= n || side[v] != u8::MAX {
                return false;
            }
            side[v] = 2;
        }
        for &v in &self.left {
            if g.out_neighbors(v).any(|u| side[u] == 2) {
                return false;
            }
        }
        true
    }

    /// The same cut in the reversed graph: (R, S, L).
    pub fn reversed(&self) -> Tripartition {
        Tripartition {
            left: self.right.clone(),
            sep: self.sep.clone(),
            right: self.left.clone(),
        }
    }

    pub fn contains_in_left(&self, v: Vertex) -> bool {
        self.left.binary_search(&v).is_ok()
    }
}

/// Partition (X, Y) of the vertices of an edge-capacitated graph. When used
/// as an s-t edge-cut, s is in X and t in Y; the value is the total capacity
/// of edges from X to Y.
#[derive(Debug, Clone)]
pub struct EdgeCut {
    pub x: Vec<Vertex>,
    pub y: Vec<Vertex>,
}

impl EdgeCut {
    pub fn value(&self, g: &CapGraph) -> Weight {
        let mut in_x = vec![false; g.n()];
        for &v in &self.x {
            in_x[v] = true;
        }
        let mut val: Weight = 0;
        for e in g.edge_ids() {
            let (u, v, c) = g.edge(e);
            if in_x[u] && !in_x[v] {
                val += c;
            }
        }
        val
    }
}

/// Lifts weights to be strictly positive: w'(v) = n^2 * w(v) + 1. Every
/// global minimum vertex-cut of the output is one of the input.
pub fn lift_weights(g: &DiGraph) -> Result<DiGraph> {
    let n2 = mul_w(g.n() as Weight, g.n() as Weight)?;
    let mut w = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        w.push(add_w(mul_w(n2, g.weight(v))?, 1)?);
    }
    Ok(g.with_weights(w))
}

/// Tripartition induced by a nonempty vertex set A: (A, N+(A), rest).
/// The second return value tells whether it is a valid vertex-cut, which
/// holds iff A together with N+(A) does not cover V.
pub fn induced_tripartition(g: &DiGraph, a: &[Vertex]) -> Result<(Tripartition, bool)> {
    if a.is_empty() {
        return Err(Error::EmptySource);
    }
    let mut side = vec![2u8; g.n()];
    for &v in a {
        side[v] = 0;
    }
    for &v in a {
        for u in g.out_neighbors(v) {
            if side[u] == 2 {
                side[u] = 1;
            }
        }
    }
    let t = Tripartition::from_sides(&side);
    let valid = !t.right.is_empty();
    Ok((t, valid))
}

/// (W'max, Wmax): the least power of two with W'max >= 1 + max weight, and
/// the least power of two with Wmax >= 8 * n * W'max.
pub fn w_max_params(g: &DiGraph) -> Result<(Weight, Weight)> {
    let wp = pow2_at_least(add_w(g.max_weight(), 1)?)?;
    let wm = pow2_at_least(mul_w(8, mul_w(g.n() as Weight, wp)?)?)?;
    Ok((wp, wm))
}

pub(crate) fn pow2_at_least(x: Weight) -> Result<Weight> {
    let mut p: Weight = 1;
    while p < x {
        p = p.checked_mul(2).ok_or(Error::CapacityOverflow)?;
    }
    Ok(p)
}

/// Split graph of a vertex-weighted graph: in/out copies per vertex, one
/// special edge (v_in, v_out) of capacity w(v) per vertex, and a regular
/// edge (u_out, v_in) of capacity Wmax per graph edge.
///
/// Copies live at indices 2v (in) and 2v+1 (out). The first n edges of the
/// capacitated graph are the special edges, ordered by vertex.
#[derive(Debug, Clone)]
pub struct SplitGraph {
    pub cap: CapGraph,
    pub wp_max: Weight,
    pub w_max: Weight,
    n_base: usize,
}

pub fn in_copy(v: Vertex) -> Vertex {
    2 * v
}

pub fn out_copy(v: Vertex) -> Vertex {
    2 * v + 1
}

/// Base vertex of a split-graph copy.
pub fn base_of(copy: Vertex) -> Vertex {
    copy / 2
}

pub fn is_out_copy(copy: Vertex) -> bool {
    copy % 2 == 1
}

impl SplitGraph {
    pub fn n_base(&self) -> usize {
        self.n_base
    }

    /// Edge id of the special edge representing v.
    pub fn special_edge(&self, v: Vertex) -> usize {
        v
    }
}

/// Builds the split graph. With a custom `regular_cap` the regular edges get
/// that capacity instead of Wmax(G); it must be at least Wmax(G).
pub fn build_split(g: &DiGraph) -> Result<SplitGraph> {
    let (wp, wm) = w_max_params(g)?;
    build_split_with_cap(g, wp, wm)
}

pub fn build_split_with_cap(g: &DiGraph, wp_max: Weight, regular_cap: Weight) -> Result<SplitGraph> {
    let mut cap = CapGraph::new(2 * g.n());
    for v in 0..g.n() {
        cap.add_edge(in_copy(v), out_copy(v), g.weight(v));
    }
    for (u, v) in g.edges() {
        cap.add_edge(out_copy(u), in_copy(v), regular_cap);
    }
    Ok(SplitGraph { cap, wp_max, w_max: regular_cap, n_base: g.n() })
}

/// Maps an s-t vertex-cut (L,S,R) of g to the s_out - t_in edge-cut
/// (L* ∪ S_in, rest) of the split graph; its value equals w(S).
pub fn split_cut_from_cut(
    g: &DiGraph,
    cut: &Tripartition,
    s: Vertex,
    t: Vertex,
) -> Result<EdgeCut> {
    if !cut.is_valid_vertex_cut(g)
        || !cut.contains_in_left(s)
        || cut.right.binary_search(&t).is_err()
    {
        return Err(Error::NotACut);
    }
    let mut x = Vec::with_capacity(2 * cut.left.len() + cut.sep.len());
    for &v in &cut.left {
        x.push(in_copy(v));
        x.push(out_copy(v));
    }
    for &v in &cut.sep {
        x.push(in_copy(v));
    }
    x.sort_unstable();
    let y = (0..2 * g.n()).filter(|c| x.binary_search(c).is_err()).collect();
    Ok(EdgeCut { x, y })
}

/// Maps an s_out - t_in edge-cut of value < Wmax back to an s-t vertex-cut:
/// L = {v != t : v_out in X}, S = {v : v_in in X, v_out in Y}. Also returns
/// the tripartition induced by L, whose separator is contained in S.
pub fn cut_from_split_cut(
    g: &DiGraph,
    sg: &SplitGraph,
    cut: &EdgeCut,
    t: Vertex,
) -> Result<(Tripartition, Tripartition)> {
    if cut.value(&sg.cap) >= sg.w_max {
        return Err(Error::DegenerateCut);
    }
    let mut in_x = vec![false; 2 * g.n()];
    for &c in &cut.x {
        in_x[c] = true;
    }
    let mut side = vec![2u8; g.n()];
    for v in 0..g.n() {
        if v != t && in_x[out_copy(v)] {
            side[v] = 0;
        } else if in_x[in_copy(v)] && !in_x[out_copy(v)] {
            side[v] = 1;
        }
    }
    let tri = Tripartition::from_sides(&side);
    let (induced, _) = induced_tripartition(g, &tri.left)?;
    Ok((tri, induced))
}

/// Graph derived from g via a nonempty vertex set A: vertices A ∪ N+(A) and
/// a fresh sink t absorbing N+(A); keeps exactly the edges leaving A.
#[derive(Debug, Clone)]
pub struct DerivedGraph {
    pub graph: DiGraph,
    /// Maps derived vertex index -> original vertex; the sink has no entry.
    pub to_base: Vec<Vertex>,
    /// Index of the fresh sink t in `graph`.
    pub sink: Vertex,
    /// Maps original vertex -> derived index (usize::MAX when absent).
    from_base: Vec<usize>,
}

impl DerivedGraph {
    pub fn from_base(&self, v: Vertex) -> Option<Vertex> {
        let i = self.from_base[v];
        (i != usize::MAX).then_some(i)
    }
}

/// Builds the derived graph G^{|A}. The sink weight is the maximum base
/// weight; |E| <= 2 * Vol+(A).
pub fn derive_via(g: &DiGraph, a: &[Vertex]) -> Result<DerivedGraph> {
    if a.is_empty() {
        return Err(Error::EmptySource);
    }
    let mut from_base = vec![usize::MAX; g.n()];
    let mut to_base = Vec::new();
    let add = |v: Vertex, from_base: &mut Vec<usize>, to_base: &mut Vec<Vertex>| -> usize {
        if from_base[v] == usize::MAX {
            from_base[v] = to_base.len();
            to_base.push(v);
        }
        from_base[v]
    };
    let mut in_a = vec![false; g.n()];
    for &v in a {
        in_a[v] = true;
        add(v, &mut from_base, &mut to_base);
    }
    let mut edges = Vec::new();
    let mut boundary = Vec::new();
    for &v in a {
        for u in g.out_neighbors(v) {
            let ui = add(u, &mut from_base, &mut to_base);
            edges.push((from_base[v], ui));
            if !in_a[u] {
                boundary.push(ui);
            }
        }
    }
    let sink = to_base.len();
    boundary.sort_unstable();
    boundary.dedup();
    for b in boundary {
        edges.push((b, sink));
    }
    let mut weights: Vec<Weight> = to_base.iter().map(|&v| g.weight(v)).collect();
    weights.push(g.max_weight());
    let graph = DiGraph::new(sink + 1, weights, &edges)?;
    Ok(DerivedGraph { graph, to_base, sink, from_base })
}

/// Translates a vertex-cut (L,S,R) of the derived graph with t in R back to
/// a vertex-cut of the base graph: (L, S, rest). Requires A ∪ N+(A) != V.
pub fn cut_from_derived_cut(
    g: &DiGraph,
    derived: &DerivedGraph,
    cut: &Tripartition,
) -> Result<Tripartition> {
    if cut.right.binary_search(&derived.sink).is_err() {
        return Err(Error::NotACut);
    }
    // A ∪ N+(A) = derived vertices minus t; some base vertex must be outside.
    if derived.to_base.len() >= g.n() {
        return Err(Error::NoOutsideVertex);
    }
    let mut side = vec![2u8; g.n()];
    for &v in &cut.left {
        debug_assert_ne!(v, derived.sink);
        side[derived.to_base[v]] = 0;
    }
    for &v in &cut.sep {
        if v != derived.sink {
            side[derived.to_base[v]] = 1;
        }
    }
    Ok(Tripartition::from_sides(&side))
}

/// Split graph with B-shortcuts: adds a sink t and a regular edge (v, t) of
/// capacity Wmax for every v in B (vertices of the split graph).
pub fn split_with_shortcuts(sg: &SplitGraph, b: &[Vertex]) -> CapGraph {
    let mut cap = sg.cap.clone();
    let t = cap.add_vertex();
    for &v in b {
        cap.add_edge(v, t, sg.w_max);
    }
    cap
}

/// Two DFS passes (forward and reversed). If the graph is not strongly
/// connected, returns a value-0 vertex-cut (a closed set with S empty).
pub fn check_strong_connectivity_or_trivial_cut(g: &DiGraph) -> Option<Tripartition> {
    let n = g.n();
    if n < 2 {
        return None;
    }
    let reach = |forward: bool| -> Vec<bool> {
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            let it: &[u32] = if forward { &g.out[v] } else { &g.inn[v] };
            for &u in it {
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    stack.push(u as usize);
                }
            }
        }
        seen
    };
    let fwd = reach(true);
    if fwd.iter().all(|&b| b) {
        let bwd = reach(false);
        if bwd.iter().all(|&b| b) {
            return None;
        }
        // Vertices that cannot reach 0: no edge from them... take the set
        // reachable-from-0-only direction. L = V \ bwd-set cannot reach 0;
        // no edge leaves L into bwd-set? Edges from L to bwd-set would give
        // a path to 0. So (V \ bwd, empty, bwd) is a value-0 cut.
        let left: Vec<_> = (0..n).filter(|&v| !bwd[v]).collect();
        let right: Vec<_> = (0..n).filter(|&v| bwd[v]).collect();
        return Some(Tripartition::new(left, Vec::new(), right));
    }
    // Vertices not reachable from 0 have no incoming edge from the reachable
    // side... edges reachable -> unreachable cannot exist; so L = reachable.
    let left: Vec<_> = (0..n).filter(|&v| fwd[v]).collect();
    let right: Vec<_> = (0..n).filter(|&v| !fwd[v]).collect();
    Some(Tripartition::new(left, Vec::new(), right))
}

/// A fixed valid vertex-cut for "give up" paths: the tripartition induced by
/// a vertex of minimum out-degree. None iff the graph has no vertex-cut.
pub fn fallback_cut(g: &DiGraph) -> Option<Tripartition> {
    let v = (0..g.n()).min_by_key(|&v| g.out_degree(v))?;
    if g.out_degree(v) + 1 >= g.n() {
        return None;
    }
    let (t, valid) = induced_tripartition(g, &[v]).ok()?;
    valid.then_some(t)
}
