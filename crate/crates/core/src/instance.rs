//! Instance file format (DIMACS-style), generators, and plant sidecars.
//!
//! Format, line oriented:
//!   c <comment>
//!   p dvc <n> <m> <weighted:0|1>
//!   w <v> <weight>      (1-based ids; omitted vertices default to weight 1)
//!   e <u> <v>

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::graph::{check_strong_connectivity_or_trivial_cut, DiGraph, Tripartition};
use crate::sampling::Rng;
use crate::{Vertex, Weight};

#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: DiGraph,
    pub weighted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {0}: {1}")]
    Line(usize, String),
    #[error("missing problem line")]
    MissingHeader,
}

pub fn parse(text: &str) -> Result<Instance, ParseError> {
    let mut n: Option<usize> = None;
    let mut m_declared = 0usize;
    let mut weighted = false;
    let mut weights: Vec<Weight> = Vec::new();
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut it = line.split_whitespace();
        match it.next() {
            Some("p") => {
                if n.is_some() {
                    return Err(ParseError::Line(ln, "duplicate problem line".into()));
                }
                if it.next() != Some("dvc") {
                    return Err(ParseError::Line(ln, "expected 'p dvc <n> <m> <weighted>'".into()));
                }
                let nn: usize = it
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| ParseError::Line(ln, "bad vertex count".into()))?;
                m_declared = it
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| ParseError::Line(ln, "bad edge count".into()))?;
                weighted = match it.next() {
                    Some("0") => false,
                    Some("1") => true,
                    _ => return Err(ParseError::Line(ln, "weighted flag must be 0 or 1".into())),
                };
                weights = vec![1; nn];
                n = Some(nn);
            }
            Some("w") => {
                let n = n.ok_or(ParseError::MissingHeader)?;
                let v: usize = it
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| ParseError::Line(ln, "bad vertex id".into()))?;
                let w: u64 = it
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| ParseError::Line(ln, "bad weight".into()))?;
                if v == 0 || v > n {
                    return Err(ParseError::Line(ln, format!("vertex id {v} out of [1,{n}]")));
                }
                weights[v - 1] = w as Weight;
            }
            Some("e") => {
                let n = n.ok_or(ParseError::MissingHeader)?;
                let u: usize = it
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| ParseError::Line(ln, "bad edge tail".into()))?;
                let v: usize = it
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| ParseError::Line(ln, "bad edge head".into()))?;
                if u == 0 || u > n || v == 0 || v > n {
                    return Err(ParseError::Line(ln, format!("edge ({u},{v}) out of range")));
                }
                if u == v {
                    return Err(ParseError::Line(ln, "self-loop".into()));
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => {
                return Err(ParseError::Line(ln, format!("unknown record '{other}'")));
            }
            None => {}
        }
    }
    let n = n.ok_or(ParseError::MissingHeader)?;
    let mut sorted = edges.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(ParseError::Line(0, "duplicate edge".into()));
    }
    if edges.len() != m_declared {
        return Err(ParseError::Line(
            0,
            format!("edge count {} does not match declared {m_declared}", edges.len()),
        ));
    }
    let graph = DiGraph::new(n, weights, &edges)
        .map_err(|e| ParseError::Line(0, format!("invalid graph: {e}")))?;
    Ok(Instance { graph, weighted })
}

/// Canonical serialization: problem line, weight lines in id order when
/// weighted, edge lines sorted by (tail, head).
pub fn serialize(inst: &Instance) -> String {
    let g = &inst.graph;
    let mut out = String::new();
    out.push_str(&format!("p dvc {} {} {}\n", g.n(), g.m(), u8::from(inst.weighted)));
    if inst.weighted {
        for v in 0..g.n() {
            out.push_str(&format!("w {} {}\n", v + 1, g.weight(v)));
        }
    }
    let mut edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    edges.sort_unstable();
    for (u, v) in edges {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

/// Sidecar recording a planted cut, stored as JSON next to the instance.
/// Vertex ids are 1-based to match the instance format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Plant {
    pub left: Vec<usize>,
    pub sep: Vec<usize>,
    pub right: Vec<usize>,
    /// Decimal string; cut values may exceed u64.
    pub value: String,
}

impl Plant {
    pub fn tripartition(&self) -> Tripartition {
        Tripartition::new(
            self.left.iter().map(|&v| v - 1).collect(),
            self.sep.iter().map(|&v| v - 1).collect(),
            self.right.iter().map(|&v| v - 1).collect(),
        )
    }

    fn from_tripartition(t: &Tripartition, value: Weight) -> Plant {
        Plant {
            left: t.left.iter().map(|&v| v + 1).collect(),
            sep: t.sep.iter().map(|&v| v + 1).collect(),
            right: t.right.iter().map(|&v| v + 1).collect(),
            value: value.to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PlantedSpec {
    pub n: usize,
    pub l_size: usize,
    pub cut_weight: Weight,
    pub max_weight: Weight,
    pub density: f64,
    pub seed: u64,
}

/// Builds a planted instance: partition (L, S, R) where S's weights sum to
/// `cut_weight`, all other vertices carry `max_weight`, and the edge
/// structure (complete L -> S, spread S <-> R, circulant R with back edges
/// into L) makes (L, S, R) a strongly connected vertex-cut. With
/// cut_weight < max_weight (or, unweighted, with all degrees above the cut
/// size) the plant is the optimum by construction; callers verify against
/// the oracle at small sizes regardless. Returns None for infeasible
/// parameters.
pub fn gen_planted(spec: &PlantedSpec) -> Option<(Instance, Plant)> {
    let PlantedSpec { n, l_size, cut_weight, max_weight, density, seed } = *spec;
    let mut rng = crate::sampling::rng_from_seed(seed);
    if l_size == 0 || cut_weight == 0 || max_weight == 0 {
        return None;
    }
    // Separator cardinality: enough slots for the budget, preferring a few
    // vertices so the separator has structure.
    let min_slots = (cut_weight as usize).div_ceil(max_weight as usize);
    let s_count = min_slots.max((cut_weight as usize).min(3));
    let k = s_count;
    if l_size + k + k + 3 > n {
        return None;
    }
    let l: Vec<usize> = (0..l_size).collect();
    let s: Vec<usize> = (l_size..l_size + k).collect();
    let r: Vec<usize> = (l_size + k..n).collect();

    // Weights: S sums exactly to cut_weight, each in [1, max_weight];
    // everyone else carries max_weight.
    let mut weights = vec![max_weight; n];
    let mut rem = cut_weight;
    for i in 0..k {
        let slots_left = (k - i - 1) as Weight;
        let hi = max_weight.min(rem - slots_left);
        let lo = rem.saturating_sub(slots_left * max_weight).max(1);
        let w = if hi <= lo { lo } else { lo + rng.gen_range(0..=(hi - lo) as u64) as Weight };
        weights[s[i]] = w;
        rem -= w;
    }
    if rem != 0 {
        return None;
    }

    let mut edges = Vec::new();
    for &a in &l {
        for &b in &l {
            if a != b {
                edges.push((a, b));
            }
        }
    }
    for &a in &l {
        for &b in &s {
            edges.push((a, b));
        }
    }
    for (i, &b) in s.iter().enumerate() {
        for j in 0..k + 2 {
            edges.push((b, r[(i * 7 + j * 3) % r.len()]));
            edges.push((r[(i * 11 + j * 5 + 1) % r.len()], b));
        }
    }
    for i in 0..r.len() {
        for off in 1..=k + 2 {
            edges.push((r[i], r[(i + off) % r.len()]));
        }
    }
    for (idx, &a) in l.iter().enumerate() {
        for j in 0..k + 2 {
            edges.push((r[(idx * 5 + j) % r.len()], a));
        }
    }
    // Density extras, never L -> R.
    let target_extra = (density * n as f64 * (n as f64 - 1.0)) as usize;
    for _ in 0..target_extra {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v || (u < l_size && v >= l_size + k) {
            continue;
        }
        edges.push((u, v));
    }
    edges.sort_unstable();
    edges.dedup();
    let graph = DiGraph::new(n, weights, &edges).ok()?;
    if check_strong_connectivity_or_trivial_cut(&graph).is_some() {
        return None;
    }
    let tri = Tripartition::new(l, s, r);
    debug_assert!(tri.is_valid_vertex_cut(&graph));
    debug_assert_eq!(tri.value(&graph), cut_weight);
    let plant = Plant::from_tripartition(&tri, cut_weight);
    let weighted = max_weight > 1;
    Some((Instance { graph, weighted }, plant))
}

/// Directed Erdos-Renyi, rejecting until strongly connected. Returns the
/// instance and the number of attempts.
pub fn gen_er_strong(
    n: usize,
    density: f64,
    max_weight: Weight,
    rng: &mut Rng,
) -> Option<(Instance, usize)> {
    for attempt in 1..=1000 {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if u != v && rng.gen_bool(density) {
                    edges.push((u, v));
                }
            }
        }
        let weights: Vec<Weight> =
            (0..n).map(|_| rng.gen_range(1..=max_weight.max(1) as u64) as Weight).collect();
        let graph = DiGraph::new(n, weights, &edges).ok()?;
        if check_strong_connectivity_or_trivial_cut(&graph).is_none() {
            return Some((Instance { graph, weighted: max_weight > 1 }, attempt));
        }
    }
    None
}

/// Directed cycle with seeded random weights.
pub fn gen_cycle(n: usize, max_weight: Weight, rng: &mut Rng) -> Instance {
    let edges: Vec<(Vertex, Vertex)> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    let weights: Vec<Weight> =
        (0..n).map(|_| rng.gen_range(1..=max_weight.max(1) as u64) as Weight).collect();
    let graph = DiGraph::new(n, weights, &edges).unwrap();
    Instance { graph, weighted: max_weight > 1 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::exact_global_min_vertex_cut;
    use crate::sampling::rng_from_seed;

    #[test]
    fn parse_and_serialize_round_trip() {
        let text = "c a comment\np dvc 3 2 1\nw 1 4\nw 2 1\nw 3 9\ne 1 2\ne 2 3\n";
        let inst = parse(text).unwrap();
        assert_eq!(inst.graph.n(), 3);
        assert_eq!(inst.graph.weight(0), 4);
        assert_eq!(inst.graph.weight(2), 9);
        let canon = serialize(&inst);
        // Byte-identical modulo the comment line.
        assert_eq!(canon, "p dvc 3 2 1\nw 1 4\nw 2 1\nw 3 9\ne 1 2\ne 2 3\n");
        let again = parse(&canon).unwrap();
        assert_eq!(serialize(&again), canon);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "p dvc 3 1 0\ne 1 9\n";
        match parse(bad) {
            Err(ParseError::Line(2, msg)) => assert!(msg.contains("out of range")),
            other => panic!("expected line error, got {other:?}"),
        }
        assert!(parse("e 1 2\n").is_err());
        assert!(parse("p dvc 2 1 0\ne 1 1\n").is_err());
    }

    #[test]
    fn cycle_generator() {
        let mut rng = rng_from_seed(5);
        let inst = gen_cycle(5, 3, &mut rng);
        assert_eq!(inst.graph.n(), 5);
        assert_eq!(inst.graph.m(), 5);
        assert!(inst.graph.weights().iter().all(|&w| (1..=3).contains(&w)));
        // Same seed, same instance.
        let mut rng = rng_from_seed(5);
        let again = gen_cycle(5, 3, &mut rng);
        assert_eq!(serialize(&inst), serialize(&again));
    }

    #[test]
    fn er_strong_is_strongly_connected() {
        let mut rng = rng_from_seed(8);
        let (inst, attempts) = gen_er_strong(12, 0.3, 4, &mut rng).unwrap();
        assert!(attempts >= 1);
        assert!(check_strong_connectivity_or_trivial_cut(&inst.graph).is_none());
    }

    #[test]
    fn planted_small_is_optimal() {
        for seed in 0..15u64 {
            let spec = PlantedSpec {
                n: 16,
                l_size: 2,
                cut_weight: 7,
                max_weight: 9,
                density: 0.1,
                seed,
            };
            let Some((inst, plant)) = gen_planted(&spec) else { continue };
            let tri = plant.tripartition();
            assert!(tri.is_valid_vertex_cut(&inst.graph));
            assert_eq!(tri.value(&inst.graph), 7);
            let oracle = exact_global_min_vertex_cut(&inst.graph).unwrap();
            assert_eq!(oracle.value, 7, "plant must be optimal at small n (seed {seed})");
        }
    }

    #[test]
    fn planted_unweighted_matches_oracle() {
        for k in 1..=3u128 {
            let spec = PlantedSpec {
                n: 20,
                l_size: 2,
                cut_weight: k,
                max_weight: 1,
                density: 0.05,
                seed: k as u64,
            };
            let Some((inst, plant)) = gen_planted(&spec) else { continue };
            assert!(!inst.weighted);
            let oracle = exact_global_min_vertex_cut(&inst.graph).unwrap();
            assert_eq!(oracle.value, k);
            assert_eq!(plant.value, k.to_string());
        }
    }
}
