//! Modified adjacency-list representation of a split graph with shortcuts:
//! regular edges bucketed per weight class and degree class, the unique
//! incident special edge per copy, and a shortcut bit per vertex. Supports
//! weight-threshold restriction by bucket skipping and enumeration of
//! low-degree neighbors above a threshold without scanning the rest.

use crate::graph::{base_of, DiGraph, SplitGraph};
use crate::{Vertex, Weight};

/// Weight class of a positive weight: the unique i >= 1 with
/// 2^(i-1) <= w < 2^i.
pub fn weight_class(w: Weight) -> u32 {
    debug_assert!(w >= 1);
    128 - w.leading_zeros()
}

#[derive(Debug, Clone)]
pub struct ModifiedAdjacency {
    n_base: usize,
    classes: u32,
    /// Outgoing regular edges per split vertex, bucketed by
    /// (head weight class, head degree class); index 2*(i-1) + hd.
    out_buckets: Vec<Vec<Vec<u32>>>,
    /// Incoming regular edges per split vertex, bucketed by tail classes.
    in_buckets: Vec<Vec<Vec<u32>>>,
    special_cap: Vec<Weight>,
    high_degree: Vec<bool>,
    /// b(v): whether the shortcut edge (v, t) is present.
    shortcut: Vec<bool>,
    shortcut_log: Vec<u32>,
}

impl ModifiedAdjacency {
    /// Builds the representation for the split graph of `g` with degree
    /// threshold `dtilde` and initial shortcut set `b` (split vertex ids).
    pub fn new(g: &DiGraph, sg: &SplitGraph, dtilde: f64, b: &[Vertex]) -> Self {
        let n = g.n();
        let classes = weight_class(sg.wp_max) + 1;
        let high_degree: Vec<bool> = (0..n).map(|v| g.degree(v) as f64 >= dtilde).collect();
        let bucket_of = |v: Vertex| -> usize {
            let c = weight_class(g.weight(v).max(1));
            (2 * (c - 1) + u32::from(high_degree[v])) as usize
        };
        let empty: Vec<Vec<u32>> = vec![Vec::new(); 2 * classes as usize];
        let mut out_buckets = vec![empty.clone(); 2 * n];
        let mut in_buckets = vec![empty; 2 * n];
        for (u, v) in g.edges() {
            let uo = crate::graph::out_copy(u);
            let vi = crate::graph::in_copy(v);
            out_buckets[uo][bucket_of(v)].push(vi as u32);
            in_buckets[vi][bucket_of(u)].push(uo as u32);
        }
        let special_cap: Vec<Weight> = (0..n).map(|v| g.weight(v)).collect();
        let mut shortcut = vec![false; 2 * n];
        for &v in b {
            shortcut[v] = true;
        }
        ModifiedAdjacency {
            n_base: n,
            classes,
            out_buckets,
            in_buckets,
            special_cap,
            high_degree,
            shortcut,
            shortcut_log: Vec::new(),
        }
    }

    pub fn n_base(&self) -> usize {
        self.n_base
    }

    pub fn special_cap(&self, v: Vertex) -> Weight {
        self.special_cap[base_of(v)]
    }

    pub fn is_high_degree(&self, base: Vertex) -> bool {
        self.high_degree[base]
    }

    pub fn has_shortcut(&self, v: Vertex) -> bool {
        self.shortcut[v]
    }

    /// Inserts a shortcut edge (v, t); logged so it can be undone.
    pub fn add_shortcut(&mut self, v: Vertex) {
        if !self.shortcut[v] {
            self.shortcut[v] = true;
            self.shortcut_log.push(v as u32);
        }
    }

    /// Number of logged shortcut insertions, usable as an undo mark.
    pub fn shortcut_mark(&self) -> usize {
        self.shortcut_log.len()
    }

    /// Removes shortcut edges inserted after the given mark.
    pub fn undo_shortcuts(&mut self, mark: usize) {
        while self.shortcut_log.len() > mark {
            let v = self.shortcut_log.pop().unwrap();
            self.shortcut[v as usize] = false;
        }
    }

    /// Outgoing regular edges of a split vertex whose head's base weight is
    /// at least 2^(min_class - 1), i.e. weight class >= min_class. With
    /// `only_low` set, restricts to low-degree heads without touching the
    /// high-degree buckets.
    pub fn out_regular(
        &self,
        v: Vertex,
        min_class: u32,
        only_low: bool,
    ) -> impl Iterator<Item = Vertex> + '_ {
        let classes = self.classes;
        self.out_buckets[v]
            .iter()
            .enumerate()
            .filter(move |(idx, _)| {
                let class = (idx / 2) as u32 + 1;
                let hd = idx % 2 == 1;
                class >= min_class && class <= classes && !(only_low && hd)
            })
            .flat_map(|(_, l)| l.iter().map(|&x| x as Vertex))
    }

    /// Incoming regular edges with the same bucket filters.
    pub fn in_regular(
        &self,
        v: Vertex,
        min_class: u32,
        only_low: bool,
    ) -> impl Iterator<Item = Vertex> + '_ {
        let classes = self.classes;
        self.in_buckets[v]
            .iter()
            .enumerate()
            .filter(move |(idx, _)| {
                let class = (idx / 2) as u32 + 1;
                let hd = idx % 2 == 1;
                class >= min_class && class <= classes && !(only_low && hd)
            })
            .flat_map(|(_, l)| l.iter().map(|&x| x as Vertex))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_split, in_copy, out_copy};

    #[test]
    fn weight_classes_partition() {
        assert_eq!(weight_class(1), 1);
        assert_eq!(weight_class(2), 2);
        assert_eq!(weight_class(3), 2);
        assert_eq!(weight_class(4), 3);
        assert_eq!(weight_class(7), 3);
        assert_eq!(weight_class(8), 4);
    }

    #[test]
    fn bucket_restriction_hides_light_vertices() {
        // w = (1, 2, 3) on a triangle; restricting to weight >= 2 hides the
        // copies of the weight-1 vertex.
        let g = DiGraph::new(3, vec![1, 2, 3], &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let sg = build_split(&g).unwrap();
        let ma = ModifiedAdjacency::new(&g, &sg, f64::INFINITY, &[]);
        // 2 -> 0: head has weight 1, class 1; with min_class 2 it is hidden.
        let all: Vec<_> = ma.out_regular(out_copy(2), 1, false).collect();
        assert_eq!(all, vec![in_copy(0)]);
        let heavy: Vec<_> = ma.out_regular(out_copy(2), 2, false).collect();
        assert!(heavy.is_empty());
        // 1 -> 2 survives: head weight 3, class 2.
        let heavy: Vec<_> = ma.out_regular(out_copy(1), 2, false).collect();
        assert_eq!(heavy, vec![in_copy(2)]);
    }

    #[test]
    fn union_of_buckets_is_full_adjacency() {
        let g = DiGraph::new(
            5,
            vec![1, 2, 4, 8, 3],
            &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 0), (4, 0), (4, 1)],
        )
        .unwrap();
        let sg = build_split(&g).unwrap();
        let ma = ModifiedAdjacency::new(&g, &sg, 3.0, &[]);
        for v in 0..5 {
            let mut got: Vec<_> = ma.out_regular(out_copy(v), 1, false).collect();
            got.sort_unstable();
            let mut want: Vec<_> = g.out_neighbors(v).map(in_copy).collect();
            want.sort_unstable();
            assert_eq!(got, want);
            let mut got_in: Vec<_> = ma.in_regular(in_copy(v), 1, false).collect();
            got_in.sort_unstable();
            let mut want_in: Vec<_> = g.in_neighbors(v).map(out_copy).collect();
            want_in.sort_unstable();
            assert_eq!(got_in, want_in);
        }
    }

    #[test]
    fn shortcut_bits_per_high_degree_vertex() {
        let g = DiGraph::new(
            4,
            vec![1, 1, 1, 1],
            &[(0, 1), (0, 2), (0, 3), (1, 0), (2, 0), (3, 0)],
        )
        .unwrap();
        let sg = build_split(&g).unwrap();
        // Threshold picks vertex 0 (degree 6) as high-degree.
        let dtilde = 4.0;
        let b: Vec<Vertex> = (0..4)
            .filter(|&v| g.degree(v) as f64 >= dtilde)
            .map(out_copy)
            .collect();
        assert_eq!(b.len(), 1);
        let mut ma = ModifiedAdjacency::new(&g, &sg, dtilde, &b);
        assert!(ma.has_shortcut(out_copy(0)));
        assert!(!ma.has_shortcut(out_copy(1)));

        let mark = ma.shortcut_mark();
        ma.add_shortcut(out_copy(1));
        ma.add_shortcut(in_copy(2));
        assert!(ma.has_shortcut(out_copy(1)) && ma.has_shortcut(in_copy(2)));
        ma.undo_shortcuts(mark);
        assert!(!ma.has_shortcut(out_copy(1)) && !ma.has_shortcut(in_copy(2)));
        assert!(ma.has_shortcut(out_copy(0)));
    }

    #[test]
    fn low_degree_enumeration_skips_high_buckets() {
        // Vertex 0 points at one high-degree hub and several low-degree
        // heavy vertices; only_low skips the hub bucket entirely.
        let mut edges = vec![(0, 1)];
        for v in 2..6 {
            edges.push((0, v));
            edges.push((1, v)); // hub has degree >= threshold
            edges.push((v, 1));
        }
        let g = DiGraph::new(6, vec![1, 1, 4, 4, 4, 4], &edges).unwrap();
        let sg = build_split(&g).unwrap();
        let ma = ModifiedAdjacency::new(&g, &sg, 6.0, &[]);
        assert!(ma.is_high_degree(1));
        let mut low_heavy: Vec<_> = ma.out_regular(out_copy(0), 3, true).collect();
        low_heavy.sort_unstable();
        assert_eq!(low_heavy, vec![in_copy(2), in_copy(3), in_copy(4), in_copy(5)]);
    }
}
