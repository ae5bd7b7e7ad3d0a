//! Machine-readable result records and their re-validation.

use serde::{Deserialize, Serialize};

use crate::graph::{DiGraph, Tripartition};
use crate::stats::Counters;
use crate::Weight;

/// JSON result record. Vertex ids are 1-based sorted lists matching the
/// instance format; the value is a decimal string because cut values may
/// exceed 64 bits.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResultRecord {
    pub instance: String,
    pub solver: String,
    pub seed: u64,
    pub value: String,
    pub left: Vec<usize>,
    pub sep: Vec<usize>,
    pub right: Vec<usize>,
    pub wall_ms: f64,
    pub repeats: u32,
    pub counters: Counters,
}

impl ResultRecord {
    pub fn from_cut(
        instance: &str,
        solver: &str,
        seed: u64,
        cut: &Tripartition,
        g: &DiGraph,
        wall_ms: f64,
        repeats: u32,
        counters: Counters,
    ) -> ResultRecord {
        ResultRecord {
            instance: instance.to_string(),
            solver: solver.to_string(),
            seed,
            value: cut.value(g).to_string(),
            left: cut.left.iter().map(|&v| v + 1).collect(),
            sep: cut.sep.iter().map(|&v| v + 1).collect(),
            right: cut.right.iter().map(|&v| v + 1).collect(),
            wall_ms,
            repeats,
            counters,
        }
    }

    pub fn tripartition(&self) -> Option<Tripartition> {
        let shift = |l: &[usize]| -> Option<Vec<usize>> {
            l.iter().map(|&v| v.checked_sub(1)).collect()
        };
        Some(Tripartition::new(shift(&self.left)?, shift(&self.sep)?, shift(&self.right)?))
    }

    /// Re-validates the record against its instance: the reported partition
    /// must be a valid vertex-cut whose value matches the reported one.
    pub fn verify(&self, g: &DiGraph) -> Result<(), String> {
        let tri = self.tripartition().ok_or("vertex id 0 in record")?;
        if !tri.is_valid_vertex_cut(g) {
            return Err("recorded partition is not a valid vertex-cut".into());
        }
        let value: Weight =
            self.value.parse().map_err(|_| "unparseable value field".to_string())?;
        if tri.value(g) != value {
            return Err(format!("recorded value {} != recomputed {}", value, tri.value(g)));
        }
        Ok(())
    }
}
