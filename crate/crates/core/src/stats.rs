//! Process-wide audit counters reported in result records.

use std::sync::atomic::{AtomicU64, Ordering};

static FLOW_CALLS: AtomicU64 = AtomicU64::new(0);
static ORACLE_QUERIES: AtomicU64 = AtomicU64::new(0);
static SUPPORT_RETRIES: AtomicU64 = AtomicU64::new(0);

pub fn count_flow_call() {
    FLOW_CALLS.fetch_add(1, Ordering::Relaxed);
}

pub fn count_oracle_query() {
    ORACLE_QUERIES.fetch_add(1, Ordering::Relaxed);
}

pub fn count_support_retry() {
    SUPPORT_RETRIES.fetch_add(1, Ordering::Relaxed);
}

/// Snapshot of the counters; subtract two snapshots to get per-run numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Counters {
    pub flow_calls: u64,
    pub oracle_queries: u64,
    pub support_retries: u64,
}

pub fn snapshot() -> Counters {
    Counters {
        flow_calls: FLOW_CALLS.load(Ordering::Relaxed),
        oracle_queries: ORACLE_QUERIES.load(Ordering::Relaxed),
        support_retries: SUPPORT_RETRIES.load(Ordering::Relaxed),
    }
}

impl Counters {
    pub fn since(&self, earlier: &Counters) -> Counters {
        Counters {
            flow_calls: self.flow_calls - earlier.flow_calls,
            oracle_queries: self.oracle_queries - earlier.oracle_queries,
            support_retries: self.support_retries - earlier.support_retries,
        }
    }
}
