//! Shared solver dispatch used by the command-line front end and the
//! foreign-function bindings.

use crate::dense::{solve_dense_amplified, DenseConfig};
use crate::graph::{check_strong_connectivity_or_trivial_cut, lift_weights, DiGraph, Tripartition};
use crate::reference::exact_global_min_vertex_cut;
use crate::sampling::rng_from_seed;
use crate::sparse::{solve_sparse, SparseConfig};
use crate::unweighted::global_min_vertex_cut_unweighted;
use crate::{Result, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    Auto,
    Unweighted,
    Sparse,
    Dense,
    Exact,
}

impl std::str::FromStr for Algo {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Algo, String> {
        match s {
            "auto" => Ok(Algo::Auto),
            "unweighted" => Ok(Algo::Unweighted),
            "sparse" => Ok(Algo::Sparse),
            "dense" => Ok(Algo::Dense),
            "exact" => Ok(Algo::Exact),
            other => Err(format!("unknown algorithm '{other}'")),
        }
    }
}

impl Algo {
    pub fn name(&self) -> &'static str {
        match self {
            Algo::Auto => "auto",
            Algo::Unweighted => "unweighted",
            Algo::Sparse => "sparse",
            Algo::Dense => "dense",
            Algo::Exact => "exact",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub algo: Algo,
    pub seed: u64,
    /// None derives ceil(8 log2 n log2 Wmax), capped at 4096.
    pub repeats: Option<usize>,
    pub epsilon: Option<f64>,
    pub gamma: Option<u64>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { algo: Algo::Auto, seed: 0, repeats: None, epsilon: None, gamma: None }
    }
}

pub fn default_repeats(g: &DiGraph) -> usize {
    let (_, wm) = crate::graph::w_max_params(g).unwrap_or((2, 16));
    let r = 8.0 * (g.n().max(2) as f64).log2() * (wm as f64).log2();
    (r.ceil() as usize).clamp(1, 4096)
}

/// Dense-versus-sparse crossover: run the dense pipeline when the sparse
/// cost estimate m * n^(11/12) * d^(1/12) exceeds the dense estimate
/// n^2.677.
pub fn crossover_prefers_dense(n: usize, m: usize) -> bool {
    let n = n as f64;
    let m = m as f64;
    let d = (2.0 * m / n).max(1.0);
    m * n.powf(11.0 / 12.0) * d.powf(1.0 / 12.0) > n.powf(2.677)
}

/// Dispatches a solve. `weighted` is the instance's declared flag; the
/// graph may carry zero weights, which get lifted before the weighted
/// solvers run (the reported cut value is always in original weights).
pub fn solve(g: &DiGraph, weighted: bool, opts: &SolveOptions) -> Result<(Tripartition, Weight)> {
    if let Some(cut) = check_strong_connectivity_or_trivial_cut(g) {
        return Ok((cut.clone(), cut.value(g)));
    }
    let algo = match opts.algo {
        Algo::Auto => {
            if g.n() < 64 {
                Algo::Exact
            } else if !weighted {
                Algo::Unweighted
            } else if crossover_prefers_dense(g.n(), g.m()) {
                Algo::Dense
            } else {
                Algo::Sparse
            }
        }
        a => a,
    };
    let mut rng = rng_from_seed(opts.seed);
    let repeats = opts.repeats.unwrap_or_else(|| default_repeats(g));
    let lifted;
    let positive: &DiGraph = if g.weights().iter().any(|&w| w == 0) {
        lifted = lift_weights(g)?;
        &lifted
    } else {
        g
    };
    let cut = match algo {
        Algo::Exact => exact_global_min_vertex_cut(g)?.witness,
        Algo::Unweighted => global_min_vertex_cut_unweighted(g, &mut rng)?,
        Algo::Sparse => {
            let cfg = SparseConfig {
                eps: opts.epsilon,
                repeats: Some(repeats),
                ..SparseConfig::default()
            };
            solve_sparse(positive, &cfg, &mut rng)?
        }
        Algo::Dense => {
            let cfg = DenseConfig { gamma: opts.gamma };
            solve_dense_amplified(positive, &cfg, repeats, &mut rng)?
        }
        Algo::Auto => unreachable!(),
    };
    let value = cut.value(g);
    Ok((cut, value))
}
