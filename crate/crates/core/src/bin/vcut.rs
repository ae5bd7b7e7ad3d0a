//! Command-line front end: instance I/O, generators, solver dispatch,
//! verification against the oracles, and benchmark timing.
//!
//! Exit codes: 0 ok, 1 wrong answer or invalid result, 2 usage or I/O
//! error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use vcut::driver::{solve, Algo, SolveOptions};
use vcut::instance::{self, gen_cycle, gen_er_strong, gen_planted, Instance, PlantedSpec};
use vcut::record::ResultRecord;
use vcut::reference::exact_global_min_vertex_cut;
use vcut::sampling::rng_from_seed;
use vcut::{stats, Weight};

#[derive(Parser)]
#[command(name = "vcut", about = "Global minimum vertex-cut solvers for directed graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and emit a JSON result record.
    Solve {
        #[arg(long, default_value = "auto")]
        algo: Algo,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Amplification repeats for the randomized solvers
        /// (default ceil(8 log2 n log2 Wmax), capped at 4096).
        #[arg(long)]
        repeats: Option<usize>,
        /// Balance exponent override for the non-dense solver.
        #[arg(long)]
        epsilon: Option<f64>,
        /// Sparsification parameter override for the dense solver.
        #[arg(long)]
        gamma: Option<u64>,
        /// Instance file (defaults to stdin).
        #[arg(long, value_name = "PATH")]
        r#in: Option<PathBuf>,
        /// Result record destination (defaults to stdout).
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Generate an instance file (and a plant sidecar when applicable).
    Gen {
        #[arg(long, value_parser = ["planted", "er-strong", "cycle"])]
        model: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        l_size: usize,
        #[arg(long, default_value_t = 3)]
        cut_weight: u64,
        #[arg(long, default_value_t = 1)]
        max_weight: u64,
        #[arg(long, default_value_t = 0.05)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (defaults to stdout; the plant sidecar becomes
        /// <out>.plant.json).
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Re-validate a result record against its instance.
    Verify {
        /// Result record (JSON) path.
        #[arg(long, value_name = "PATH")]
        record: PathBuf,
        /// Instance file the record refers to.
        #[arg(long, value_name = "PATH")]
        r#in: PathBuf,
        /// Additionally compare the value against the exact oracle
        /// (instances up to the oracle guard of 64 vertices).
        #[arg(long)]
        against_oracle: bool,
    },
    /// Timing sweep over generated instances. Empirical only; the solvers'
    /// theoretical exponents are not reproduced at these sizes.
    Bench {
        #[arg(long, default_value = "auto")]
        algo: Algo,
        /// Comma-separated instance sizes.
        #[arg(long, default_value = "64,128,256")]
        sizes: String,
        #[arg(long, default_value = "planted", value_parser = ["planted", "er-strong", "cycle"])]
        model: String,
        #[arg(long, default_value_t = 2)]
        cut_weight: u64,
        #[arg(long, default_value_t = 1)]
        max_weight: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        repeats: Option<usize>,
    },
}

fn read_instance(path: &Option<PathBuf>) -> Result<(Instance, String), (u8, String)> {
    let (text, id) = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| (2u8, format!("cannot read {}: {e}", p.display())))?;
            let id = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            (text, id)
        }
        None => {
            use std::io::Read as _;
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| (2u8, format!("cannot read stdin: {e}")))?;
            (buf, "-".to_string())
        }
    };
    let inst = instance::parse(&text).map_err(|e| (2u8, format!("parse error: {e}")))?;
    Ok((inst, id))
}

fn run() -> Result<(), (u8, String)> {
    match Cli::parse().command {
        Command::Solve { algo, seed, repeats, epsilon, gamma, r#in, out } => {
            let (inst, id) = read_instance(&r#in)?;
            let opts = SolveOptions { algo, seed, repeats, epsilon, gamma };
            let before = stats::snapshot();
            let start = Instant::now();
            let (cut, _) = solve(&inst.graph, inst.weighted, &opts)
                .map_err(|e| (1u8, format!("solve failed: {e}")))?;
            let wall_ms = start.elapsed().as_secs_f64() * 1e3;
            let counters = stats::snapshot().since(&before);
            let record = ResultRecord::from_cut(
                &id,
                algo.name(),
                seed,
                &cut,
                &inst.graph,
                wall_ms,
                repeats.unwrap_or_else(|| vcut::driver::default_repeats(&inst.graph)) as u32,
                counters,
            );
            record.verify(&inst.graph).map_err(|e| (1u8, format!("self-check failed: {e}")))?;
            let json = serde_json::to_string_pretty(&record).expect("record serializes");
            match out {
                Some(p) => std::fs::write(&p, json)
                    .map_err(|e| (2u8, format!("cannot write {}: {e}", p.display())))?,
                None => println!("{json}"),
            }
            Ok(())
        }
        Command::Gen { model, n, l_size, cut_weight, max_weight, density, seed, out } => {
            let mut rng = rng_from_seed(seed);
            let (inst, plant, note) = match model.as_str() {
                "cycle" => (gen_cycle(n, max_weight as Weight, &mut rng), None, None),
                "er-strong" => {
                    let (inst, attempts) = gen_er_strong(n, density, max_weight as Weight, &mut rng)
                        .ok_or((2u8, "generation failed: graph never became strongly connected".to_string()))?;
                    (inst, None, Some(format!("c attempts {attempts}")))
                }
                "planted" => {
                    let spec = PlantedSpec {
                        n,
                        l_size,
                        cut_weight: cut_weight as Weight,
                        max_weight: max_weight as Weight,
                        density,
                        seed,
                    };
                    let (inst, plant) = gen_planted(&spec)
                        .ok_or((2u8, "infeasible planted parameters".to_string()))?;
                    // Size permitting, confirm the plant is the optimum;
                    // otherwise it is at least an upper bound on a strongly
                    // connected instance.
                    if n <= 20 {
                        let oracle = exact_global_min_vertex_cut(&inst.graph)
                            .map_err(|e| (2u8, format!("oracle failed: {e}")))?;
                        if oracle.value.to_string() != plant.value {
                            return Err((1u8, format!(
                                "plant value {} is not optimal (oracle {})",
                                plant.value, oracle.value
                            )));
                        }
                    }
                    (inst, Some(plant), None)
                }
                _ => unreachable!("clap validates the model"),
            };
            let mut text = String::new();
            if let Some(n) = note {
                text.push_str(&n);
                text.push('\n');
            }
            text.push_str(&instance::serialize(&inst));
            match &out {
                Some(p) => {
                    std::fs::write(p, text)
                        .map_err(|e| (2u8, format!("cannot write {}: {e}", p.display())))?;
                    if let Some(plant) = plant {
                        let side = p.with_extension("plant.json");
                        std::fs::write(&side, serde_json::to_string_pretty(&plant).unwrap())
                            .map_err(|e| (2u8, format!("cannot write {}: {e}", side.display())))?;
                    }
                }
                None => {
                    print!("{text}");
                    if let Some(plant) = plant {
                        eprintln!("{}", serde_json::to_string(&plant).unwrap());
                    }
                }
            }
            Ok(())
        }
        Command::Verify { record, r#in, against_oracle } => {
            let text = std::fs::read_to_string(&record)
                .map_err(|e| (2u8, format!("cannot read {}: {e}", record.display())))?;
            let rec: ResultRecord = serde_json::from_str(&text)
                .map_err(|e| (2u8, format!("bad record: {e}")))?;
            let (inst, _) = read_instance(&Some(r#in))?;
            rec.verify(&inst.graph).map_err(|e| (1u8, format!("invalid record: {e}")))?;
            if against_oracle {
                if inst.graph.n() > 64 {
                    return Err((2u8, "instance exceeds the oracle guard of 64 vertices".into()));
                }
                let oracle = exact_global_min_vertex_cut(&inst.graph)
                    .map_err(|e| (1u8, format!("oracle: {e}")))?;
                if oracle.value.to_string() != rec.value {
                    return Err((1u8, format!(
                        "recorded value {} differs from oracle {}",
                        rec.value, oracle.value
                    )));
                }
            }
            println!("ok");
            Ok(())
        }
        Command::Bench { algo, sizes, model, cut_weight, max_weight, seed, repeats } => {
            println!("empirical only; asymptotic exponents are not reproduced at these sizes");
            println!("{:>8} {:>10} {:>12} {:>12}", "n", "m", "value", "ms");
            for part in sizes.split(',') {
                let n: usize = part
                    .trim()
                    .parse()
                    .map_err(|_| (2u8, format!("bad size '{part}'")))?;
                let mut rng = rng_from_seed(seed ^ n as u64);
                let inst = match model.as_str() {
                    "cycle" => gen_cycle(n, max_weight as Weight, &mut rng),
                    "er-strong" => {
                        gen_er_strong(n, (4.0 / n as f64).min(0.5), max_weight as Weight, &mut rng)
                            .ok_or((2u8, "generation failed".to_string()))?
                            .0
                    }
                    _ => {
                        let spec = PlantedSpec {
                            n,
                            l_size: 2,
                            cut_weight: cut_weight as Weight,
                            max_weight: max_weight as Weight,
                            density: (6.0 / n as f64).min(0.3),
                            seed,
                        };
                        gen_planted(&spec)
                            .ok_or((2u8, "infeasible planted parameters".to_string()))?
                            .0
                    }
                };
                let opts = SolveOptions { algo, seed, repeats, epsilon: None, gamma: None };
                let start = Instant::now();
                let (_, value) = solve(&inst.graph, inst.weighted, &opts)
                    .map_err(|e| (1u8, format!("solve failed: {e}")))?;
                let ms = start.elapsed().as_secs_f64() * 1e3;
                println!("{:>8} {:>10} {:>12} {:>12.2}", n, inst.graph.m(), value, ms);
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
