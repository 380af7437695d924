use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use expdeg::bench::{run_bench, BenchAlgorithm, BenchSpec, EnsembleModel};
use expdeg::graph::{gen_random_graph, with_random_weights, AnyGraph, Model};
use expdeg::oracles::{oracle_count_pm, oracle_tsp};
use expdeg::pm_bipartite::{count_pm_bipartite, ryser_baseline};
use expdeg::pm_dp::count_pm_dp_detailed;
use expdeg::pm_inex::count_pm_inex_detailed;
use expdeg::rational::{int, parse_rational};
use expdeg::structure::{disjoint_set_size_bound, enumerate_deg2sets, find_disjoint_set, find_gap_threshold};
use expdeg::tsp::{held_karp_baseline, held_karp_path, trimmed_ham_path, tsp_cycle_counted};
use expdeg::{parse_graph, BipartiteGraph, Error, Graph, Rational};

/// Exact exponential-time graph algorithms: TSP and perfect-matching counting.
#[derive(Parser)]
#[command(name = "expdeg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cheapest Hamiltonian cycle (or path with --path).
    Tsp {
        #[arg(long)]
        input: PathBuf,
        /// Cheapest Hamiltonian path between two vertices instead.
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        path: Option<Vec<usize>>,
        /// Run a reference solver instead of the trimmed DP.
        #[arg(long, value_enum, num_args = 0..=1, default_missing_value = "held-karp")]
        baseline: Option<TspBaseline>,
    },
    /// Count perfect matchings of a general graph.
    CountPm {
        #[arg(long, value_enum, default_value = "dp")]
        algo: MatchingAlgo,
        #[arg(long)]
        input: PathBuf,
    },
    /// Count perfect matchings of a bipartite graph.
    CountPmBip {
        #[arg(long)]
        input: PathBuf,
        /// Trimming parameter, must exceed 2.
        #[arg(long, value_parser = parse_alpha, default_value = "3.55")]
        alpha: Rational,
        /// Run the subset DP over side A instead of side B.
        #[arg(long)]
        swap_sides: bool,
        /// Use Ryser's formula instead.
        #[arg(long)]
        baseline: bool,
    },
    /// Degree structure of a graph.
    Stats {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_parser = parse_alpha, default_value = "1")]
        alpha: Rational,
    },
    /// Write a seeded random graph to standard output.
    Gen {
        #[arg(long, value_enum)]
        model: GenModel,
        /// Vertices (gnm, regular).
        #[arg(long)]
        n: Option<usize>,
        /// Edges (gnm, bipartite).
        #[arg(long)]
        m: Option<usize>,
        /// Degree (regular).
        #[arg(long)]
        d: Option<usize>,
        /// Side size (bipartite).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Draw edge weights from 1..=MAX_WEIGHT.
        #[arg(long)]
        max_weight: Option<u64>,
    },
    /// Record DP state counts over a seeded ensemble.
    Bench {
        #[arg(long, value_enum)]
        algo: BenchAlgo,
        #[arg(long, value_enum)]
        model: GenModel,
        /// Comma-separated sizes (vertices, or side size for bipartite).
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// Average degree (|E|/k for bipartite).
        #[arg(long, value_parser = parse_rational_arg)]
        degree: Rational,
        /// Number of seeds per size.
        #[arg(long, default_value_t = 5)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        first_seed: u64,
        #[arg(long, value_parser = parse_alpha, default_value = "3.55")]
        alpha: Rational,
        #[arg(long, default_value_t = 100)]
        max_weight: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TspBaseline {
    HeldKarp,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatchingAlgo {
    Inex,
    Dp,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenModel {
    Gnm,
    Regular,
    Bipartite,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchAlgo {
    Tsp,
    PmDp,
    PmInex,
    Bip,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn parse_rational_arg(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

fn parse_alpha(text: &str) -> Result<Rational, String> {
    let r = parse_rational_arg(text)?;
    if r <= int(0) {
        return Err("alpha must be positive".into());
    }
    Ok(r)
}

/// Failures mapped to exit codes: 2 input, 3 capacity, 1 internal.
enum Failure {
    Input(String),
    Capacity(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            e if e.is_capacity() => Failure::Capacity(e.to_string()),
            Error::Invariant(_) => Failure::Internal(e.to_string()),
            e => Failure::Input(e.to_string()),
        }
    }
}

type CmdResult = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(threads) = std::env::var("EXPDEG_THREADS").ok().and_then(|t| t.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build_global();
    }
    match run(cli.command) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Capacity(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Tsp { input, path, baseline } => cmd_tsp(&read_general(&input)?, path, baseline),
        Command::CountPm { algo, input } => cmd_count_pm(&read_general(&input)?, algo),
        Command::CountPmBip {
            input,
            alpha,
            swap_sides,
            baseline,
        } => {
            let g = read_bipartite(&input)?;
            let g = if swap_sides { g.transpose() } else { g };
            cmd_count_pm_bip(&g, alpha, baseline)
        }
        Command::Stats { input, alpha } => cmd_stats(&read_general(&input)?, alpha),
        Command::Gen {
            model,
            n,
            m,
            d,
            k,
            seed,
            max_weight,
        } => cmd_gen(model, n, m, d, k, seed, max_weight),
        Command::Bench {
            algo,
            model,
            sizes,
            degree,
            seeds,
            first_seed,
            alpha,
            max_weight,
            format,
        } => {
            let spec = BenchSpec {
                algorithm: match algo {
                    BenchAlgo::Tsp => BenchAlgorithm::Tsp,
                    BenchAlgo::PmDp => BenchAlgorithm::PmDp,
                    BenchAlgo::PmInex => BenchAlgorithm::PmInex,
                    BenchAlgo::Bip => BenchAlgorithm::Bipartite,
                },
                model: match model {
                    GenModel::Gnm => EnsembleModel::Gnm,
                    GenModel::Regular => EnsembleModel::Regular,
                    GenModel::Bipartite => EnsembleModel::Bipartite,
                },
                sizes,
                degree,
                seeds: (first_seed..first_seed + seeds).collect(),
                alpha,
                max_weight,
            };
            let report = run_bench(&spec)?;
            Ok(match format {
                Format::Json => to_json(&report),
                Format::Csv => report.to_csv().trim_end().to_string(),
            })
        }
    }
}

fn read_any(path: &Path) -> Result<AnyGraph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_general(path: &Path) -> Result<Graph, Failure> {
    Ok(read_any(path)?.into_general())
}

fn read_bipartite(path: &Path) -> Result<BipartiteGraph, Failure> {
    match read_any(path)? {
        AnyGraph::Bipartite(g) => Ok(g),
        AnyGraph::General(_) => Err(Failure::Input(format!(
            "{}: expected a \"bigraph\" file",
            path.display()
        ))),
    }
}

fn to_json(value: &impl serde::Serialize) -> String {
    serde_json::to_string(value).expect("reports serialize")
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

fn cmd_tsp(g: &Graph, path: Option<Vec<usize>>, baseline: Option<TspBaseline>) -> CmdResult {
    let start = Instant::now();
    let (tour, states) = match (path, baseline) {
        (Some(ends), None) => {
            let tour = trimmed_ham_path(g, ends[0], ends[1])?;
            let states = tour.as_ref().map(|t| t.states_visited);
            (tour, states)
        }
        (Some(ends), Some(TspBaseline::HeldKarp)) => (held_karp_path(g, ends[0], ends[1])?, None),
        (Some(_), Some(TspBaseline::Oracle)) => {
            return Err(Failure::Input("the oracle baseline only solves cycles".into()));
        }
        (None, None) => {
            let (tour, states) = tsp_cycle_counted(g)?;
            (tour, Some(states))
        }
        (None, Some(TspBaseline::HeldKarp)) => {
            let tour = held_karp_baseline(g)?;
            let states = tour.as_ref().map(|t| t.states_visited);
            (tour, states)
        }
        (None, Some(TspBaseline::Oracle)) => {
            let weight = oracle_tsp(g)?;
            let ms = elapsed_ms(start);
            return Ok(to_json(&match weight {
                Some(w) => json!({"weight": w, "elapsed_ms": ms}),
                None => json!({"feasible": false, "elapsed_ms": ms}),
            }));
        }
    };
    let ms = elapsed_ms(start);
    Ok(to_json(&match tour {
        Some(t) => json!({
            "weight": t.weight,
            "order": t.order,
            "states_visited": t.states_visited,
            "elapsed_ms": ms,
        }),
        None => {
            let mut v = json!({"feasible": false, "elapsed_ms": ms});
            if let Some(s) = states {
                v["states_visited"] = json!(s);
            }
            v
        }
    }))
}

fn cmd_count_pm(g: &Graph, algo: MatchingAlgo) -> CmdResult {
    let start = Instant::now();
    let value = match algo {
        MatchingAlgo::Inex => {
            let out = count_pm_inex_detailed(g)?;
            json!({
                "count": out.count.to_string(),
                "subsets_processed": out.subsets_processed,
                "elapsed_ms": elapsed_ms(start),
            })
        }
        MatchingAlgo::Dp => {
            let out = count_pm_dp_detailed(g, false)?;
            json!({
                "count": out.count.to_string(),
                "states_visited": out.states_visited,
                "elapsed_ms": elapsed_ms(start),
            })
        }
        MatchingAlgo::Oracle => {
            let count = oracle_count_pm(g)?;
            json!({"count": count.to_string(), "elapsed_ms": elapsed_ms(start)})
        }
    };
    Ok(to_json(&value))
}

fn cmd_count_pm_bip(g: &BipartiteGraph, alpha: Rational, baseline: bool) -> CmdResult {
    let start = Instant::now();
    if baseline {
        let count = ryser_baseline(g)?;
        return Ok(to_json(&json!({"count": count.to_string(), "elapsed_ms": elapsed_ms(start)})));
    }
    let out = count_pm_bipartite(g, alpha)?;
    Ok(to_json(&json!({
        "count": out.count.to_string(),
        "stored_states": out.stored_states,
        "pruned_calls": out.pruned_calls,
        "b0_size": out.b0_size,
        "elapsed_ms": elapsed_ms(start),
    })))
}

/// Largest graph for which `stats` enumerates a deg2sets sample.
const STATS_DEG2SETS_MAX_N: usize = 14;

fn cmd_stats(g: &Graph, alpha: Rational) -> CmdResult {
    let prof = g.degree_profile();
    let histogram: BTreeMap<String, usize> = prof.histogram.iter().map(|(d, c)| (d.to_string(), *c)).collect();
    let gap = find_gap_threshold(g, alpha)?;

    let disjoint = if g.n() <= expdeg::VertexSet::CAPACITY {
        let d = prof.avg.max(int(1));
        let max_degree = prof.max_degree();
        let set = find_disjoint_set(g, d, max_degree)?;
        json!({
            "d": d.to_string(),
            "max_degree": max_degree,
            "vertices": set.iter().collect::<Vec<_>>(),
            "size": set.len(),
            "size_bound": disjoint_set_size_bound(g.n(), d, max_degree),
        })
    } else {
        Value::Null
    };

    let sample = if (2..=STATS_DEG2SETS_MAX_N).contains(&g.n()) {
        let (s, t) = (0, g.n() - 1);
        let count = enumerate_deg2sets(g, s, t)?.len();
        let total = 1u64 << g.n();
        json!({
            "s": s,
            "t": t,
            "count": count,
            "ratio": format!("{count}/{total}"),
            "ratio_value": count as f64 / total as f64,
        })
    } else {
        Value::Null
    };

    Ok(to_json(&json!({
        "n": g.n(),
        "m": g.m(),
        "avg_degree": prof.avg.to_string(),
        "max_degree": prof.max_degree(),
        "histogram": histogram,
        "alpha": alpha.to_string(),
        "gap": gap,
        "disjoint_set": disjoint,
        "deg2sets_sample": sample,
    })))
}

fn cmd_gen(
    model: GenModel,
    n: Option<usize>,
    m: Option<usize>,
    d: Option<usize>,
    k: Option<usize>,
    seed: u64,
    max_weight: Option<u64>,
) -> CmdResult {
    let need = |value: Option<usize>, flag: &str| {
        value.ok_or_else(|| Failure::Input(format!("this model needs --{flag}")))
    };
    let model = match model {
        GenModel::Gnm => Model::Gnm {
            n: need(n, "n")?,
            m: need(m, "m")?,
        },
        GenModel::Regular => Model::Regular {
            n: need(n, "n")?,
            d: need(d, "d")?,
        },
        GenModel::Bipartite => Model::Bipartite {
            k: need(k, "k")?,
            m: need(m, "m")?,
        },
    };
    let graph = gen_random_graph(model, seed)?;
    let graph = match (graph, max_weight) {
        (AnyGraph::General(g), Some(w)) => AnyGraph::General(with_random_weights(&g, w, seed)),
        (AnyGraph::Bipartite(_), Some(_)) => {
            return Err(Failure::Input("bipartite graphs are unweighted".into()));
        }
        (g, None) => g,
    };
    Ok(graph.to_string().trim_end().to_string())
}
