//! State-count benchmark over seeded ensembles.
//!
//! Each row records how many table states one algorithm materialized on one
//! instance; the summary reports `mean log2(states) / n` per `(n, d)`
//! (divided by `n/2` for matchings, where `n/2` is the exponent of the
//! exhaustive baseline).

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{gnm, random_bipartite, random_regular, with_random_weights, Graph};
use crate::pm_bipartite::count_pm_bipartite;
use crate::pm_dp::count_pm_dp_detailed;
use crate::pm_inex::count_pm_inex_detailed;
use crate::rational::{floor_u, int, Rational};
use crate::tsp::tsp_cycle_counted;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BenchAlgorithm {
    Tsp,
    PmDp,
    PmInex,
    Bipartite,
}

impl BenchAlgorithm {
    pub fn name(self) -> &'static str {
        match self {
            BenchAlgorithm::Tsp => "tsp",
            BenchAlgorithm::PmDp => "pm-dp",
            BenchAlgorithm::PmInex => "pm-inex",
            BenchAlgorithm::Bipartite => "bip",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnsembleModel {
    /// `m = ⌊d·n/2⌋` uniform edges.
    Gnm,
    /// `d`-regular; `d` must be an integer.
    Regular,
    /// Bipartite with `k = n` per side and `m = ⌊d·k⌋`.
    Bipartite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchSpec {
    pub algorithm: BenchAlgorithm,
    pub model: EnsembleModel,
    pub sizes: Vec<usize>,
    pub degree: Rational,
    pub seeds: Vec<u64>,
    /// Trimming parameter for the bipartite algorithm.
    pub alpha: Rational,
    /// TSP edge weights are drawn from `1..=max_weight`.
    pub max_weight: u64,
}

/// CSV columns, in order: `algorithm,n,d,seed,m,states,pruned_calls,result,elapsed_ms`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BenchRow {
    pub algorithm: &'static str,
    /// Vertices, or side size for bipartite instances.
    pub n: usize,
    pub d: String,
    pub seed: u64,
    pub m: usize,
    pub states: usize,
    pub pruned_calls: u64,
    /// Count or tour weight as a decimal string, `"none"` for no tour.
    pub result: String,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchSummary {
    pub n: usize,
    pub d: String,
    pub instances: usize,
    /// Mean of `log2(states) / exponent`.
    pub mean_normalized_log2_states: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub summary: Vec<BenchSummary>,
}

pub const CSV_HEADER: &str = "algorithm,n,d,seed,m,states,pruned_calls,result,elapsed_ms";

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut out = format!("{CSV_HEADER}\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                r.algorithm, r.n, r.d, r.seed, r.m, r.states, r.pruned_calls, r.result, r.elapsed_ms
            );
        }
        out
    }
}

pub fn run_bench(spec: &BenchSpec) -> Result<BenchReport> {
    let jobs: Vec<(usize, u64)> = spec
        .sizes
        .iter()
        .flat_map(|&n| spec.seeds.iter().map(move |&s| (n, s)))
        .collect();
    let mut rows = jobs
        .par_iter()
        .map(|&(n, seed)| run_one(spec, n, seed))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| (a.n, &a.d, a.seed).cmp(&(b.n, &b.d, b.seed)));

    let mut summary: Vec<BenchSummary> = Vec::new();
    for row in &rows {
        let exponent = match spec.algorithm {
            BenchAlgorithm::Tsp => row.n as f64,
            BenchAlgorithm::PmDp | BenchAlgorithm::PmInex => row.n as f64 / 2.0,
            BenchAlgorithm::Bipartite => row.n as f64,
        };
        let value = (row.states.max(1) as f64).log2() / exponent.max(1.0);
        match summary.last_mut() {
            Some(s) if s.n == row.n && s.d == row.d => {
                s.mean_normalized_log2_states += value;
                s.instances += 1;
            }
            _ => summary.push(BenchSummary {
                n: row.n,
                d: row.d.clone(),
                instances: 1,
                mean_normalized_log2_states: value,
            }),
        }
    }
    for s in &mut summary {
        s.mean_normalized_log2_states /= s.instances as f64;
    }
    Ok(BenchReport { rows, summary })
}

fn general_instance(spec: &BenchSpec, n: usize, seed: u64) -> Result<Graph> {
    match spec.model {
        EnsembleModel::Gnm => gnm(n, floor_u(spec.degree * int(n as i64) / 2), seed),
        EnsembleModel::Regular => {
            if !spec.degree.is_integer() {
                return Err(Error::precondition("regular ensembles need an integer degree"));
            }
            random_regular(n, floor_u(spec.degree), seed)
        }
        EnsembleModel::Bipartite => Err(Error::precondition("this algorithm needs a general graph model")),
    }
}

fn run_one(spec: &BenchSpec, n: usize, seed: u64) -> Result<BenchRow> {
    let start = Instant::now();
    let (m, states, pruned_calls, result) = match spec.algorithm {
        BenchAlgorithm::Tsp => {
            let g = with_random_weights(&general_instance(spec, n, seed)?, spec.max_weight, seed);
            let (tour, states) = tsp_cycle_counted(&g)?;
            let result = tour.map_or_else(|| "none".to_string(), |t| t.weight.to_string());
            (g.m(), states, 0, result)
        }
        BenchAlgorithm::PmDp => {
            let g = general_instance(spec, n, seed)?;
            let out = count_pm_dp_detailed(&g, false)?;
            (g.m(), out.states_visited, 0, out.count.to_string())
        }
        BenchAlgorithm::PmInex => {
            let g = general_instance(spec, n, seed)?;
            let out = count_pm_inex_detailed(&g)?;
            (g.m(), out.subsets_processed as usize, 0, out.count.to_string())
        }
        BenchAlgorithm::Bipartite => {
            if spec.model != EnsembleModel::Bipartite {
                return Err(Error::precondition("the bipartite algorithm needs the bipartite model"));
            }
            let g = random_bipartite(n, floor_u(spec.degree * int(n as i64)), seed)?;
            let out = count_pm_bipartite(&g, spec.alpha)?;
            (g.m(), out.stored_states, out.pruned_calls, out.count.to_string())
        }
    };
    Ok(BenchRow {
        algorithm: spec.algorithm.name(),
        n,
        d: spec.degree.to_string(),
        seed,
        m,
        states,
        pruned_calls,
        result,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}
