//! Acceptance suite: one `[PASS]`/`[FAIL]` line per criterion.
//! Exits nonzero if any criterion fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;

use expdeg::graph::{gnm, named, random_bipartite, random_regular, with_random_weights};
use expdeg::oracles::{oracle_alternating_covers, oracle_count_pm, oracle_permanent, oracle_tsp};
use expdeg::pm_bipartite::{count_pm_bipartite, default_alpha, reduce_degree_one, ryser_baseline, state_bound};
use expdeg::pm_dp::count_pm_dp_detailed;
use expdeg::pm_inex::count_pm_inex_detailed;
use expdeg::rational::{int, parse_rational, Rational};
use expdeg::structure::{deg2sets_contains, disjoint_set_size_bound, find_disjoint_set, find_gap_threshold};
use expdeg::tsp::{cycle_anchor, held_karp_baseline, held_karp_path, trimmed_ham_path, tsp_cycle, PathTable};
use expdeg::{BigCount, Graph};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn factorial(r: usize) -> BigCount {
    (1..=r).map(BigCount::from).product()
}

/// Both counting algorithms on `g`, with their divisibility identities.
fn checked_counts(g: &Graph) -> Result<(BigCount, BigCount), String> {
    let inex = count_pm_inex_detailed(g).map_err(|e| format!("inex on {g:?}: {e}"))?;
    for (i, acc) in inex.accumulators.iter().enumerate() {
        ensure!(acc.is_multiple_of(&factorial(i + 1)), "acc_{} = {acc} not divisible", i + 1);
    }
    let dp = count_pm_dp_detailed(g, false).map_err(|e| format!("dp on {g:?}: {e}"))?;
    for (q, term) in &dp.terms {
        ensure!(term.is_multiple_of(&factorial(*q)), "t[{q}][V'] = {term} not divisible");
    }
    Ok((inex.count, dp.count))
}

fn criterion_1() -> Outcome {
    let mut rng = common::rng(1);
    let mut graphs: Vec<Graph> = (0..300).map(|_| common::random_graph(&mut rng, 2..=12)).collect();
    graphs.extend([
        named::complete(2),
        named::complete(4),
        named::cycle(4),
        named::cycle(6),
        named::complete_bipartite(3, 3),
        named::petersen(),
    ]);
    let mut nonzero = 0;
    for g in &graphs {
        let (inex, dp) = checked_counts(g)?;
        let oracle = oracle_count_pm(g).map_err(|e| e.to_string())?;
        ensure!(inex == oracle && dp == oracle, "{g:?}: inex {inex}, dp {dp}, oracle {oracle}");
        nonzero += usize::from(!oracle.is_zero());
    }
    Ok(format!("{} graphs, {nonzero} with perfect matchings", graphs.len()))
}

fn criterion_2() -> Outcome {
    let mut rng = common::rng(2);
    for _ in 0..100 {
        let g = common::random_graph(&mut rng, 2..=10);
        let covers = oracle_alternating_covers(&g).map_err(|e| e.to_string())?;
        let matchings = oracle_count_pm(&g).map_err(|e| e.to_string())?;
        ensure!(covers == matchings, "{g:?}: covers {covers}, matchings {matchings}");
    }
    Ok("100 graphs".into())
}

fn alphas() -> [Rational; 3] {
    [Rational::new(5, 2), default_alpha(), int(5)]
}

fn criterion_3() -> Outcome {
    let mut rng = common::rng(3);
    for _ in 0..300 {
        let g = common::random_bigraph(&mut rng, 1..=8);
        let ryser = ryser_baseline(&g).map_err(|e| e.to_string())?;
        let oracle = oracle_permanent(&g).map_err(|e| e.to_string())?;
        ensure!(ryser == oracle, "{g:?}: ryser {ryser}, oracle {oracle}");
        for alpha in alphas() {
            let dp = count_pm_bipartite(&g, alpha).map_err(|e| e.to_string())?.count;
            ensure!(dp == oracle, "{g:?} alpha {alpha}: dp {dp}, oracle {oracle}");
        }
    }
    Ok("300 instances x 3 alphas".into())
}

fn criterion_4() -> Outcome {
    let degrees = ["2", "2.5", "3", "3.5", "4"].map(|d| parse_rational(d).unwrap());
    let mut runs = 0;
    let mut worst: f64 = 0.0;
    for k in (4..=24).step_by(2) {
        for d in degrees {
            for seed in 0..2 {
                let m = (d * int(k as i64)).to_integer() as usize;
                let g = random_bipartite(k, m, seed).map_err(|e| e.to_string())?;
                let reduced_k = reduce_degree_one(&g).g.k();
                for alpha in alphas() {
                    let out = count_pm_bipartite(&g, alpha).map_err(|e| e.to_string())?;
                    let bound = state_bound(reduced_k, out.b0_size, alpha);
                    ensure!(
                        num_bigint::BigInt::from(out.stored_states) <= bound,
                        "k {k}, d {d}, seed {seed}, alpha {alpha}: stored {} > bound {bound}",
                        out.stored_states
                    );
                    let ratio = out.stored_states as f64 / bound.to_string().parse::<f64>().unwrap();
                    worst = worst.max(ratio);
                    runs += 1;
                }
            }
        }
    }
    Ok(format!("{runs} runs, max stored/bound = {worst:.3}"))
}

fn criterion_5() -> Outcome {
    let mut rng = common::rng(5);
    let mut with_oracle = 0;
    let mut feasible = 0;
    for _ in 0..200 {
        let g = common::random_weighted(&mut rng, 3..=14, 50);
        let trimmed = tsp_cycle(&g).map_err(|e| e.to_string())?;
        let dense = held_karp_baseline(&g).map_err(|e| e.to_string())?;
        let weight = trimmed.as_ref().map(|t| t.weight);
        ensure!(weight == dense.as_ref().map(|t| t.weight), "{g:?}: cycle {weight:?} vs dense");
        if let Some(t) = &trimmed {
            ensure!(t.is_hamiltonian_cycle(&g), "{g:?}: tour {:?} does not verify", t.order);
            feasible += 1;
        }
        if let Some(t) = &dense {
            ensure!(t.is_hamiltonian_cycle(&g), "{g:?}: dense tour does not verify");
        }
        if g.n() <= 9 {
            ensure!(weight == oracle_tsp(&g).map_err(|e| e.to_string())?, "{g:?}: oracle disagrees");
            with_oracle += 1;
        }
        let (a, b) = (0, g.n() - 1);
        let path = trimmed_ham_path(&g, a, b).map_err(|e| e.to_string())?;
        let dense_path = held_karp_path(&g, a, b).map_err(|e| e.to_string())?;
        ensure!(
            path.as_ref().map(|t| t.weight) == dense_path.as_ref().map(|t| t.weight),
            "{g:?}: path weights differ"
        );
        if let Some(t) = &path {
            ensure!(t.is_hamiltonian_path(&g) && t.order[0] == a && t.order[g.n() - 1] == b, "path does not verify");
        }
    }
    Ok(format!("200 graphs ({feasible} Hamiltonian), {with_oracle} also against the oracle"))
}

fn criterion_6() -> Outcome {
    let mut rng = common::rng(6);
    let mut checked = 0usize;
    for _ in 0..50 {
        let g = common::random_graph(&mut rng, 2..=12);
        let source = if rng.gen_bool(0.5) { cycle_anchor(&g) } else { rng.gen_range(0..g.n()) };
        let table = PathTable::build(&g, source).map_err(|e| e.to_string())?;
        for (set, v) in table.states() {
            if v == source {
                continue; // the initial state ({a}, a); deg2sets needs s != t
            }
            let interior = set.without(source).without(v);
            let witness = deg2sets_contains(&g, source, v, interior).map_err(|e| e.to_string())?;
            ensure!(
                witness.is_some_and(|w| w.verify(&g, source, v)),
                "{g:?}: state ({set:?}, {v}) from {source} has no witness"
            );
            checked += 1;
        }
    }
    Ok(format!("{checked} states, 0 violations"))
}

fn criterion_7() -> Outcome {
    let mut rng = common::rng(7);
    let alphas = ["0.5", "1", "2", "3.55"].map(|a| parse_rational(a).unwrap());
    for i in 0..200 {
        let g = common::random_graph(&mut rng, 2..=40);
        // Skew some graphs toward sparse to exercise larger disjoint sets.
        let g = if i % 2 == 0 { gnm(g.n(), g.m() / 4, i).unwrap() } else { g };
        let prof = g.degree_profile();
        let d = prof.avg.max(int(1));
        let max_degree = prof.max_degree();
        let set = find_disjoint_set(&g, d, max_degree).map_err(|e| e.to_string())?;
        let bound = disjoint_set_size_bound(g.n(), d, max_degree);
        let by_formula = (int(g.n() as i64) / (int(2) + int(4) * d * int(max_degree as i64))).ceil().to_integer();
        ensure!(bound as i64 == by_formula, "size bound {bound} vs {by_formula}");
        ensure!(set.len() >= bound, "{g:?}: |A| = {} < {bound}", set.len());
        let members: Vec<usize> = set.iter().collect();
        let closed = |v: usize| -> Vec<usize> {
            let mut c: Vec<usize> = g.neighbors(v).iter().map(|&(u, _)| u).collect();
            c.push(v);
            c
        };
        for (i, &x) in members.iter().enumerate() {
            ensure!(int(g.degree(x) as i64) <= int(2) * d, "deg({x}) > 2d");
            for &y in &members[i + 1..] {
                let cx = closed(x);
                ensure!(closed(y).iter().all(|u| !cx.contains(u)), "N[{x}] meets N[{y}]");
            }
        }

        for alpha in alphas {
            let gap = find_gap_threshold(&g, alpha).map_err(|e| e.to_string())?;
            let big_d = gap.threshold;
            ensure!(big_d >= 1, "D = 0");
            let e_alpha = alpha.numer().to_owned() as f64 / *alpha.denom() as f64;
            ensure!((big_d as f64) <= e_alpha.exp() * (1.0 + 1e-12), "D = {big_d} > e^{alpha}");
            let count_above = (0..g.n()).filter(|&v| g.degree(v) > big_d).count();
            let nd = int(2 * g.m() as i64);
            ensure!(
                int(count_above as i64) * alpha * int(big_d as i64) <= nd,
                "{g:?}: |V>D| = {count_above} exceeds nd/(alpha D) at D = {big_d}"
            );
            for smaller in 1..big_d {
                let above = (0..g.n()).filter(|&v| g.degree(v) > smaller).count();
                ensure!(
                    int(above as i64) * alpha * int(smaller as i64) > nd,
                    "D = {smaller} already satisfies the gap inequality"
                );
            }
        }
    }
    Ok("200 graphs x 4 alphas".into())
}

fn criterion_8() -> Outcome {
    let mut rng = common::rng(8);
    let mut graphs: Vec<Graph> = (0..100).map(|_| common::random_graph(&mut rng, 2..=14)).collect();
    graphs.extend([named::complete(8), named::complete(10), named::petersen(), named::complete_bipartite(5, 5)]);
    for g in &graphs {
        let (inex, dp) = checked_counts(g)?;
        ensure!(inex == dp, "{g:?}: {inex} vs {dp}");
    }
    Ok(format!("{} graphs, every accumulator and term divisible", graphs.len()))
}

fn criterion_9() -> Outcome {
    let mut report = Vec::new();
    for n in [18usize, 20] {
        let seeds = 10u64;
        let mut total = 0.0;
        for seed in 0..seeds {
            let g = with_random_weights(&random_regular(n, 3, seed).map_err(|e| e.to_string())?, 100, seed);
            let table = PathTable::build(&g, cycle_anchor(&g)).map_err(|e| e.to_string())?;
            total += table.states_visited() as f64 / (1u64 << n) as f64;
        }
        let mean = total / seeds as f64;
        ensure!(mean < 0.5, "3-regular n = {n}: mean states/2^n = {mean:.4}");
        report.push(format!("tsp n={n}: {mean:.4}"));
    }
    let (k, seeds) = (20usize, 10u64);
    let mut total = 0.0;
    for seed in 0..seeds {
        let g = random_bipartite(k, 50, seed).map_err(|e| e.to_string())?;
        let out = count_pm_bipartite(&g, default_alpha()).map_err(|e| e.to_string())?;
        total += out.stored_states as f64 / (1u64 << k) as f64;
    }
    let mean = total / seeds as f64;
    ensure!(mean < 0.5, "bipartite k = 20, d = 2.5: mean stored/2^k = {mean:.4}");
    report.push(format!("bip k=20 d=2.5: {mean:.4}"));
    Ok(report.join(", "))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("matching counts: inex = dp = oracle", criterion_1),
        ("alternating covers = matchings", criterion_2),
        ("bipartite: trimmed = Ryser = permutations, alpha-invariant", criterion_3),
        ("bipartite stored-state bound", criterion_4),
        ("TSP: trimmed = Held-Karp = oracle, tours verify", criterion_5),
        ("TSP states lie in deg2sets", criterion_6),
        ("disjoint set and degree gap postconditions", criterion_7),
        ("divisibility of accumulators and terms", criterion_8),
        ("trimmed state spaces below half of 2^n", criterion_9),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] criterion {}: {name} ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {}: {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
