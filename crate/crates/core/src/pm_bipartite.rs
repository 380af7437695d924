//! Counting perfect matchings of bipartite graphs (permanents of 0/1
//! matrices) by memoized subset DP over side `B`, with a skip rule.
//!
//! `t[X]` is the number of perfect matchings between the first `|X|`
//! vertices of side `A` (in a chosen order) and `X ⊆ B`. After forcing all
//! degree-1 vertices, let `B₀` be the `⌊k/(αd)⌋` vertices of `B` with
//! smallest degree and `A₀ = N(B₀)`. Ordering `A ∖ A₀` first makes every
//! vertex of `X ∩ B₀` isolated in the subproblem whenever
//! `|X| ≤ (1 − 1/α)k`, so such states are zero and are never stored.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{check_capacity, Error, Result};
use crate::graph::BipartiteGraph;
use crate::pm_inex::BigCount;
use crate::rational::{ceil_u, floor_u, int, Rational};
use crate::vertex_set::VertexSet;

/// Largest instance [`ryser_baseline`] accepts.
pub const RYSER_MAX_K: usize = 30;

/// Default trimming parameter.
pub fn default_alpha() -> Rational {
    Rational::new(355, 100)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedInstance {
    /// Remaining graph, reindexed; every vertex has degree ≥ 2.
    pub g: BipartiteGraph,
    /// False when some vertex became isolated: the count is 0.
    pub feasible: bool,
    /// Forced matches `(a, b)` in original indices, in the order found.
    pub removed_pairs: Vec<(usize, usize)>,
    /// Original index of each remaining vertex of `A`, resp. `B`.
    pub kept_a: Vec<usize>,
    pub kept_b: Vec<usize>,
}

/// Repeatedly matches degree-1 vertices to their only neighbour.
pub fn reduce_degree_one(g: &BipartiteGraph) -> ReducedInstance {
    let k = g.k();
    let mut alive_a = VertexSet::full(k);
    let mut alive_b = VertexSet::full(k);
    let mut removed_pairs = Vec::new();
    let mut feasible = true;
    'outer: loop {
        for i in alive_a {
            let nb = g.neighbors_a(i).intersection(alive_b);
            match nb.len() {
                0 => {
                    feasible = false;
                    break 'outer;
                }
                1 => {
                    let j = nb.first().expect("one neighbour");
                    removed_pairs.push((i, j));
                    alive_a.remove(i);
                    alive_b.remove(j);
                    continue 'outer;
                }
                _ => {}
            }
        }
        for j in alive_b {
            let nb = g.neighbors_b(j).intersection(alive_a);
            match nb.len() {
                0 => {
                    feasible = false;
                    break 'outer;
                }
                1 => {
                    let i = nb.first().expect("one neighbour");
                    removed_pairs.push((i, j));
                    alive_a.remove(i);
                    alive_b.remove(j);
                    continue 'outer;
                }
                _ => {}
            }
        }
        break;
    }
    let kept_a: Vec<usize> = alive_a.iter().collect();
    let kept_b: Vec<usize> = alive_b.iter().collect();
    let mut index_b = vec![usize::MAX; k];
    for (new, &old) in kept_b.iter().enumerate() {
        index_b[old] = new;
    }
    let edges: Vec<(usize, usize)> = kept_a
        .iter()
        .enumerate()
        .flat_map(|(new_i, &old_i)| {
            g.neighbors_a(old_i)
                .intersection(alive_b)
                .iter()
                .map(|j| (new_i, index_b[j]))
                .collect::<Vec<_>>()
        })
        .collect();
    let size = if feasible { kept_a.len() } else { 0 };
    let reduced = if feasible {
        BipartiteGraph::new(size, edges).expect("subgraph of a valid graph")
    } else {
        BipartiteGraph::new(0, []).expect("empty graph")
    };
    ReducedInstance {
        g: reduced,
        feasible,
        removed_pairs,
        kept_a,
        kept_b,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrimPlan {
    pub k: usize,
    pub alpha: Rational,
    /// `|E| / k`.
    pub d: Rational,
    pub b0: VertexSet,
    pub a0: VertexSet,
    /// `A ∖ A₀` ascending, then `A₀` ascending.
    pub order_a: Vec<usize>,
}

impl TrimPlan {
    /// Whether a state of this size touching `B₀` is skipped:
    /// `|X| ≤ (1 − 1/α)k`.
    pub fn skips_size(&self, size: usize) -> bool {
        int(size as i64) * self.alpha <= (self.alpha - 1) * int(self.k as i64)
    }
}

pub fn plan_trim(g: &BipartiteGraph, alpha: Rational) -> Result<TrimPlan> {
    if alpha <= int(2) {
        return Err(Error::precondition(format!("alpha must exceed 2, got {alpha}")));
    }
    let k = g.k();
    if (0..k).any(|v| g.neighbors_a(v).len() < 2 || g.neighbors_b(v).len() < 2) {
        return Err(Error::precondition("trimming needs minimum degree 2; reduce first"));
    }
    let (d, b0_size) = if k == 0 {
        (int(0), 0)
    } else {
        let d = Rational::new(g.m() as i64, k as i64);
        (d, floor_u(int(k as i64) / (alpha * d)))
    };
    let mut by_degree: Vec<usize> = (0..k).collect();
    by_degree.sort_by_key(|&j| (g.neighbors_b(j).len(), j));
    let b0: VertexSet = by_degree[..b0_size].iter().copied().collect();
    let a0 = b0
        .iter()
        .fold(VertexSet::empty(), |acc, j| acc.union(g.neighbors_b(j)));
    if int(a0.len() as i64) * alpha > int(k as i64) {
        return Err(Error::Invariant(format!("|A0| = {} exceeds k/alpha", a0.len())));
    }
    let order_a = VertexSet::full(k)
        .difference(a0)
        .iter()
        .chain(a0.iter())
        .collect();
    Ok(TrimPlan {
        k,
        alpha,
        d,
        b0,
        a0,
        order_a,
    })
}

/// Upper bound on stored states: `2^{k−|B₀|+1} + k·C(k, ⌈k/α⌉) + 1`.
pub fn state_bound(k: usize, b0_size: usize, alpha: Rational) -> BigInt {
    let top = ceil_u(int(k as i64) / alpha).min(k);
    let binom = (0..top).fold(BigInt::one(), |acc, i| acc * (k - i) / (i + 1));
    (BigInt::one() << (k - b0_size + 1)) + binom * k + 1
}

/// Result of the memoized evaluation on an already reduced instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrimmedRun {
    pub count: BigCount,
    pub stored_states: usize,
    pub pruned_calls: u64,
    pub pruned_sets: Option<Vec<VertexSet>>,
}

struct Evaluator<'a> {
    g: &'a BipartiteGraph,
    plan: &'a TrimPlan,
    memo: HashMap<VertexSet, BigCount>,
    pruned_calls: u64,
    pruned_sets: Option<Vec<VertexSet>>,
}

impl Evaluator<'_> {
    fn eval(&mut self, set: VertexSet) -> BigCount {
        let size = set.len();
        if size > 0 && self.plan.skips_size(size) && !set.is_disjoint(self.plan.b0) {
            self.pruned_calls += 1;
            if let Some(log) = self.pruned_sets.as_mut() {
                log.push(set);
            }
            return BigCount::zero();
        }
        if let Some(value) = self.memo.get(&set) {
            return value.clone();
        }
        let value = if size == 0 {
            BigCount::one()
        } else {
            let a = self.plan.order_a[size - 1];
            let mut total = BigCount::zero();
            for v in self.g.neighbors_a(a).intersection(set) {
                total += self.eval(set.without(v));
            }
            total
        };
        self.memo.insert(set, value.clone());
        value
    }
}

pub fn run_trimmed_dp(g: &BipartiteGraph, plan: &TrimPlan, record_pruned: bool) -> TrimmedRun {
    let mut ev = Evaluator {
        g,
        plan,
        memo: HashMap::new(),
        pruned_calls: 0,
        pruned_sets: record_pruned.then(Vec::new),
    };
    let count = ev.eval(VertexSet::full(g.k()));
    TrimmedRun {
        count,
        stored_states: ev.memo.len(),
        pruned_calls: ev.pruned_calls,
        pruned_sets: ev.pruned_sets,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BipOutcome {
    #[serde(serialize_with = "crate::report::decimal")]
    pub count: BigCount,
    pub stored_states: usize,
    pub pruned_calls: u64,
    pub b0_size: usize,
    /// `k` after reduction.
    pub reduced_k: usize,
    #[serde(serialize_with = "crate::report::decimal")]
    pub state_bound: BigInt,
}

pub fn count_pm_bipartite(g: &BipartiteGraph, alpha: Rational) -> Result<BipOutcome> {
    check_capacity("bipartite side size", VertexSet::CAPACITY, g.k())?;
    if alpha <= int(2) {
        return Err(Error::precondition(format!("alpha must exceed 2, got {alpha}")));
    }
    let reduced = reduce_degree_one(g);
    if !reduced.feasible {
        return Ok(BipOutcome {
            count: BigCount::zero(),
            stored_states: 0,
            pruned_calls: 0,
            b0_size: 0,
            reduced_k: 0,
            state_bound: state_bound(0, 0, alpha),
        });
    }
    let plan = plan_trim(&reduced.g, alpha)?;
    let run = run_trimmed_dp(&reduced.g, &plan, false);
    let bound = state_bound(plan.k, plan.b0.len(), alpha);
    if BigInt::from(run.stored_states) > bound {
        return Err(Error::Invariant(format!(
            "stored {} states, bound is {bound}",
            run.stored_states
        )));
    }
    Ok(BipOutcome {
        count: run.count,
        stored_states: run.stored_states,
        pruned_calls: run.pruned_calls,
        b0_size: plan.b0.len(),
        reduced_k: plan.k,
        state_bound: bound,
    })
}

/// Permanent of the biadjacency matrix by Ryser's formula, with columns
/// visited in Gray-code order.
pub fn ryser_baseline(g: &BipartiteGraph) -> Result<BigCount> {
    let k = g.k();
    check_capacity("Ryser side size", RYSER_MAX_K, k)?;
    if k == 0 {
        return Ok(BigCount::one());
    }
    let mut row_sums = vec![0i64; k];
    let mut columns = 0u64;
    let mut small: i128 = 0;
    let mut big = BigInt::zero();
    for step in 1u64..1 << k {
        let j = step.trailing_zeros() as usize;
        let delta = if columns >> j & 1 == 0 { 1 } else { -1 };
        columns ^= 1 << j;
        for i in g.neighbors_b(j) {
            row_sums[i] += delta;
        }
        if row_sums.contains(&0) {
            continue;
        }
        let negative = (k - columns.count_ones() as usize) % 2 == 1;
        accumulate(&mut small, &mut big, &row_sums, negative);
    }
    let total = big + small;
    if total.is_negative() {
        return Err(Error::Invariant("negative permanent".into()));
    }
    Ok(total)
}

/// Adds `±Π row_sums` to `small + big`, spilling into `big` on i128 overflow.
fn accumulate(small: &mut i128, big: &mut BigInt, row_sums: &[i64], negative: bool) {
    match row_product(row_sums) {
        Some(t) => {
            let signed = if negative { -t } else { t };
            match small.checked_add(signed) {
                Some(s) => *small = s,
                None => {
                    *big += *small;
                    *small = signed;
                }
            }
        }
        None => {
            let t: BigInt = row_sums.iter().map(|&s| BigInt::from(s)).product();
            *big += if negative { -t } else { t };
        }
    }
}

fn row_product(row_sums: &[i64]) -> Option<i128> {
    row_sums.iter().try_fold(1i128, |acc, &s| acc.checked_mul(s as i128))
}
