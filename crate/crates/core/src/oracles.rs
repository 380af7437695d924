//! Brute-force ground truths. They share no code with the dynamic programs
//! and enumerate in lowest-index-first order, so failures reproduce.

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::error::{check_capacity, Error, Result};
use crate::graph::{BipartiteGraph, Graph};
use crate::pm_inex::BigCount;

/// Size cap and work cap for one oracle call. Work units are recursion
/// nodes or enumerated permutations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_n: usize,
    pub max_work_units: u64,
}

impl OracleBudget {
    pub const COUNT_PM: OracleBudget = OracleBudget {
        max_n: 20,
        max_work_units: 100_000_000,
    };
    pub const TSP: OracleBudget = OracleBudget {
        max_n: 10,
        max_work_units: 1_000_000,
    };
    pub const ALTERNATING_COVERS: OracleBudget = OracleBudget {
        max_n: 12,
        max_work_units: 50_000_000,
    };
    pub const PERMANENT: OracleBudget = OracleBudget {
        max_n: 9,
        max_work_units: 1_000_000,
    };
}

struct Meter {
    used: u64,
    limit: u64,
}

impl Meter {
    fn new(budget: OracleBudget) -> Self {
        Meter {
            used: 0,
            limit: budget.max_work_units,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::Budget(self.limit))
        } else {
            Ok(())
        }
    }
}

pub fn oracle_count_pm(g: &Graph) -> Result<BigCount> {
    oracle_count_pm_within(g, OracleBudget::COUNT_PM)
}

/// Matches the lowest unmatched vertex against each unmatched neighbour.
pub fn oracle_count_pm_within(g: &Graph, budget: OracleBudget) -> Result<BigCount> {
    check_capacity("matching oracle vertex count", budget.max_n, g.n())?;
    if g.n() % 2 == 1 {
        return Ok(BigCount::zero());
    }
    fn go(g: &Graph, matched: &mut Vec<bool>, meter: &mut Meter) -> Result<u64> {
        meter.tick()?;
        let Some(v) = matched.iter().position(|&m| !m) else {
            return Ok(1);
        };
        matched[v] = true;
        let mut total = 0;
        for &(u, _) in g.neighbors(v) {
            if !matched[u] {
                matched[u] = true;
                total += go(g, matched, meter)?;
                matched[u] = false;
            }
        }
        matched[v] = false;
        Ok(total)
    }
    let mut meter = Meter::new(budget);
    go(g, &mut vec![false; g.n()], &mut meter).map(BigCount::from)
}

/// Minimum Hamiltonian cycle weight over all orders starting at vertex 0.
pub fn oracle_tsp(g: &Graph) -> Result<Option<u64>> {
    oracle_tsp_within(g, OracleBudget::TSP)
}

pub fn oracle_tsp_within(g: &Graph, budget: OracleBudget) -> Result<Option<u64>> {
    let n = g.n();
    check_capacity("TSP oracle vertex count", budget.max_n, n)?;
    if n < 3 {
        return Ok(None);
    }
    let mut meter = Meter::new(budget);
    let mut best: Option<u64> = None;
    for rest in (1..n).permutations(n - 1) {
        meter.tick()?;
        let order: Vec<usize> = std::iter::once(0).chain(rest).collect();
        let weight: Option<u64> = (0..n)
            .map(|i| g.weight(order[i], order[(i + 1) % n]))
            .sum();
        if let Some(w) = weight {
            best = Some(best.map_or(w, |b| b.min(w)));
        }
    }
    Ok(best)
}

pub fn oracle_alternating_covers(g: &Graph) -> Result<BigCount> {
    oracle_alternating_covers_within(g, OracleBudget::ALTERNATING_COVERS)
}

/// Counts sets of graph ("black") edges that, together with the red pairing
/// `v_{2i} v_{2i+1}`, form a cycle cover whose cycles alternate colors.
/// A black edge parallel to a red one closes a 2-cycle.
pub fn oracle_alternating_covers_within(g: &Graph, budget: OracleBudget) -> Result<BigCount> {
    let n = g.n();
    check_capacity("alternating cover oracle vertex count", budget.max_n, n)?;
    if n % 2 == 1 {
        return Ok(BigCount::zero());
    }
    let black: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    let mut degree = vec![1usize; n]; // every vertex carries one red edge
    let mut chosen = Vec::new();
    let mut meter = Meter::new(budget);
    let mut count = 0u64;
    enumerate_black(&black, 0, &mut degree, &mut chosen, &mut meter, &mut count)?;
    Ok(BigCount::from(count))
}

/// Include/exclude each black edge in order; a vertex never exceeds total
/// degree 2, which every cycle cover respects.
fn enumerate_black(
    black: &[(usize, usize)],
    next: usize,
    degree: &mut Vec<usize>,
    chosen: &mut Vec<(usize, usize)>,
    meter: &mut Meter,
    count: &mut u64,
) -> Result<()> {
    meter.tick()?;
    if next == black.len() {
        if is_alternating_cover(degree.len(), chosen) {
            *count += 1;
        }
        return Ok(());
    }
    let (u, v) = black[next];
    if degree[u] < 2 && degree[v] < 2 {
        degree[u] += 1;
        degree[v] += 1;
        chosen.push((u, v));
        enumerate_black(black, next + 1, degree, chosen, meter, count)?;
        chosen.pop();
        degree[u] -= 1;
        degree[v] -= 1;
    }
    enumerate_black(black, next + 1, degree, chosen, meter, count)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Color {
    Red,
    Black,
}

fn is_alternating_cover(n: usize, black: &[(usize, usize)]) -> bool {
    // incident[v] lists (edge id, other end, color)
    let mut incident: Vec<Vec<(usize, usize, Color)>> = vec![Vec::new(); n];
    let mut id = 0;
    for i in 0..n / 2 {
        incident[2 * i].push((id, 2 * i + 1, Color::Red));
        incident[2 * i + 1].push((id, 2 * i, Color::Red));
        id += 1;
    }
    for &(u, v) in black {
        incident[u].push((id, v, Color::Black));
        incident[v].push((id, u, Color::Black));
        id += 1;
    }
    if incident.iter().any(|list| list.len() != 2) {
        return false;
    }
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        // Walk the cycle through `start`, leaving along its first edge.
        let (mut edge, mut at, mut color) = incident[start][0];
        seen[start] = true;
        loop {
            let Some(&(next_edge, next_at, next_color)) = incident[at].iter().find(|e| e.0 != edge) else {
                return false;
            };
            if next_color == color {
                return false;
            }
            seen[at] = true;
            if at == start {
                break;
            }
            (edge, at, color) = (next_edge, next_at, next_color);
        }
    }
    true
}

pub fn oracle_permanent(g: &BipartiteGraph) -> Result<BigCount> {
    oracle_permanent_within(g, OracleBudget::PERMANENT)
}

/// Sum over all permutations `σ` of `Π_i [a_i b_{σ(i)} ∈ E]`.
pub fn oracle_permanent_within(g: &BipartiteGraph, budget: OracleBudget) -> Result<BigCount> {
    let k = g.k();
    check_capacity("permanent oracle side size", budget.max_n, k)?;
    if k == 0 {
        return Ok(BigCount::one());
    }
    let mut meter = Meter::new(budget);
    let mut count = 0u64;
    for sigma in (0..k).permutations(k) {
        meter.tick()?;
        if sigma.iter().enumerate().all(|(i, &j)| g.has_edge(i, j)) {
            count += 1;
        }
    }
    Ok(BigCount::from(count))
}
