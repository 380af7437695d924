//! Cheapest Hamiltonian paths and cycles by subset dynamic programming.
//!
//! [`PathTable`] is the trimmed variant: it stores `t[X][v]`, the cheapest
//! cost of a path from the source `a` to `v` with vertex set exactly `X`,
//! only for pairs `(X, v)` that some path actually realizes. Those sets
//! satisfy `X ∖ {a, v} ∈ deg2sets(G, a, v)`, so on sparse graphs the table
//! stays well below the `n·2^{n-1}` entries of the dense
//! [`held_karp_baseline`].

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{check_capacity, Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Largest graph the dense baseline accepts.
pub const HELD_KARP_MAX_N: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TourResult {
    pub weight: u64,
    /// Vertex sequence; for cycles the closing edge back to `order[0]` is implied.
    pub order: Vec<usize>,
    pub states_visited: usize,
}

impl TourResult {
    /// Checks that `order` is a Hamiltonian path of `g` whose weight is `weight`.
    pub fn is_hamiltonian_path(&self, g: &Graph) -> bool {
        self.is_permutation(g) && path_weight(g, &self.order, false) == Some(self.weight)
    }

    /// Checks that `order` is a Hamiltonian cycle of `g` whose weight is `weight`.
    pub fn is_hamiltonian_cycle(&self, g: &Graph) -> bool {
        g.n() >= 3 && self.is_permutation(g) && path_weight(g, &self.order, true) == Some(self.weight)
    }

    fn is_permutation(&self, g: &Graph) -> bool {
        let mut seen = vec![false; g.n()];
        self.order.len() == g.n() && self.order.iter().all(|&v| v < g.n() && !std::mem::replace(&mut seen[v], true))
    }
}

fn path_weight(g: &Graph, order: &[usize], closed: bool) -> Option<u64> {
    let mut total = 0u64;
    for pair in order.windows(2) {
        total += g.weight(pair[0], pair[1])?;
    }
    if closed {
        total += g.weight(*order.last()?, order[0])?;
    }
    Some(total)
}

type StateKey = (u64, u8);

/// The trimmed table `t[X][v]` for a fixed source, built layer by layer.
///
/// Only the final layer's costs are kept; earlier layers survive as sorted
/// parent logs, enough to reconstruct any path and to enumerate every state
/// that was ever defined.
#[derive(Clone, Debug)]
pub struct PathTable {
    n: usize,
    source: usize,
    /// `parents[i]` holds the states with `|X| = i + 1`, sorted by key.
    parents: Vec<Vec<(StateKey, u8)>>,
    /// Costs of the states with `X = V`.
    full: HashMap<usize, u64>,
}

impl PathTable {
    pub fn build(g: &Graph, source: usize) -> Result<Self> {
        let n = g.n();
        check_capacity("TSP vertex count", VertexSet::CAPACITY, n)?;
        if source >= n {
            return Err(Error::precondition(format!("source {source} out of range 0..{n}")));
        }
        check_weight_sum(g)?;
        let mut table = PathTable {
            n,
            source,
            parents: Vec::with_capacity(n),
            full: HashMap::new(),
        };
        if !g.is_connected() {
            return Ok(table);
        }

        let start = (VertexSet::singleton(source).bits(), source as u8);
        let mut layer: Vec<(StateKey, u64)> = vec![(start, 0)];
        table.parents.push(vec![(start, u8::MAX)]);
        for _ in 1..n {
            let mut next: HashMap<StateKey, (u64, u8)> = HashMap::new();
            for &((bits, u), cost) in &layer {
                let set = VertexSet::from_bits(bits);
                for &(v, w) in g.neighbors(u as usize) {
                    if set.contains(v) {
                        continue;
                    }
                    let key = (set.with(v).bits(), v as u8);
                    let candidate = cost + w;
                    next.entry(key)
                        .and_modify(|slot| {
                            if slot.0 > candidate {
                                *slot = (candidate, u);
                            }
                        })
                        .or_insert((candidate, u));
                }
            }
            let mut entries: Vec<(StateKey, (u64, u8))> = next.into_iter().collect();
            entries.sort_unstable_by_key(|&(key, _)| key);
            table.parents.push(entries.iter().map(|&(key, (_, p))| (key, p)).collect());
            layer = entries.into_iter().map(|(key, (cost, _))| (key, cost)).collect();
            if layer.is_empty() {
                break;
            }
        }
        if table.parents.len() == n {
            table.full = layer.into_iter().map(|((_, v), cost)| (v as usize, cost)).collect();
        }
        Ok(table)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn source(&self) -> usize {
        self.source
    }

    /// Number of `(X, v)` keys ever defined.
    pub fn states_visited(&self) -> usize {
        self.parents.iter().map(Vec::len).sum()
    }

    /// Every defined state `(X, v)`, by layer and then by key.
    pub fn states(&self) -> impl Iterator<Item = (VertexSet, usize)> + '_ {
        self.parents
            .iter()
            .flatten()
            .map(|&((bits, v), _)| (VertexSet::from_bits(bits), v as usize))
    }

    /// `t[V][v]`: the cheapest Hamiltonian path from the source to `v`.
    pub fn full_cost(&self, v: usize) -> Option<u64> {
        self.full.get(&v).copied()
    }

    /// The path realizing state `(set, v)`, from the source to `v`.
    pub fn path_to(&self, set: VertexSet, v: usize) -> Option<Vec<usize>> {
        let mut order = vec![v];
        let (mut set, mut v) = (set, v);
        while set.len() > 1 {
            let log = self.parents.get(set.len() - 1)?;
            let i = log.binary_search_by_key(&(set.bits(), v as u8), |&(key, _)| key).ok()?;
            let parent = log[i].1 as usize;
            set = set.without(v);
            v = parent;
            order.push(v);
        }
        (v == self.source).then(|| {
            order.reverse();
            order
        })
    }
}

fn check_weight_sum(g: &Graph) -> Result<()> {
    let total = g.edges().iter().try_fold(0u64, |acc, e| acc.checked_add(e.w));
    match total {
        Some(t) if t <= u64::MAX / 2 => Ok(()),
        _ => Err(Error::precondition("total edge weight must stay below 2^63")),
    }
}

/// Cheapest Hamiltonian path from `a` to `b`, or `None` if there is none.
pub fn trimmed_ham_path(g: &Graph, a: usize, b: usize) -> Result<Option<TourResult>> {
    if g.n() < 2 {
        return Err(Error::precondition("a Hamiltonian path needs at least 2 vertices"));
    }
    if a >= g.n() || b >= g.n() {
        return Err(Error::precondition(format!("endpoints {a}, {b} out of range 0..{}", g.n())));
    }
    if a == b {
        return Err(Error::precondition("path endpoints must differ"));
    }
    let table = PathTable::build(g, a)?;
    let states_visited = table.states_visited();
    Ok(table.full_cost(b).map(|weight| TourResult {
        weight,
        order: table.path_to(VertexSet::full(g.n()), b).expect("defined state has a parent chain"),
        states_visited,
    }))
}

/// The anchor [`tsp_cycle`] starts from: a minimum-degree vertex, lowest index first.
pub fn cycle_anchor(g: &Graph) -> usize {
    g.degree_profile().by_degree_asc.first().copied().unwrap_or(0)
}

/// Smallest-weight Hamiltonian cycle, or `None` if `g` has none.
///
/// Builds one [`PathTable`] from the anchor `a` and closes the cheapest
/// `t[V][b] + c(ba)` over neighbors `b` of `a`.
pub fn tsp_cycle(g: &Graph) -> Result<Option<TourResult>> {
    tsp_cycle_counted(g).map(|(tour, _)| tour)
}

/// [`tsp_cycle`] together with the number of table states, which is
/// reported even when no cycle exists.
pub fn tsp_cycle_counted(g: &Graph) -> Result<(Option<TourResult>, usize)> {
    if g.n() < 3 {
        return Err(Error::precondition("a Hamiltonian cycle needs at least 3 vertices"));
    }
    let anchor = cycle_anchor(g);
    let table = PathTable::build(g, anchor)?;
    let states_visited = table.states_visited();
    let best = g
        .neighbors(anchor)
        .iter()
        .filter_map(|&(b, w)| table.full_cost(b).map(|c| (c + w, b)))
        .min();
    let tour = best.map(|(weight, b)| TourResult {
        weight,
        order: table.path_to(VertexSet::full(g.n()), b).expect("defined state has a parent chain"),
        states_visited,
    });
    Ok((tour, states_visited))
}

/// Dense Bellman–Held–Karp table over all subsets containing `source`.
struct DenseTable {
    n: usize,
    source: usize,
    /// Indexed by `mask * n + v`, where `mask` ranges over subsets of
    /// `V ∖ {source}` and `v` is the endpoint.
    cost: Vec<u64>,
}

const UNREACHED: u64 = u64::MAX;

impl DenseTable {
    fn build(g: &Graph, source: usize) -> Result<Self> {
        let n = g.n();
        check_capacity("Held-Karp vertex count", HELD_KARP_MAX_N, n)?;
        check_weight_sum(g)?;
        let others: Vec<usize> = (0..n).filter(|&v| v != source).collect();
        let mut position = vec![usize::MAX; n];
        for (i, &v) in others.iter().enumerate() {
            position[v] = i;
        }
        let masks = 1usize << others.len();
        let mut cost = vec![UNREACHED; masks * n];
        for &(v, w) in g.neighbors(source) {
            cost[(1 << position[v]) * n + v] = w;
        }
        for mask in 1..masks {
            for (i, &u) in others.iter().enumerate() {
                let here = cost[mask * n + u];
                if mask >> i & 1 == 0 || here == UNREACHED {
                    continue;
                }
                for &(v, w) in g.neighbors(u) {
                    if v == source || mask >> position[v] & 1 == 1 {
                        continue;
                    }
                    let slot = &mut cost[(mask | 1 << position[v]) * n + v];
                    *slot = (*slot).min(here + w);
                }
            }
        }
        Ok(DenseTable { n, source, cost })
    }

    fn full_mask(&self) -> usize {
        (1usize << (self.n - 1)) - 1
    }

    fn bit(&self, v: usize) -> usize {
        1 << if v < self.source { v } else { v - 1 }
    }

    fn at(&self, mask: usize, v: usize) -> u64 {
        self.cost[mask * self.n + v]
    }

    /// Walks back from `(mask, v)` choosing any predecessor that attains the cost.
    fn reconstruct(&self, g: &Graph, mut mask: usize, mut v: usize) -> Vec<usize> {
        let mut order = vec![v];
        while mask != self.bit(v) {
            let target = self.at(mask, v);
            let prev = mask & !self.bit(v);
            let (u, _) = g
                .neighbors(v)
                .iter()
                .find(|&&(u, w)| u != self.source && prev & self.bit(u) != 0 && self.at(prev, u).checked_add(w) == Some(target))
                .expect("dense table entry has a predecessor");
            mask = prev;
            v = *u;
            order.push(v);
        }
        order.push(self.source);
        order.reverse();
        order
    }
}

/// Dense `O(2^n·n^2)` reference for [`tsp_cycle`].
pub fn held_karp_baseline(g: &Graph) -> Result<Option<TourResult>> {
    if g.n() < 3 {
        return Err(Error::precondition("a Hamiltonian cycle needs at least 3 vertices"));
    }
    let table = DenseTable::build(g, 0)?;
    let full = table.full_mask();
    let best = g
        .neighbors(0)
        .iter()
        .filter(|&&(b, _)| table.at(full, b) != UNREACHED)
        .map(|&(b, w)| (table.at(full, b) + w, b))
        .min();
    Ok(best.map(|(weight, b)| TourResult {
        weight,
        order: table.reconstruct(g, full, b),
        states_visited: table.cost.len(),
    }))
}

/// Dense reference for [`trimmed_ham_path`].
pub fn held_karp_path(g: &Graph, a: usize, b: usize) -> Result<Option<TourResult>> {
    if a >= g.n() || b >= g.n() || a == b {
        return Err(Error::precondition("path endpoints must be distinct vertices"));
    }
    let table = DenseTable::build(g, a)?;
    let full = table.full_mask();
    let weight = table.at(full, b);
    Ok((weight != UNREACHED).then(|| TourResult {
        weight,
        order: table.reconstruct(g, full, b),
        states_visited: table.cost.len(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn triangle_path() {
        let r = trimmed_ham_path(&named::complete(3), 0, 2).unwrap().unwrap();
        assert_eq!(r.weight, 2);
        assert_eq!(r.order, vec![0, 1, 2]);
    }

    #[test]
    fn path_graph_has_no_path_between_adjacent_ends() {
        let g = Graph::weighted(3, [(0, 1, 3), (1, 2, 4)]).unwrap();
        assert_eq!(trimmed_ham_path(&g, 0, 1).unwrap(), None);
        assert_eq!(held_karp_path(&g, 0, 1).unwrap(), None);
        assert_eq!(trimmed_ham_path(&g, 0, 2).unwrap().unwrap().weight, 7);
    }

    #[test]
    fn weighted_k4_path() {
        let g = Graph::weighted(4, [(0, 1, 1), (1, 2, 2), (2, 3, 3), (0, 2, 10), (0, 3, 10), (1, 3, 10)]).unwrap();
        let r = trimmed_ham_path(&g, 0, 3).unwrap().unwrap();
        assert_eq!(r.weight, 6);
        assert_eq!(r.order, vec![0, 1, 2, 3]);
        assert!(r.is_hamiltonian_path(&g));
        assert_eq!(held_karp_path(&g, 0, 3).unwrap().unwrap().weight, 6);
    }

    #[test]
    fn cycle_examples() {
        let c4 = Graph::weighted(4, [(0, 1, 1), (1, 2, 2), (2, 3, 3), (3, 0, 4)]).unwrap();
        for solve in [tsp_cycle, held_karp_baseline] {
            let r = solve(&c4).unwrap().unwrap();
            assert_eq!(r.weight, 10);
            assert!(r.is_hamiltonian_cycle(&c4));
            assert_eq!(solve(&named::complete(4)).unwrap().unwrap().weight, 4);
            assert_eq!(solve(&named::bowtie()).unwrap(), None);
            assert_eq!(solve(&named::cycle(5)).unwrap().unwrap().weight, 5);
        }
    }

    #[test]
    fn disconnected_short_circuits() {
        let g = named::disjoint_edges(2);
        let table = PathTable::build(&g, 0).unwrap();
        assert_eq!(table.states_visited(), 0);
        assert_eq!(tsp_cycle(&g).unwrap(), None);
    }

    #[test]
    fn rejects_bad_input() {
        let k3 = named::complete(3);
        assert!(trimmed_ham_path(&k3, 1, 1).is_err());
        assert!(trimmed_ham_path(&k3, 0, 3).is_err());
        assert!(tsp_cycle(&named::complete(2)).is_err());
        assert!(held_karp_baseline(&named::cycle(25)).unwrap_err().is_capacity());
        assert!(tsp_cycle(&named::cycle(65)).unwrap_err().is_capacity());
        let heavy = Graph::weighted(3, [(0, 1, u64::MAX), (1, 2, 1), (0, 2, 1)]).unwrap();
        assert!(matches!(tsp_cycle(&heavy), Err(Error::Precondition(_))));
    }

    #[test]
    fn anchor_is_minimum_degree_lowest_index() {
        let g = Graph::unweighted(4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]).unwrap();
        assert_eq!(cycle_anchor(&g), 1);
    }

    #[test]
    fn ties_prefer_the_smallest_parent() {
        // 0-1-2-3 and 0-2-1-3 both cost 3; ({0,1,2}, 1) relaxes (V, 3) first.
        let g = Graph::unweighted(4, [(0, 1), (0, 2), (1, 3), (2, 3), (1, 2)]).unwrap();
        let table = PathTable::build(&g, 0).unwrap();
        assert_eq!(table.path_to(VertexSet::full(4), 3).unwrap(), vec![0, 2, 1, 3]);
        assert_eq!(trimmed_ham_path(&g, 0, 3).unwrap().unwrap().order, vec![0, 2, 1, 3]);
    }

    #[test]
    fn states_are_bounded_by_dense_size() {
        let g = named::complete(8);
        let table = PathTable::build(&g, 0).unwrap();
        // In K8 every (X, v) with 0 ∈ X and v ∈ X ∖ {0}, plus ({0}, 0), is realized.
        assert_eq!(table.states_visited(), 1 + 7 * (1 << 6));
        assert!(table.states_visited() <= 8 * (1 << 7));
    }
}
