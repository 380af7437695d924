//! Counting perfect matchings in `O*(2^{n/2})` time and polynomial space.
//!
//! Pair the vertices by red edges `v_{2i} v_{2i+1}`. A perfect matching `M`
//! together with the red edges is a cycle cover made of alternating cycles,
//! and conversely. Every black edge `v_a v_b` becomes two arcs of a directed
//! graph on the same vertices:
//!
//! ```text
//! v_{a⊕1} → v_b   labeled ⌊a/2⌋
//! v_{b⊕1} → v_a   labeled ⌊b/2⌋
//! ```
//!
//! An arc encodes "red edge, then black edge", so each alternating cycle
//! appears twice, once per direction, with the same labels. The two copies
//! visit complementary halves of the red pairs it crosses; exactly one of
//! them visits the even vertex of its lowest pair. Keeping only cycles whose
//! smallest vertex is even, an alternating cycle cover is a set of directed
//! cycles of total length `n/2` that uses every one of the `n/2` labels
//! exactly once.
//!
//! Those are counted by inclusion–exclusion over the set `I` of forbidden
//! labels: for each `I`, count ordered `r`-tuples of *nice* closed walks
//! (walks that visit their smallest vertex exactly once) anchored at even
//! vertices and avoiding labels in `I`, with a knapsack over walk lengths.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{check_capacity, Error, Result};
use crate::graph::{xor_partner, Graph};

pub type BigCount = BigInt;

/// Largest graph [`count_pm_inex`] accepts; `2^{n/2}` label subsets are visited.
pub const INEX_MAX_N: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub label: usize,
}

/// The labeled directed multigraph built from the black edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcGraph {
    n: usize,
    arcs: Vec<Arc>,
}

impl ArcGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> usize {
        self.n / 2
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }
}

pub fn build_arc_graph(g: &Graph) -> Result<ArcGraph> {
    if g.n() % 2 == 1 {
        return Err(Error::precondition("the arc graph needs an even number of vertices"));
    }
    let mut arcs = Vec::with_capacity(2 * g.m());
    for e in g.edges() {
        arcs.push(Arc {
            from: xor_partner(e.u),
            to: e.v,
            label: e.u / 2,
        });
        arcs.push(Arc {
            from: xor_partner(e.v),
            to: e.u,
            label: e.v / 2,
        });
    }
    Ok(ArcGraph { n: g.n(), arcs })
}

/// `p[a][j]`: the number of `v_a`-nice closed walks of length `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceWalkTable {
    max_len: usize,
    /// Row `a`, column `j - 1`.
    p: Vec<Vec<BigCount>>,
}

impl NiceWalkTable {
    pub fn get(&self, start: usize, len: usize) -> &BigCount {
        &self.p[start][len - 1]
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// `P_j = Σ_{a even} p[a][j]` for `j = 1..=max_len`, at index `j - 1`.
    pub fn totals(&self) -> Vec<BigCount> {
        (0..self.max_len)
            .map(|j| self.p.iter().step_by(2).map(|row| &row[j]).sum())
            .collect()
    }
}

/// Counts nice closed walks of length `1..=n/2` that avoid every arc whose
/// label bit is set in `forbidden`.
pub fn count_nice_walks(ag: &ArcGraph, forbidden: u64) -> NiceWalkTable {
    let n = ag.n;
    let max_len = n / 2;
    let allowed: Vec<&Arc> = ag.arcs.iter().filter(|a| forbidden >> a.label & 1 == 0).collect();
    let mut p = vec![vec![BigCount::zero(); max_len]; n];
    let mut walks = vec![BigCount::zero(); n];
    let mut next = vec![BigCount::zero(); n];
    for start in 0..n {
        // walks[b] = walks of the current length from `start` to `b` that
        // never revisit `start` and stay at vertices ≥ start.
        walks.iter_mut().for_each(|w| w.set_zero());
        walks[start] = BigCount::one();
        for len in 1..=max_len {
            let mut closing = BigCount::zero();
            next.iter_mut().for_each(|w| w.set_zero());
            for arc in &allowed {
                if arc.from < start || arc.to < start || walks[arc.from].is_zero() {
                    continue;
                }
                if arc.to == start {
                    closing += &walks[arc.from];
                } else {
                    next[arc.to] += &walks[arc.from];
                }
            }
            p[start][len - 1] = closing;
            std::mem::swap(&mut walks, &mut next);
        }
    }
    NiceWalkTable { max_len, p }
}

/// `t[q][i]`: ordered `q`-tuples of nice walks with total length `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleTable {
    t: Vec<Vec<BigCount>>,
}

impl TupleTable {
    pub fn get(&self, q: usize, i: usize) -> &BigCount {
        &self.t[q][i]
    }
}

/// Knapsack over walk lengths: `t[q][i] = Σ_j P_j · t[q-1][i-j]`, where
/// `totals[j - 1] = P_j`.
pub fn count_tuples(totals: &[BigCount], total_len: usize) -> TupleTable {
    let mut t = vec![vec![BigCount::zero(); total_len + 1]; total_len + 1];
    t[0][0] = BigCount::one();
    for q in 1..=total_len {
        for i in 1..=total_len {
            let mut acc = BigCount::zero();
            for j in 1..=i.min(totals.len()) {
                if !totals[j - 1].is_zero() && !t[q - 1][i - j].is_zero() {
                    acc += &totals[j - 1] * &t[q - 1][i - j];
                }
            }
            t[q][i] = acc;
        }
    }
    TupleTable { t }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InexOutcome {
    #[serde(serialize_with = "crate::report::decimal")]
    pub count: BigCount,
    pub subsets_processed: u64,
    /// `acc_r = Σ_I (-1)^{|I|} t_I[r][n/2]` for `r = 1..=n/2`, at index `r - 1`.
    #[serde(skip)]
    pub accumulators: Vec<BigCount>,
}

pub fn count_pm_inex(g: &Graph) -> Result<BigCount> {
    count_pm_inex_detailed(g).map(|o| o.count)
}

/// Inclusion–exclusion over all `2^{n/2}` label subsets.
///
/// Subsets are independent; they are split into contiguous ranges processed
/// in parallel and the signed accumulators are summed exactly, so the result
/// does not depend on scheduling. Each `acc_r` must be divisible by `r!`
/// because the tuples are ordered; a remainder is reported as an invariant
/// violation.
pub fn count_pm_inex_detailed(g: &Graph) -> Result<InexOutcome> {
    check_capacity("inclusion-exclusion vertex count", INEX_MAX_N, g.n())?;
    if g.n() % 2 == 1 {
        return Ok(InexOutcome {
            count: BigCount::zero(),
            subsets_processed: 0,
            accumulators: Vec::new(),
        });
    }
    let ag = build_arc_graph(g)?;
    let labels = ag.labels();
    let subsets = 1u64 << labels;
    let chunk = (subsets / 256).max(1);
    let starts: Vec<u64> = (0..subsets).step_by(chunk as usize).collect();
    let accumulators = starts
        .par_iter()
        .map(|&lo| {
            let mut acc = vec![BigCount::zero(); labels];
            for forbidden in lo..(lo + chunk).min(subsets) {
                let walks = count_nice_walks(&ag, forbidden);
                let tuples = count_tuples(&walks.totals(), labels);
                let negative = forbidden.count_ones() % 2 == 1;
                for r in 1..=labels {
                    let term = tuples.get(r, labels);
                    if negative {
                        acc[r - 1] -= term;
                    } else {
                        acc[r - 1] += term;
                    }
                }
            }
            acc
        })
        .reduce(
            || vec![BigCount::zero(); labels],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );

    let mut count = BigCount::zero();
    let mut factorial = BigCount::one();
    for (i, acc) in accumulators.iter().enumerate() {
        let r = i + 1;
        factorial *= r;
        let (quotient, remainder) = acc.div_rem(&factorial);
        if !remainder.is_zero() {
            return Err(Error::Invariant(format!("acc_{r} = {acc} is not divisible by {r}!")));
        }
        count += quotient;
    }
    if count < BigCount::zero() {
        return Err(Error::Invariant(format!("negative matching count {count}")));
    }
    Ok(InexOutcome {
        count,
        subsets_processed: subsets,
        accumulators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn arc(from: usize, to: usize, label: usize) -> Arc {
        Arc { from, to, label }
    }

    /// Brute force: every arc sequence of length `len` from `start` back to
    /// `start`, filtered by the nice-walk conditions.
    fn enumerate_nice(ag: &ArcGraph, forbidden: u64, start: usize, len: usize) -> usize {
        fn go(ag: &ArcGraph, forbidden: u64, start: usize, at: usize, left: usize) -> usize {
            ag.arcs()
                .iter()
                .filter(|a| a.from == at && forbidden >> a.label & 1 == 0 && a.to >= start)
                .map(|a| match (left, a.to == start) {
                    (1, true) => 1,
                    (1, false) | (_, true) => 0,
                    _ => go(ag, forbidden, start, a.to, left - 1),
                })
                .sum()
        }
        go(ag, forbidden, start, start, len)
    }

    #[test]
    fn arcs_of_a_single_edge_are_self_loops() {
        let ag = build_arc_graph(&named::complete(2)).unwrap();
        let mut arcs = ag.arcs().to_vec();
        arcs.sort();
        assert_eq!(arcs, vec![arc(0, 0, 0), arc(1, 1, 0)]);
    }

    #[test]
    fn arcs_of_a_cross_pair_edge() {
        let g = Graph::unweighted(4, [(0, 2)]).unwrap();
        let ag = build_arc_graph(&g).unwrap();
        assert_eq!(ag.arcs(), &[arc(1, 2, 0), arc(3, 0, 1)]);
    }

    #[test]
    fn k4_arc_labels_split_evenly() {
        let ag = build_arc_graph(&named::complete(4)).unwrap();
        assert_eq!(ag.arcs().len(), 12);
        assert_eq!(ag.arcs().iter().filter(|a| a.label == 0).count(), 6);
        assert_eq!(ag.arcs().iter().filter(|a| a.label == 1).count(), 6);
    }

    #[test]
    fn odd_vertex_count_is_rejected() {
        assert!(build_arc_graph(&named::complete(3)).is_err());
    }

    #[test]
    fn nice_walks_of_a_single_edge() {
        let ag = build_arc_graph(&named::complete(2)).unwrap();
        let p = count_nice_walks(&ag, 0);
        assert_eq!(*p.get(0, 1), BigCount::from(1));
        assert_eq!(*p.get(1, 1), BigCount::from(1));
        let p = count_nice_walks(&ag, 0b1);
        assert!(p.get(0, 1).is_zero() && p.get(1, 1).is_zero());
    }

    #[test]
    fn nice_walks_match_enumeration() {
        let graphs = [named::cycle(4), named::complete(4), named::petersen(), named::complete(6)];
        for g in &graphs {
            let ag = build_arc_graph(g).unwrap();
            for forbidden in [0u64, 0b1, 0b10, 0b101] {
                let p = count_nice_walks(&ag, forbidden);
                for start in 0..g.n() {
                    for len in 1..=g.n() / 2 {
                        assert_eq!(
                            *p.get(start, len),
                            BigCount::from(enumerate_nice(&ag, forbidden, start, len)),
                            "start {start}, len {len}, forbidden {forbidden:b}"
                        );
                    }
                }
            }
        }
        let ag = build_arc_graph(&named::cycle(4)).unwrap();
        assert_eq!(*count_nice_walks(&ag, 0).get(0, 2), BigCount::from(1));
    }

    #[test]
    fn tuple_knapsack() {
        let t = count_tuples(&[2.into(), 0.into()], 2);
        assert_eq!(*t.get(2, 2), BigCount::from(4));
        let t = count_tuples(&[0.into(), 0.into(), 0.into()], 3);
        assert!((1..=3).all(|q| (0..=3).all(|i| t.get(q, i).is_zero())));
        assert_eq!(*t.get(0, 0), BigCount::from(1));
        let t = count_tuples(&[1.into(), 3.into(), 0.into()], 3);
        assert_eq!(*t.get(2, 3), BigCount::from(6));
    }

    #[test]
    fn named_graph_counts() {
        let cases = [
            (named::complete(2), 1),
            (named::complete(3), 0),
            (named::complete(4), 3),
            (named::cycle(4), 2),
            (named::cycle(6), 2),
            (named::complete_bipartite(3, 3), 6),
            (named::petersen(), 6),
            (named::disjoint_edges(3), 1),
            (named::complete(6), 15),
            (named::edgeless(4), 0),
        ];
        for (g, expected) in cases {
            assert_eq!(count_pm_inex(&g).unwrap(), BigCount::from(expected), "{g:?}");
        }
    }

    #[test]
    fn accumulators_divide_by_factorials() {
        let out = count_pm_inex_detailed(&named::complete(8)).unwrap();
        assert_eq!(out.count, BigCount::from(105));
        assert_eq!(out.subsets_processed, 16);
        let mut factorial = BigCount::one();
        for (i, acc) in out.accumulators.iter().enumerate() {
            factorial *= i + 1;
            assert!((acc % &factorial).is_zero());
        }
    }
}
