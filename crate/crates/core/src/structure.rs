//! Structural facts about bounded-average-degree graphs.
//!
//! * [`find_disjoint_set`]: a large set of low-degree vertices with pairwise
//!   disjoint closed neighborhoods.
//! * [`find_gap_threshold`]: a degree threshold `D ≤ e^α` above which
//!   there are few vertices, `|V_{>D}| ≤ n·d/(α·D)`.
//! * [`deg2sets_contains`] / [`enumerate_deg2sets`]: an exact, exponential
//!   membership oracle for the family of vertex sets that can be the
//!   interior of a collection of paths and cycles ending at `s` and `t`.
//!   Every reachable state of the trimmed dynamic programs lives in this
//!   family, which is what makes them sub-exhaustive.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{check_capacity, Error, Result};
use crate::graph::Graph;
use crate::rational::{ceil_u, int, is_positive, one, Rational};
use crate::vertex_set::VertexSet;

/// Largest graph [`enumerate_deg2sets`] accepts.
pub const DEG2SETS_MAX_N: usize = 16;

/// Smallest number of vertices [`find_disjoint_set`] guarantees:
/// `⌈n / (2 + 4·d·D)⌉`.
pub fn disjoint_set_size_bound(n: usize, d: Rational, max_degree: usize) -> usize {
    let denom = int(2) + int(4) * d * int(max_degree as i64);
    ceil_u(Rational::from_integer(n as i64) / denom)
}

/// Greedily picks vertices of degree at most `2d` whose closed neighborhoods
/// are pairwise disjoint.
///
/// Vertices are scanned in ascending index order; each chosen vertex `x`
/// marks `N[N[x]]`, so no later choice can share a neighbor with it.
pub fn find_disjoint_set(g: &Graph, d: Rational, max_degree: usize) -> Result<VertexSet> {
    check_capacity("find_disjoint_set vertex count", VertexSet::CAPACITY, g.n())?;
    if d < one() {
        return Err(Error::precondition(format!("d = {d} must be at least 1")));
    }
    let prof = g.degree_profile();
    if prof.avg > d {
        return Err(Error::precondition(format!(
            "average degree {} exceeds d = {d}",
            prof.avg
        )));
    }
    if prof.max_degree() > max_degree {
        return Err(Error::precondition(format!(
            "maximum degree {} exceeds D = {max_degree}",
            prof.max_degree()
        )));
    }

    let low_degree = |v: usize| int(g.degree(v) as i64) <= int(2) * d;
    let mut marked = VertexSet::empty();
    let mut chosen = VertexSet::empty();
    for x in 0..g.n() {
        if marked.contains(x) || !low_degree(x) {
            continue;
        }
        chosen.insert(x);
        marked.insert(x);
        for &(y, _) in g.neighbors(x) {
            marked.insert(y);
            for &(z, _) in g.neighbors(y) {
                marked.insert(z);
            }
        }
    }

    let bound = disjoint_set_size_bound(g.n(), d, max_degree);
    if chosen.len() < bound {
        return Err(Error::Invariant(format!(
            "disjoint set has {} vertices, guaranteed at least {bound}",
            chosen.len()
        )));
    }
    Ok(chosen)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapResult {
    /// The threshold `D`.
    pub threshold: usize,
    /// `n·d / (α·D)` with `d` the average degree.
    #[serde(serialize_with = "serialize_rational")]
    pub bound: Rational,
    /// `|V_{>D}|`.
    pub count_above: usize,
}

fn serialize_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Smallest `D ≥ 1` with `D ≤ e^α` and `|V_{>D}| ≤ n·d/(α·D)`.
///
/// Such a `D` always exists because the harmonic sum `H_{⌊e^α⌋}` exceeds `α`.
pub fn find_gap_threshold(g: &Graph, alpha: Rational) -> Result<GapResult> {
    if !is_positive(alpha) {
        return Err(Error::precondition(format!("alpha = {alpha} must be positive")));
    }
    let prof = g.degree_profile();
    // n·d is exactly the degree sum 2m.
    let degree_sum = int(2 * g.m() as i64);
    let mut threshold = 1usize;
    while int_at_most_exp(threshold as u64, alpha) {
        let bound = degree_sum / (alpha * int(threshold as i64));
        let count_above = prof.count_above(threshold);
        if int(count_above as i64) <= bound {
            return Ok(GapResult {
                threshold,
                bound,
                count_above,
            });
        }
        threshold += 1;
    }
    Err(Error::Invariant(format!(
        "no degree threshold D ≤ e^{alpha} satisfies the gap inequality"
    )))
}

/// Decides `value ≤ e^α` exactly for rational `α > 0`.
///
/// With `α = p/q` this is `value^q ≤ e^p`; `e` is enclosed by the Taylor
/// partial sum `Σ_{i≤N} 1/i!` and that sum plus `1/(N!·N)`, and `N` doubles
/// until the enclosure of `e^p` excludes `value^q`. Since `e^p` is irrational
/// for `p ≠ 0` the refinement always terminates.
pub fn int_at_most_exp(value: u64, alpha: Rational) -> bool {
    assert!(is_positive(alpha), "alpha must be positive");
    if value <= 1 {
        return true;
    }
    let p = *alpha.numer() as usize;
    let q = *alpha.denom() as usize;
    let lhs = BigRational::from_integer(num_traits::pow(BigInt::from(value), q));
    let mut terms = 16usize;
    loop {
        let (lo, hi) = e_enclosure(terms);
        let lo_p = num_traits::pow(lo, p);
        if lhs <= lo_p {
            return true;
        }
        let hi_p = num_traits::pow(hi, p);
        if lhs > hi_p {
            return false;
        }
        terms *= 2;
    }
}

fn e_enclosure(terms: usize) -> (BigRational, BigRational) {
    let mut sum = BigRational::zero();
    let mut factorial = BigInt::one();
    for i in 0..=terms {
        if i > 0 {
            factorial *= BigInt::from(i);
        }
        sum += BigRational::new(BigInt::one(), factorial.clone());
    }
    let tail = BigRational::new(BigInt::one(), factorial * BigInt::from(terms));
    let hi = sum.clone() + tail;
    (sum, hi)
}

/// A set `X` together with an edge set `F` certifying `X ∈ deg2sets(G, s, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deg2SetsWitness {
    pub set: VertexSet,
    /// Edges of `F` as `(u, v)` with `u ≤ v`.
    pub edges: Vec<(usize, usize)>,
}

impl Deg2SetsWitness {
    /// Recounts degrees in `F` from scratch: 2 on `X`, at most 1 on `s` and
    /// `t`, 0 elsewhere, and every edge of `F` an edge of `g`.
    pub fn verify(&self, g: &Graph, s: usize, t: usize) -> bool {
        let mut deg = vec![0usize; g.n()];
        for &(u, v) in &self.edges {
            if !g.has_edge(u, v) {
                return false;
            }
            deg[u] += 1;
            deg[v] += 1;
        }
        let mut unique = self.edges.clone();
        unique.sort_unstable();
        unique.dedup();
        unique.len() == self.edges.len()
            && (0..g.n()).all(|v| {
                if self.set.contains(v) {
                    deg[v] == 2
                } else if v == s || v == t {
                    deg[v] <= 1
                } else {
                    deg[v] == 0
                }
            })
    }
}

/// Decides whether `set ∈ deg2sets(g, s, t)` and returns a witness if so.
///
/// Backtracks over the vertices of `set` in ascending order, choosing for
/// each the incident edges that complete its degree to exactly 2.
pub fn deg2sets_contains(g: &Graph, s: usize, t: usize, set: VertexSet) -> Result<Option<Deg2SetsWitness>> {
    check_capacity("deg2sets oracle vertex count", VertexSet::CAPACITY, g.n())?;
    if s >= g.n() || t >= g.n() {
        return Err(Error::precondition(format!("s = {s}, t = {t} out of range")));
    }
    if s == t {
        return Err(Error::precondition("deg2sets requires s ≠ t"));
    }
    if set.contains(s) || set.contains(t) || !set.is_subset(VertexSet::full(g.n())) {
        return Err(Error::precondition("X must be a subset of V ∖ {s, t}"));
    }
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    let ends = VertexSet::singleton(s).with(t);
    Ok(find_degree_witness(g.n(), &edges, set, ends).map(|chosen| Deg2SetsWitness {
        set,
        edges: chosen.into_iter().map(|i| edges[i]).collect(),
    }))
}

/// All `X ∈ deg2sets(g, s, t)`, sorted by encoding.
pub fn enumerate_deg2sets(g: &Graph, s: usize, t: usize) -> Result<Vec<VertexSet>> {
    check_capacity("deg2sets enumeration vertex count", DEG2SETS_MAX_N, g.n())?;
    if s == t {
        return Err(Error::precondition("deg2sets requires s ≠ t"));
    }
    let others: Vec<usize> = (0..g.n()).filter(|&v| v != s && v != t).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << others.len() {
        let set: VertexSet = VertexSet::from_bits(mask).iter().map(|i| others[i]).collect();
        if deg2sets_contains(g, s, t, set)?.is_some() {
            out.push(set);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Finds `F ⊆ edges` with degree exactly 2 on `interior`, at most 1 on
/// `ends` and 0 elsewhere, returning the chosen edge indices.
///
/// Works on multigraphs: parallel edges are distinct and a self-loop adds 2
/// to its vertex's degree. `interior` and `ends` must be disjoint.
pub fn find_degree_witness(
    n: usize,
    edges: &[(usize, usize)],
    interior: VertexSet,
    ends: VertexSet,
) -> Option<Vec<usize>> {
    debug_assert!(interior.is_disjoint(ends));
    let order: Vec<usize> = interior.iter().collect();
    let mut position = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut incident = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(i);
        if u != v {
            incident[v].push(i);
        }
    }
    let mut search = WitnessSearch {
        edges,
        order: &order,
        position: &position,
        incident: &incident,
        ends,
        degree: vec![0; n],
        chosen: Vec::new(),
    };
    search.vertex(0).then_some(search.chosen)
}

struct WitnessSearch<'a> {
    edges: &'a [(usize, usize)],
    order: &'a [usize],
    position: &'a [usize],
    incident: &'a [Vec<usize>],
    ends: VertexSet,
    degree: Vec<usize>,
    chosen: Vec<usize>,
}

impl WitnessSearch<'_> {
    fn vertex(&mut self, i: usize) -> bool {
        let Some(&x) = self.order.get(i) else {
            return true;
        };
        if self.degree[x] > 2 {
            return false;
        }
        // Edges to earlier interior vertices were decided when those were
        // processed; only loops, later interior vertices and ends remain open.
        let candidates: Vec<usize> = self.incident[x]
            .iter()
            .copied()
            .filter(|&e| {
                let y = self.other(e, x);
                y == x || self.ends.contains(y) || (self.position[y] != usize::MAX && self.position[y] > i)
            })
            .collect();
        let need = 2 - self.degree[x];
        self.pick(i, x, &candidates, 0, need)
    }

    fn pick(&mut self, i: usize, x: usize, candidates: &[usize], from: usize, need: usize) -> bool {
        if need == 0 {
            return self.vertex(i + 1);
        }
        for c in from..candidates.len() {
            let e = candidates[c];
            let y = self.other(e, x);
            let (gain, fits) = if y == x {
                (2, need >= 2)
            } else {
                let cap = if self.ends.contains(y) { 1 } else { 2 };
                (1, self.degree[y] < cap)
            };
            if !fits {
                continue;
            }
            self.degree[x] += gain;
            if y != x {
                self.degree[y] += 1;
            }
            self.chosen.push(e);
            if self.pick(i, x, candidates, c + 1, need - gain) {
                return true;
            }
            self.chosen.pop();
            self.degree[x] -= gain;
            if y != x {
                self.degree[y] -= 1;
            }
        }
        false
    }

    fn other(&self, e: usize, x: usize) -> usize {
        let (u, v) = self.edges[e];
        if u == x {
            v
        } else {
            u
        }
    }
}
