//! Counting perfect matchings by a trimmed dynamic program over cycle covers.
//!
//! Contract each red pair `v_{2p} v_{2p+1}` of the input into one vertex
//! `v'_p`. Every input edge `v_a v_b` becomes an edge `v'_{⌊a/2⌋} v'_{⌊b/2⌋}`
//! labeled `{v_a, v_b}`; the result may have parallel edges and self-loops.
//! Perfect matchings of the input are in bijection with cycle covers of the
//! contracted graph whose edge labels are pairwise disjoint, and
//! disjointness can be checked locally: at `v'_p` one cover edge must use
//! `v_{2p}` and the other `v_{2p+1}` (a self-loop uses both).
//!
//! Two tables are filled bottom-up, materializing only nonzero entries:
//!
//! * `t[q][X]`: ordered `q`-cycle covers of `G'[X]` with disjoint labels;
//! * `t₂[q][X][a][b][x]`: an ordered `q`-cycle cover of some `Y ⊆ X ∖ {a, b}`
//!   plus a path from `v'_a` to `v'_b` through exactly `X ∖ Y`, never
//!   touching vertices below `a`, leaving `v'_a` through a label containing
//!   `v_{2a}` and entering `v'_b` through a label containing `x`.
//!
//! The answer is `Σ_q t[q][V'] / q!`.

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{check_capacity, Error, Result};
use crate::graph::{xor_partner, Graph};
use crate::pm_inex::BigCount;
use crate::structure::find_degree_witness;
use crate::vertex_set::VertexSet;

/// Largest contracted graph: one [`VertexSet`] word.
pub const DP_MAX_K: usize = VertexSet::CAPACITY;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabeledEdge {
    pub p: usize,
    pub q: usize,
    /// The original edge `{v_a, v_b}` with `a < b`.
    pub label: (usize, usize),
}

#[derive(Clone, Debug)]
pub struct LabeledMultigraph {
    k: usize,
    edges: Vec<LabeledEdge>,
    /// `#{edges labeled {x, y}}`, keyed with `x < y`.
    multiplicity: HashMap<(usize, usize), u32>,
    /// For each original vertex `y`, the labels `{y, x}` present, as `(x, multiplicity)`.
    by_member: Vec<Vec<(usize, u32)>>,
}

impl LabeledMultigraph {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[LabeledEdge] {
        &self.edges
    }

    /// Number of edges labeled `{x, y}`.
    pub fn multiplicity(&self, x: usize, y: usize) -> u32 {
        self.multiplicity.get(&(x.min(y), x.max(y))).copied().unwrap_or(0)
    }

    pub fn self_loops(&self, p: usize) -> u32 {
        self.multiplicity(2 * p, 2 * p + 1)
    }

    pub fn average_degree(&self) -> crate::rational::Rational {
        if self.k == 0 {
            return crate::rational::int(0);
        }
        crate::rational::Rational::new(2 * self.edges.len() as i64, self.k as i64)
    }
}

pub fn build_contracted_graph(g: &Graph) -> Result<LabeledMultigraph> {
    if g.n() % 2 == 1 {
        return Err(Error::precondition("contraction needs an even number of vertices"));
    }
    let k = g.n() / 2;
    check_capacity("contracted graph vertex count", DP_MAX_K, k)?;
    let edges: Vec<LabeledEdge> = g
        .edges()
        .iter()
        .map(|e| LabeledEdge {
            p: e.u / 2,
            q: e.v / 2,
            label: (e.u, e.v),
        })
        .collect();
    let mut multiplicity = HashMap::new();
    for e in &edges {
        *multiplicity.entry(e.label).or_insert(0) += 1;
    }
    let mut by_member = vec![Vec::new(); g.n()];
    for (&(x, y), &m) in &multiplicity {
        by_member[x].push((y, m));
        by_member[y].push((x, m));
    }
    for list in &mut by_member {
        list.sort_unstable();
    }
    Ok(LabeledMultigraph {
        k,
        edges,
        multiplicity,
        by_member,
    })
}

/// A `t₂` key. `end_bit` selects `x = v_{2b + end_bit}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathKey {
    pub set: VertexSet,
    pub a: u8,
    pub b: u8,
    pub end_bit: u8,
}

impl PathKey {
    /// The original vertex `x` the path enters `v'_b` through.
    pub fn end_vertex(&self) -> usize {
        2 * self.b as usize + self.end_bit as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DpState {
    Cover { q: usize, set: VertexSet },
    Path { q: usize, key: PathKey },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DpOutcome {
    #[serde(serialize_with = "crate::report::decimal")]
    pub count: BigCount,
    pub states_visited: usize,
    /// `(q, t[q][V'])` for every `q` with a nonzero entry.
    #[serde(skip)]
    pub terms: Vec<(usize, BigCount)>,
    /// Every nonzero key, when requested.
    #[serde(skip)]
    pub states: Option<Vec<DpState>>,
}

type CoverLayer = HashMap<VertexSet, BigCount>;
type PathLayer = HashMap<PathKey, BigCount>;

fn push<K: std::hash::Hash + Eq>(map: &mut HashMap<K, BigCount>, key: K, value: &BigCount, times: u32) {
    let contribution = value * times;
    map.entry(key)
        .and_modify(|v| *v += &contribution)
        .or_insert(contribution);
}

/// Counts cycle covers of `gc` with pairwise disjoint labels.
pub fn count_label_disjoint_covers(gc: &LabeledMultigraph, collect_states: bool) -> Result<DpOutcome> {
    let k = gc.k;
    check_capacity("contracted graph vertex count", DP_MAX_K, k)?;
    let full = VertexSet::full(k);
    let mut states = collect_states.then(Vec::new);
    let mut states_visited = 0usize;
    let mut terms = Vec::new();

    let mut cover: CoverLayer = HashMap::from([(VertexSet::empty(), BigCount::one())]);
    let mut paths: PathLayer = HashMap::new();
    for q in 0..=k {
        if q > 0 {
            cover = next_cover_layer(gc, &cover, &paths);
        }
        paths = path_layer(gc, &cover);
        if cover.is_empty() && paths.is_empty() {
            break;
        }
        states_visited += cover.len() + paths.len();
        if let Some(states) = states.as_mut() {
            states.extend(cover.keys().map(|&set| DpState::Cover { q, set }));
            states.extend(paths.keys().map(|&key| DpState::Path { q, key }));
        }
        if let Some(value) = cover.get(&full) {
            terms.push((q, value.clone()));
        }
    }

    let mut count = BigCount::zero();
    for (q, value) in &terms {
        let factorial: BigCount = (1..=*q).product::<BigCount>().max(BigCount::one());
        let (quotient, remainder) = value.div_rem(&factorial);
        if !remainder.is_zero() {
            return Err(Error::Invariant(format!("t[{q}][V'] = {value} is not divisible by {q}!")));
        }
        count += quotient;
    }
    if let Some(states) = states.as_mut() {
        states.sort_unstable_by_key(|s| match *s {
            DpState::Cover { q, set } => (q, 0, set, 0, 0, 0),
            DpState::Path { q, key } => (q, 1, key.set, key.a, key.b, key.end_bit),
        });
    }
    Ok(DpOutcome {
        count,
        states_visited,
        terms,
        states,
    })
}

/// `t[q]` from `t[q-1]` (a self-loop closes the last cycle) and `t₂[q-1]`
/// (an edge labeled `{v_{2a+1}, x}` closes the path back to its anchor `a`).
fn next_cover_layer(gc: &LabeledMultigraph, prev_cover: &CoverLayer, prev_paths: &PathLayer) -> CoverLayer {
    let mut next = HashMap::new();
    for (&set, value) in prev_cover {
        for a in VertexSet::full(gc.k).difference(set) {
            let loops = gc.self_loops(a);
            if loops > 0 {
                push(&mut next, set.with(a), value, loops);
            }
        }
    }
    for (key, value) in prev_paths {
        let closing = gc.multiplicity(2 * key.a as usize + 1, xor_partner(key.end_vertex()));
        if closing > 0 {
            push(&mut next, key.set, value, closing);
        }
    }
    next
}

/// `t₂[q]` from the finished `t[q]`: length-one paths seed every stratum,
/// then strata grow one vertex at a time in ascending `|X|`.
fn path_layer(gc: &LabeledMultigraph, cover: &CoverLayer) -> PathLayer {
    let k = gc.k;
    let mut strata: Vec<PathLayer> = vec![HashMap::new(); k + 1];
    for (&rest, value) in cover {
        for a in VertexSet::full(k).difference(rest) {
            for &(x, m) in &gc.by_member[2 * a] {
                let b = x / 2;
                if b <= a || rest.contains(b) {
                    continue;
                }
                let key = PathKey {
                    set: rest.with(a).with(b),
                    a: a as u8,
                    b: b as u8,
                    end_bit: (x & 1) as u8,
                };
                push(&mut strata[key.set.len()], key, value, m);
            }
        }
    }
    for size in 2..k {
        let (done, ahead) = strata.split_at_mut(size + 1);
        let grown = &mut ahead[0];
        for (key, value) in &done[size] {
            // Leave `v'_c` (the current end) through the other member of its pair.
            let leave = xor_partner(key.end_vertex());
            for &(x, m) in &gc.by_member[leave] {
                let b = x / 2;
                if b <= key.a as usize || key.set.contains(b) {
                    continue;
                }
                let next = PathKey {
                    set: key.set.with(b),
                    a: key.a,
                    b: b as u8,
                    end_bit: (x & 1) as u8,
                };
                push(grown, next, value, m);
            }
        }
    }
    strata.into_iter().flatten().collect()
}

impl DpState {
    /// Checks the state's vertex set against the degree-2 family of `gc`:
    /// a path state's `X ∖ {a, b}` must admit an edge set with degree 2
    /// inside and at most 1 at `a` and `b`; a cover state's `X` must admit
    /// a 2-regular spanning edge set, which places it in `deg2sets(G', s, t)`
    /// for every `s, t ∉ X`.
    pub fn is_degree_feasible(&self, gc: &LabeledMultigraph) -> bool {
        let edges: Vec<(usize, usize)> = gc.edges.iter().map(|e| (e.p, e.q)).collect();
        match *self {
            DpState::Cover { set, .. } => find_degree_witness(gc.k, &edges, set, VertexSet::empty()).is_some(),
            DpState::Path { key, .. } => {
                let ends = VertexSet::singleton(key.a as usize).with(key.b as usize);
                find_degree_witness(gc.k, &edges, key.set.difference(ends), ends).is_some()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PmDpOutcome {
    #[serde(serialize_with = "crate::report::decimal")]
    pub count: BigCount,
    pub states_visited: usize,
}

pub fn count_pm_dp(g: &Graph) -> Result<BigCount> {
    count_pm_dp_detailed(g, false).map(|o| o.count)
}

pub fn count_pm_dp_detailed(g: &Graph, collect_states: bool) -> Result<DpOutcome> {
    if g.n() % 2 == 1 {
        return Ok(DpOutcome {
            count: BigCount::zero(),
            states_visited: 0,
            terms: Vec::new(),
            states: collect_states.then(Vec::new),
        });
    }
    let gc = build_contracted_graph(g)?;
    count_label_disjoint_covers(&gc, collect_states)
}
