//! Seeded random graphs. Every generator is a pure function of its
//! parameters and seed (ChaCha8 stream).

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AnyGraph, BipartiteGraph, Edge, Graph, MAX_VERTICES};
use crate::error::{check_capacity, Error, Result};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    /// Uniform graph with exactly `m` edges.
    Gnm { n: usize, m: usize },
    /// Uniform-ish `d`-regular graph (randomized pairing with restarts).
    Regular { n: usize, d: usize },
    /// Bipartite graph with sides of size `k` and exactly `m` edges.
    Bipartite { k: usize, m: usize },
}

pub fn gen_random_graph(model: Model, seed: u64) -> Result<AnyGraph> {
    Ok(match model {
        Model::Gnm { n, m } => AnyGraph::General(gnm(n, m, seed)?),
        Model::Regular { n, d } => AnyGraph::General(random_regular(n, d, seed)?),
        Model::Bipartite { k, m } => AnyGraph::Bipartite(random_bipartite(k, m, seed)?),
    })
}

pub fn gnm(n: usize, m: usize, seed: u64) -> Result<Graph> {
    check_capacity("graph vertex count", MAX_VERTICES, n)?;
    let total = n * n.saturating_sub(1) / 2;
    if m > total {
        return Err(Error::Infeasible(format!("{m} edges do not fit a simple graph on {n} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut chosen: Vec<usize> = index::sample(&mut rng, total, m).into_vec();
    chosen.sort_unstable();
    Graph::unweighted(n, chosen.into_iter().map(|i| pairs[i]))
}

pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    check_capacity("graph vertex count", MAX_VERTICES, n)?;
    if n * d % 2 == 1 {
        return Err(Error::Infeasible(format!("n·d = {} must be even", n * d)));
    }
    if n > 0 && d >= n {
        return Err(Error::Infeasible(format!("degree {d} needs more than {n} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const ATTEMPTS: usize = 10_000;
    for _ in 0..ATTEMPTS {
        if let Some(edges) = try_pairing(n, d, &mut rng) {
            return Graph::unweighted(n, edges);
        }
    }
    Err(Error::Infeasible(format!(
        "no {d}-regular graph on {n} vertices found in {ATTEMPTS} attempts"
    )))
}

/// One pass of the pairing model, choosing each pair among the remaining
/// points that keep the graph simple. Returns `None` when stuck.
fn try_pairing(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    let mut adjacent = vec![vec![false; n]; n];
    let mut edges = Vec::with_capacity(n * d / 2);
    let ok = |adj: &Vec<Vec<bool>>, u: usize, v: usize| u != v && !adj[u][v];
    while !points.is_empty() {
        let mut picked = None;
        for _ in 0..64 {
            let i = rng.gen_range(0..points.len());
            let j = rng.gen_range(0..points.len());
            if i != j && ok(&adjacent, points[i], points[j]) {
                picked = Some((i, j));
                break;
            }
        }
        if picked.is_none() {
            let valid: Vec<(usize, usize)> = (0..points.len())
                .flat_map(|i| (i + 1..points.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| ok(&adjacent, points[i], points[j]))
                .collect();
            if valid.is_empty() {
                return None;
            }
            picked = Some(valid[rng.gen_range(0..valid.len())]);
        }
        let (i, j) = picked?;
        let (u, v) = (points[i], points[j]);
        adjacent[u][v] = true;
        adjacent[v][u] = true;
        edges.push((u, v));
        let (hi, lo) = (i.max(j), i.min(j));
        points.swap_remove(hi);
        points.swap_remove(lo);
    }
    Some(edges)
}

pub fn random_bipartite(k: usize, m: usize, seed: u64) -> Result<BipartiteGraph> {
    check_capacity("bipartite side size", VertexSet::CAPACITY, k)?;
    if m > k * k {
        return Err(Error::Infeasible(format!("{m} edges do not fit K_{{{k},{k}}}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen = index::sample(&mut rng, k * k, m).into_vec();
    chosen.sort_unstable();
    BipartiteGraph::new(k, chosen.into_iter().map(|c| (c / k, c % k)))
}

/// Replaces every weight with a uniform draw from `1..=max_weight`.
pub fn with_random_weights(g: &Graph, max_weight: u64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Graph::new(
        g.n(),
        g.edges().iter().map(|e| Edge {
            w: rng.gen_range(1..=max_weight.max(1)),
            ..*e
        }),
    )
    .expect("reweighting preserves validity")
}
