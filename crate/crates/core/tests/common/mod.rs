//! Seeded instance streams and brute-force checks written independently of
//! the library (no calls into its DP or oracle code).

#![allow(dead_code)]

use expdeg::graph::{gnm, random_bipartite, with_random_weights};
use expdeg::{BipartiteGraph, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + stream)
}

/// A graph with `n` uniform in `sizes` and `m` uniform in `0..=n(n-1)/2`.
pub fn random_graph(rng: &mut ChaCha8Rng, sizes: std::ops::RangeInclusive<usize>) -> Graph {
    let n = rng.gen_range(sizes);
    let m = rng.gen_range(0..=n * (n - 1) / 2);
    gnm(n, m, rng.gen()).unwrap()
}

/// Like [`random_graph`] but at least `n` edges and weights in `1..=max_w`.
pub fn random_weighted(rng: &mut ChaCha8Rng, sizes: std::ops::RangeInclusive<usize>, max_w: u64) -> Graph {
    let n = rng.gen_range(sizes);
    let total = n * (n - 1) / 2;
    let m = rng.gen_range(n.min(total)..=total);
    with_random_weights(&gnm(n, m, rng.gen()).unwrap(), max_w, rng.gen())
}

pub fn random_bigraph(rng: &mut ChaCha8Rng, sizes: std::ops::RangeInclusive<usize>) -> BipartiteGraph {
    let k = rng.gen_range(sizes);
    let m = rng.gen_range(0..=k * k);
    random_bipartite(k, m, rng.gen()).unwrap()
}

fn adjacency(g: &Graph) -> Vec<Vec<Option<u64>>> {
    let mut adj = vec![vec![None; g.n()]; g.n()];
    for e in g.edges() {
        adj[e.u][e.v] = Some(e.w);
        adj[e.v][e.u] = Some(e.w);
    }
    adj
}

/// Perfect matchings by bitmask recursion on the highest unmatched vertex.
pub fn brute_matchings(g: &Graph) -> u64 {
    fn go(adj: &[Vec<Option<u64>>], free: u32) -> u64 {
        if free == 0 {
            return 1;
        }
        let v = 31 - free.leading_zeros() as usize;
        let rest = free & !(1 << v);
        (0..v)
            .filter(|&u| rest >> u & 1 == 1 && adj[v][u].is_some())
            .map(|u| go(adj, rest & !(1 << u)))
            .sum()
    }
    assert!(g.n() <= 24);
    go(&adjacency(g), ((1u64 << g.n()) - 1) as u32)
}

/// Cheapest Hamiltonian cycle by Heap's permutation algorithm over vertices `1..n`.
pub fn brute_tsp(g: &Graph) -> Option<u64> {
    let n = g.n();
    assert!((3..=10).contains(&n));
    let adj = adjacency(g);
    let mut perm: Vec<usize> = (1..n).collect();
    let cost = |p: &[usize]| -> Option<u64> {
        let mut total = adj[0][p[0]]? + adj[*p.last()?][0]?;
        for w in p.windows(2) {
            total += adj[w[0]][w[1]]?;
        }
        Some(total)
    };
    let mut best = cost(&perm);
    let mut c = vec![0usize; perm.len()];
    let mut i = 0;
    while i < perm.len() {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            if let Some(w) = cost(&perm) {
                best = Some(best.map_or(w, |b: u64| b.min(w)));
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

/// Number of `(X, v)` pairs such that some simple path from `source` has
/// vertex set `X` and ends at `v`.
pub fn reachable_path_states(g: &Graph, source: usize) -> usize {
    let adj = adjacency(g);
    let mut seen = std::collections::HashSet::new();
    fn dfs(adj: &[Vec<Option<u64>>], set: u64, v: usize, seen: &mut std::collections::HashSet<(u64, usize)>) {
        if !seen.insert((set, v)) {
            return;
        }
        for u in 0..adj.len() {
            if set >> u & 1 == 0 && adj[v][u].is_some() {
                dfs(adj, set | 1 << u, u, seen);
            }
        }
    }
    dfs(&adj, 1 << source, source, &mut seen);
    seen.len()
}

/// Checks directly whether an edge set with degree 2 on `x`, at most 1 on
/// `s` and `t` and 0 elsewhere exists, by trying every subset of the edges
/// inside `x ∪ {s, t}`.
pub fn brute_deg2(g: &Graph, s: usize, t: usize, x: u64) -> bool {
    let allowed = x | 1 << s | 1 << t;
    let inside: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|e| allowed >> e.u & 1 == 1 && allowed >> e.v & 1 == 1)
        .map(|e| (e.u, e.v))
        .collect();
    assert!(inside.len() <= 22);
    (0u32..1 << inside.len()).any(|mask| {
        let mut deg = vec![0; g.n()];
        for (i, &(u, v)) in inside.iter().enumerate() {
            if mask >> i & 1 == 1 {
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        (0..g.n()).all(|v| match () {
            _ if x >> v & 1 == 1 => deg[v] == 2,
            _ if v == s || v == t => deg[v] <= 1,
            _ => deg[v] == 0,
        })
    })
}

/// Permanent by expanding along the first row.
pub fn brute_permanent(g: &BipartiteGraph) -> u64 {
    fn go(g: &BipartiteGraph, row: usize, used: u64) -> u64 {
        if row == g.k() {
            return 1;
        }
        (0..g.k())
            .filter(|&j| used >> j & 1 == 0 && g.has_edge(row, j))
            .map(|j| go(g, row + 1, used | 1 << j))
            .sum()
    }
    go(g, 0, 0)
}
