//! Small named graphs used throughout the tests and the guide.

use super::{BipartiteGraph, Graph};

pub fn edgeless(n: usize) -> Graph {
    Graph::unweighted(n, []).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::unweighted(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

/// `v0 - v1 - ... - v{n-1}`.
pub fn path(n: usize) -> Graph {
    Graph::unweighted(n, (1..n).map(|v| (v - 1, v))).unwrap()
}

/// `v0 - v1 - ... - v{n-1} - v0`, for `n >= 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    Graph::unweighted(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
}

/// `K_{1,leaves}` with center `v0`.
pub fn star(leaves: usize) -> Graph {
    Graph::unweighted(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
}

/// `K_{p,q}` with sides `0..p` and `p..p+q`.
pub fn complete_bipartite(p: usize, q: usize) -> Graph {
    Graph::unweighted(p + q, (0..p).flat_map(|u| (p..p + q).map(move |v| (u, v)))).unwrap()
}

/// `k` disjoint edges `v{2i} - v{2i+1}`.
pub fn disjoint_edges(k: usize) -> Graph {
    Graph::unweighted(2 * k, (0..k).map(|i| (2 * i, 2 * i + 1))).unwrap()
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i - i+5`.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    Graph::unweighted(10, outer.chain(inner).chain(spokes)).unwrap()
}

/// Two triangles sharing vertex `v2`.
pub fn bowtie() -> Graph {
    Graph::unweighted(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap()
}

pub fn bipartite_complete(k: usize) -> BipartiteGraph {
    BipartiteGraph::new(k, (0..k).flat_map(|i| (0..k).map(move |j| (i, j)))).unwrap()
}

/// The bipartite `2k`-cycle `a0 b0 a1 b1 ... a{k-1} b{k-1} a0`.
pub fn bipartite_cycle(k: usize) -> BipartiteGraph {
    BipartiteGraph::new(k, (0..k).flat_map(|i| [(i, i), ((i + 1) % k, i)])).unwrap()
}

/// `k` disjoint edges `a_i - b_i`.
pub fn bipartite_identity(k: usize) -> BipartiteGraph {
    BipartiteGraph::new(k, (0..k).map(|i| (i, i))).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(complete(4).m(), 6);
        assert_eq!(cycle(6).m(), 6);
        assert_eq!(petersen().m(), 15);
        assert!(petersen().degree_profile().histogram.get(&3) == Some(&10));
        assert_eq!(complete_bipartite(3, 3).m(), 9);
        assert_eq!(bowtie().degree(2), 4);
        assert_eq!(bipartite_cycle(3).m(), 6);
        assert_eq!(bipartite_cycle(2).m(), 4);
    }
}
