//! Input graphs: simple undirected weighted graphs and balanced bipartite
//! graphs, plus the text format, degree statistics and generators.

mod format;
mod generate;
pub mod named;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{check_capacity, Error, Result};
use crate::rational::Rational;
use crate::vertex_set::VertexSet;

pub use format::{parse_graph, AnyGraph};
pub use generate::{gen_random_graph, gnm, random_bipartite, random_regular, with_random_weights, Model};

/// Largest vertex count accepted by [`Graph`]. Individual algorithms apply
/// tighter limits (most key their tables on a 64-bit [`VertexSet`]).
pub const MAX_VERTICES: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: u64,
}

/// A simple undirected graph with nonnegative integer edge weights.
///
/// Edges are stored normalized (`u < v`) and sorted by `(u, v)`. Unweighted
/// graphs carry weight 1 on every edge.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, u64)>>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        check_capacity("graph vertex count", MAX_VERTICES, n)?;
        let mut normalized = Vec::new();
        for Edge { u, v, w } in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {u}-{v} has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            normalized.push(Edge {
                u: u.min(v),
                v: u.max(v),
                w,
            });
        }
        normalized.sort();
        if let Some(pair) = normalized.windows(2).find(|p| (p[0].u, p[0].v) == (p[1].u, p[1].v)) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge {}-{}",
                pair[0].u, pair[0].v
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for e in &normalized {
            adj[e.u].push((e.v, e.w));
            adj[e.v].push((e.u, e.w));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: normalized,
            adj,
        })
    }

    /// Unit-weight graph from vertex pairs.
    pub fn unweighted(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::new(n, pairs.into_iter().map(|(u, v)| Edge { u, v, w: 1 }))
    }

    pub fn weighted(n: usize, triples: impl IntoIterator<Item = (usize, usize, u64)>) -> Result<Self> {
        Self::new(n, triples.into_iter().map(|(u, v, w)| Edge { u, v, w }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of `v` with edge weights, ascending by neighbor.
    pub fn neighbors(&self, v: usize) -> &[(usize, u64)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.weight(u, v).is_some()
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<u64> {
        let list = self.adj.get(u)?;
        list.binary_search_by_key(&v, |&(x, _)| x).ok().map(|i| list[i].1)
    }

    /// `N(v)` as a bit set. Requires `n <= 64`.
    pub fn neighbor_set(&self, v: usize) -> VertexSet {
        self.adj[v].iter().map(|&(u, _)| u).collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &(v, _) in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    /// Same graph with every vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::precondition("permutation length differs from n"));
        }
        Graph::new(
            self.n,
            self.edges.iter().map(|e| Edge {
                u: perm[e.u],
                v: perm[e.v],
                w: e.w,
            }),
        )
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let mut histogram = BTreeMap::new();
        for v in 0..self.n {
            *histogram.entry(self.degree(v)).or_insert(0) += 1;
        }
        let mut by_degree_asc: Vec<usize> = (0..self.n).collect();
        by_degree_asc.sort_by_key(|&v| (self.degree(v), v));
        let avg = if self.n == 0 {
            Rational::from_integer(0)
        } else {
            Rational::new(2 * self.m() as i64, self.n as i64)
        };
        DegreeProfile {
            histogram,
            avg,
            by_degree_asc,
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

/// Serializes to the text format; edges sorted by `(u, v)`, the weight column
/// omitted when it equals 1.
impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "graph {} {}", self.n, self.m())?;
        for e in &self.edges {
            if e.w == 1 {
                writeln!(f, "{} {}", e.u, e.v)?;
            } else {
                writeln!(f, "{} {} {}", e.u, e.v, e.w)?;
            }
        }
        Ok(())
    }
}

/// Degree statistics of a [`Graph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    /// Number of vertices of each degree.
    pub histogram: BTreeMap<usize, usize>,
    /// `2|E|/n`, exactly; zero for the empty graph.
    pub avg: Rational,
    /// Vertices ordered by `(degree, index)`.
    pub by_degree_asc: Vec<usize>,
}

impl DegreeProfile {
    pub fn max_degree(&self) -> usize {
        self.histogram.keys().next_back().copied().unwrap_or(0)
    }

    /// `|V_{>c}|`.
    pub fn count_above(&self, c: usize) -> usize {
        self.histogram.range(c + 1..).map(|(_, &k)| k).sum()
    }
}

/// The other endpoint of `v`'s red pairing edge, `v ⊕ 1`.
#[inline]
pub fn xor_partner(v: usize) -> usize {
    v ^ 1
}

/// A bipartite graph with sides `A = {a_0..a_{k-1}}` and `B = {b_0..b_{k-1}}`.
#[derive(Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    k: usize,
    edges: Vec<(usize, usize)>,
    adj_a: Vec<VertexSet>,
    adj_b: Vec<VertexSet>,
}

impl BipartiteGraph {
    pub fn new(k: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        check_capacity("bipartite side size", VertexSet::CAPACITY, k)?;
        let mut edges: Vec<(usize, usize)> = edges.into_iter().collect();
        if let Some(&(i, j)) = edges.iter().find(|&&(i, j)| i >= k || j >= k) {
            return Err(Error::InvalidGraph(format!(
                "edge a{i}-b{j} has an endpoint outside 0..{k}"
            )));
        }
        edges.sort_unstable();
        if let Some(pair) = edges.windows(2).find(|p| p[0] == p[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge a{}-b{}",
                pair[0].0, pair[0].1
            )));
        }
        let mut adj_a = vec![VertexSet::empty(); k];
        let mut adj_b = vec![VertexSet::empty(); k];
        for &(i, j) in &edges {
            adj_a[i].insert(j);
            adj_b[j].insert(i);
        }
        Ok(BipartiteGraph {
            k,
            edges,
            adj_a,
            adj_b,
        })
    }

    /// Biadjacency matrix rows are side A, columns side B.
    pub fn from_matrix(rows: &[&[u8]]) -> Result<Self> {
        let k = rows.len();
        if rows.iter().any(|r| r.len() != k) {
            return Err(Error::precondition("biadjacency matrix must be square"));
        }
        Self::new(
            k,
            rows.iter()
                .enumerate()
                .flat_map(|(i, r)| r.iter().enumerate().filter(|(_, &x)| x != 0).map(move |(j, _)| (i, j))),
        )
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbors of `a_i` in B.
    pub fn neighbors_a(&self, i: usize) -> VertexSet {
        self.adj_a[i]
    }

    /// Neighbors of `b_j` in A.
    pub fn neighbors_b(&self, j: usize) -> VertexSet {
        self.adj_b[j]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj_a[i].contains(j)
    }

    /// Swaps the roles of A and B.
    pub fn transpose(&self) -> Self {
        BipartiteGraph::new(self.k, self.edges.iter().map(|&(i, j)| (j, i))).expect("transpose of a valid graph")
    }

    /// The same graph as a general [`Graph`]: `a_i ↦ i`, `b_j ↦ k + j`.
    pub fn to_graph(&self) -> Graph {
        Graph::unweighted(2 * self.k, self.edges.iter().map(|&(i, j)| (i, self.k + j)))
            .expect("bipartite graph fits the general graph capacity")
    }
}

impl fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BipartiteGraph")
            .field("k", &self.k)
            .field("edges", &self.edges)
            .finish()
    }
}

impl fmt::Display for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "bigraph {} {}", self.k, self.m())?;
        for (i, j) in &self.edges {
            writeln!(f, "{i} {j}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn degree_profile_examples() {
        let p3 = named::path(3);
        assert_eq!(p3.degree_profile().avg, Rational::new(4, 3));

        let k4 = named::complete(4);
        let prof = k4.degree_profile();
        assert_eq!(prof.avg, int(3));
        assert_eq!(prof.histogram, BTreeMap::from([(3, 4)]));

        let empty = named::edgeless(5);
        let prof = empty.degree_profile();
        assert_eq!(prof.avg, int(0));
        assert_eq!(prof.histogram, BTreeMap::from([(0, 5)]));

        assert_eq!(Graph::unweighted(0, []).unwrap().degree_profile().avg, int(0));
    }

    #[test]
    fn degree_order_breaks_ties_by_index() {
        let star = named::star(4);
        assert_eq!(star.degree_profile().by_degree_asc, vec![1, 2, 3, 4, 0]);
    }

    #[test]
    fn xor_partner_examples() {
        assert_eq!(xor_partner(4), 5);
        assert_eq!(xor_partner(5), 4);
        assert_eq!(xor_partner(0), 1);
    }

    #[test]
    fn rejects_loops_duplicates_and_range() {
        assert!(Graph::unweighted(3, [(0, 0)]).is_err());
        assert!(Graph::unweighted(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::unweighted(3, [(0, 3)]).is_err());
        assert!(matches!(
            Graph::unweighted(200, []),
            Err(Error::Capacity { .. })
        ));
        assert!(BipartiteGraph::new(2, [(0, 1), (0, 1)]).is_err());
        assert!(BipartiteGraph::new(65, []).unwrap_err().is_capacity());
    }

    #[test]
    fn adjacency_is_symmetric_and_weighted() {
        let g = Graph::weighted(3, [(2, 0, 5), (0, 1, 7)]).unwrap();
        assert_eq!(g.weight(0, 2), Some(5));
        assert_eq!(g.weight(2, 0), Some(5));
        assert_eq!(g.weight(1, 2), None);
        assert_eq!(g.neighbors(0), &[(1, 7), (2, 5)]);
        assert_eq!(g.edges()[0], Edge { u: 0, v: 1, w: 7 });
    }

    #[test]
    fn connectivity() {
        assert!(named::cycle(5).is_connected());
        assert!(!named::disjoint_edges(2).is_connected());
        assert!(Graph::unweighted(1, []).unwrap().is_connected());
    }

    #[test]
    fn bipartite_views() {
        let g = BipartiteGraph::from_matrix(&[&[1, 1], &[0, 1]]).unwrap();
        assert_eq!(g.m(), 3);
        assert_eq!(g.neighbors_b(1).len(), 2);
        let t = g.transpose();
        assert!(t.has_edge(1, 0) && !t.has_edge(0, 1));
        let general = g.to_graph();
        assert_eq!(general.n(), 4);
        assert!(general.has_edge(1, 3));
    }
}
