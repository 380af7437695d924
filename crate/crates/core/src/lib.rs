//! Exact exponential-time algorithms for graphs of bounded average degree.
//!
//! * [`tsp`]: cheapest Hamiltonian paths and cycles with a trimmed subset DP;
//! * [`pm_inex`]: perfect-matching counting by inclusion–exclusion over closed walks;
//! * [`pm_dp`]: the same count by a sparse DP over cycle covers of a contracted graph;
//! * [`pm_bipartite`]: bipartite matching counts with a state-skipping DP;
//! * [`structure`]: the degree-structure lemmas the trimmed DPs rely on;
//! * [`oracles`]: brute-force ground truths for small inputs.
//!
//! ```
//! use expdeg::graph::named;
//!
//! let g = named::petersen();
//! assert_eq!(expdeg::count_pm_dp(&g).unwrap(), 6.into());
//! assert_eq!(expdeg::count_pm_inex(&g).unwrap(), 6.into());
//! ```

pub mod bench;
pub mod error;
pub mod graph;
pub mod oracles;
pub mod pm_bipartite;
pub mod pm_dp;
pub mod pm_inex;
pub mod rational;
pub mod report;
pub mod structure;
pub mod tsp;
pub mod vertex_set;

pub use error::{Error, Result};
pub use graph::{parse_graph, AnyGraph, BipartiteGraph, Graph};
pub use pm_bipartite::{count_pm_bipartite, ryser_baseline};
pub use pm_dp::count_pm_dp;
pub use pm_inex::{count_pm_inex, BigCount};
pub use rational::Rational;
pub use tsp::{held_karp_baseline, trimmed_ham_path, tsp_cycle, TourResult};
pub use vertex_set::VertexSet;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/graphs.md")]
    struct Graphs;
    #[doc = include_str!("../../../book/src/structure.md")]
    struct Structure;
    #[doc = include_str!("../../../book/src/tsp.md")]
    struct Tsp;
    #[doc = include_str!("../../../book/src/matchings-inex.md")]
    struct MatchingsInex;
    #[doc = include_str!("../../../book/src/matchings-dp.md")]
    struct MatchingsDp;
    #[doc = include_str!("../../../book/src/bipartite.md")]
    struct Bipartite;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
