//! Instrumentation records shared by the CLI and the benchmark harness.

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::graph::Graph;

/// Serializes a big integer as a decimal JSON string.
pub fn decimal<S: Serializer>(value: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_str_radix(10))
}

/// One algorithm run. Counts and weights travel as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub algorithm: String,
    pub n: usize,
    pub m: usize,
    /// Exact average degree, e.g. `"5/2"`.
    pub avg_degree: String,
    pub result: String,
    pub states_visited: Option<usize>,
    pub pruned_calls: Option<u64>,
    pub elapsed_ms: u64,
    pub seed: Option<u64>,
}

impl RunReport {
    pub fn new(algorithm: &str, g: &Graph, result: String) -> Self {
        RunReport {
            algorithm: algorithm.to_string(),
            n: g.n(),
            m: g.m(),
            avg_degree: g.degree_profile().avg.to_string(),
            result,
            states_visited: None,
            pruned_calls: None,
            elapsed_ms: 0,
            seed: None,
        }
    }
}
