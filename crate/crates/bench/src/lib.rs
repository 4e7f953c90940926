//! Benchmark fixtures shared by the criterion targets.

use statechange::experiments::{generate_problem, sub_seed};
use statechange::OrthogonalityProblem;

/// Problems of the default sweep shape with a fixed `(N, n_different)`.
pub fn sweep_problems(n: usize, n_different: usize, count: usize) -> Vec<OrthogonalityProblem> {
    (0..count as u64)
        .map(|i| generate_problem(sub_seed(7, i), n, n_different, 100).expect("valid shape"))
        .collect()
}
