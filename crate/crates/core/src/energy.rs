//! Minimum average energy compatible with a set of orthogonality times.
//!
//! Weights live on the grid `n = 0..T`. With integer times, frequency `n + T`
//! imposes exactly the same constraints as `n` at a higher cost, so the grid
//! can stop at `T` without loss. The resulting LP is
//!
//! ```text
//! minimise   sum_n n w_n
//! subject to sum_n w_n                  = 1
//!            sum_n w_n cos(2 pi n d / T) = 0   for each difference d
//!            sum_n w_n sin(2 pi n d / T) = 0   (omitted when 2d = T)
//!            w >= 0
//! ```

use serde::{Deserialize, Serialize};

use crate::lp::{check_certificate, solve_lp, CertificateReport, LpBuilder, LpError, LpStatus, StandardFormLp};
use crate::problem::{OrthogonalityProblem, PhaseTable, ToleranceProfile, WeightVector};

/// Which end of the spectrum is taken as the reference frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum SpectralSense {
    /// Energy above the lowest grid frequency.
    #[default]
    FromBelow,
    /// Energy below the highest grid frequency `T - 1`.
    FromAbove,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinEnergyResult {
    pub problem: OrthogonalityProblem,
    pub sense: SpectralSense,
    pub weights: WeightVector,
    /// Minimum energy in units of `h / 2T`.
    pub e_min: f64,
    /// `N - 1`.
    pub e_bound: f64,
    /// `e_min / e_bound`, absent for a single state.
    pub ratio: Option<f64>,
    pub certificate: CertificateReport,
    pub orthogonal: bool,
    pub iterations: usize,
}

impl MinEnergyResult {
    /// Both the LP certificate and the direct orthogonality check passed.
    pub fn verified(&self) -> bool {
        self.certificate.pass && self.orthogonal
    }
}

pub fn build_lp(problem: &OrthogonalityProblem, sense: SpectralSense) -> StandardFormLp {
    build_lp_on_grid(problem, sense, problem.period() as usize)
}

/// Same LP on an arbitrary grid size `n_max`, used to check that truncating
/// the grid at `T` loses nothing.
pub fn build_lp_on_grid(problem: &OrthogonalityProblem, sense: SpectralSense, n_max: usize) -> StandardFormLp {
    let t = problem.period();
    let table = PhaseTable::new(t);
    let top = n_max as f64 - 1.0;
    let cost = (0..n_max)
        .map(|n| match sense {
            SpectralSense::FromBelow => n as f64,
            SpectralSense::FromAbove => top - n as f64,
        })
        .collect();
    let mut builder = LpBuilder::new(cost);
    builder
        .push_row(vec![1.0; n_max], 1.0)
        .expect("normalisation row is well formed");
    for d in problem.pairwise_differences() {
        let (re, im): (Vec<f64>, Vec<f64>) = (0..n_max as u64).map(|n| table.phase(n, d)).unzip();
        builder.push_row(re, 0.0).expect("cosine row is finite");
        if 2 * d != t {
            builder.push_row(im, 0.0).expect("sine row is finite");
        }
    }
    builder.build().expect("LP always has the normalisation row")
}

pub fn minimize_energy(problem: &OrthogonalityProblem, tol: &ToleranceProfile) -> Result<MinEnergyResult, LpError> {
    minimize_energy_with(problem, SpectralSense::FromBelow, tol)
}

pub fn minimize_energy_with(
    problem: &OrthogonalityProblem,
    sense: SpectralSense,
    tol: &ToleranceProfile,
) -> Result<MinEnergyResult, LpError> {
    let lp = build_lp(problem, sense);
    let sol = solve_lp(&lp, tol)?;
    // The uniform weight vector over the whole grid is always feasible and
    // the objective is bounded below, so anything else is numerical failure.
    if sol.status != LpStatus::Optimal {
        return Err(LpError::SingularBasis);
    }
    let certificate = check_certificate(&lp, &sol, tol);
    let weights = WeightVector::from_raw(sol.x.clone(), tol.feasibility.max(1e-9) * 10.0)
        .map_err(|_| LpError::SingularBasis)?;
    let orthogonal = verify_orthogonality(&weights, problem, tol);
    let e_min = 2.0 * sol.objective;
    let n = problem.n_states();
    let e_bound = (n - 1) as f64;
    let ratio = (n >= 2).then(|| e_min / e_bound);
    Ok(MinEnergyResult {
        problem: problem.clone(),
        sense,
        weights,
        e_min,
        e_bound,
        ratio,
        certificate,
        orthogonal,
        iterations: sol.iterations,
    })
}

/// `|overlap(w, d, T)| <= tol.orthogonality` for every canonical difference.
pub fn verify_orthogonality(w: &WeightVector, problem: &OrthogonalityProblem, tol: &ToleranceProfile) -> bool {
    let table = PhaseTable::new(problem.period());
    problem
        .pairwise_differences()
        .into_iter()
        .all(|d| w.overlap_with(&table, d).norm() <= tol.orthogonality)
}
