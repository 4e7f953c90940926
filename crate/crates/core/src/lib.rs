//! Minimum-energy periodic evolutions through prescribed orthogonal states.
//!
//! The crate computes, by linear programming over spectral weights, the
//! least average energy (above the ground frequency) that lets a periodic
//! evolution pass through mutually orthogonal states at given lattice
//! times, and compares it with closed-form speed-limit bounds.
//!
//! - [`problem`]: problems, weight vectors, tolerances, overlaps
//! - [`lp`]: dense two-phase simplex and duality certificates
//! - [`energy`]: problem to LP translation and minimum-energy results
//! - [`bounds`]: closed-form energy and momentum bounds
//! - [`evolution`]: overlap traces and orthogonal-time finding
//! - [`motion`]: shift dynamics and two-frame state counting
//! - [`experiments`]: seeded sweeps, scaling studies, record files

pub mod bounds;
pub mod energy;
pub mod evolution;
pub mod experiments;
pub mod lp;
pub mod motion;
pub mod problem;

pub use energy::{build_lp, minimize_energy, minimize_energy_with, verify_orthogonality, MinEnergyResult, SpectralSense};
pub use lp::{check_certificate, solve_lp, CertificateReport, LpError, LpSolution, LpStatus, StandardFormLp};
pub use problem::{OrthogonalityProblem, ProblemError, ToleranceProfile, WeightError, WeightVector};
