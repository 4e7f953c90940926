//! Shift dynamics under `H* = v p`, minimum orthogonal displacement and
//! two-frame state counting. Units have `c = 1`; `h` is explicit.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::evolution::scan_zeros;
use crate::problem::ToleranceProfile;

/// Slack (in units of `h`) for [`pmin_check`] and its equality flag.
pub const PMIN_TOL: f64 = 1e-6;

const SAMPLES_PER_FREQUENCY: f64 = 16.0;
const MAX_SCAN_SAMPLES: f64 = 65536.0;

#[derive(Debug, Error, PartialEq)]
pub enum MotionError {
    #[error("momentum and weight lists differ in length ({momenta} vs {weights})")]
    LengthMismatch { momenta: usize, weights: usize },
    #[error("state needs at least one momentum")]
    Empty,
    #[error("momentum {index} is negative or not finite: {value}")]
    NegativeMomentum { index: usize, value: f64 },
    #[error("momenta must be strictly increasing at index {index}")]
    NotIncreasing { index: usize },
    #[error("weight {index} is negative or not finite: {value}")]
    NegativeWeight { index: usize, value: f64 },
    #[error("weights sum to {sum}, not 1")]
    NotNormalized { sum: f64 },
    #[error("h must be positive and finite")]
    BadPlanck,
    #[error("speed must lie in [0, 1), got {0}")]
    BadSpeed(f64),
    #[error("rest energy must be positive and duration nonnegative")]
    BadFrame,
}

/// Superposition of momentum eigenstates with nonnegative momenta.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentumState {
    momenta: Vec<f64>,
    weights: Vec<f64>,
    h: f64,
}

impl MomentumState {
    pub fn new(momenta: Vec<f64>, weights: Vec<f64>, h: f64, tol: &ToleranceProfile) -> Result<Self, MotionError> {
        if momenta.len() != weights.len() {
            return Err(MotionError::LengthMismatch { momenta: momenta.len(), weights: weights.len() });
        }
        if momenta.is_empty() {
            return Err(MotionError::Empty);
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(MotionError::BadPlanck);
        }
        for (index, &value) in momenta.iter().enumerate() {
            if !(value >= 0.0 && value.is_finite()) {
                return Err(MotionError::NegativeMomentum { index, value });
            }
            if index > 0 && value <= momenta[index - 1] {
                return Err(MotionError::NotIncreasing { index });
            }
        }
        for (index, &value) in weights.iter().enumerate() {
            if !(value >= 0.0 && value.is_finite()) {
                return Err(MotionError::NegativeWeight { index, value });
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > tol.normalization {
            return Err(MotionError::NotNormalized { sum });
        }
        Ok(Self { momenta, weights, h })
    }

    /// Equal weights over the given momenta.
    pub fn uniform(momenta: Vec<f64>, h: f64) -> Result<Self, MotionError> {
        let n = momenta.len().max(1);
        let weights = vec![1.0 / n as f64; momenta.len()];
        let tol = ToleranceProfile { normalization: 1e-12, ..Default::default() };
        Self::new(momenta, weights, h, &tol)
    }

    pub fn momenta(&self) -> &[f64] {
        &self.momenta
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn mean_momentum(&self) -> f64 {
        self.momenta.iter().zip(&self.weights).map(|(p, u)| p * u).sum()
    }

    /// `sum_j u_j e^{2 pi i p_j x / h}`.
    pub fn autocorrelation(&self, x: f64) -> Complex64 {
        self.momenta
            .iter()
            .zip(&self.weights)
            .filter(|(_, &u)| u > 0.0)
            .map(|(p, u)| Complex64::from_polar(*u, TAU * p * x / self.h))
            .sum()
    }

    fn occupied(&self) -> Vec<f64> {
        self.momenta
            .iter()
            .zip(&self.weights)
            .filter(|(_, &u)| u > 0.0)
            .map(|(&p, _)| p)
            .collect()
    }
}

/// Overlap of the state with itself shifted by `x` at speed `v`. The phase
/// `v p t / h` at `t = x / v` depends on `x` only.
pub fn shift_autocorrelation(state: &MomentumState, v: f64, x: f64) -> Complex64 {
    let t = x / v;
    state
        .momenta
        .iter()
        .zip(&state.weights)
        .filter(|(_, &u)| u > 0.0)
        .map(|(p, u)| Complex64::from_polar(*u, TAU * (v * p) * t / state.h))
        .sum()
}

/// Approximate common divisor of the positive values, down to `floor`.
fn approx_gcd(values: &[f64], floor: f64) -> f64 {
    let mut g = 0.0f64;
    for &v in values {
        let (mut a, mut b) = (g.max(v), g.min(v));
        while b > floor {
            let r = a % b;
            a = b;
            b = if r > b - floor { 0.0 } else { r };
        }
        g = a;
    }
    g
}

/// Smallest `x > 0` with `|autocorrelation| <= tol.orthogonality`.
///
/// For commensurate momenta the autocorrelation has period `h / g` with `g`
/// the common divisor of the momentum gaps, and `|A(x)| = |A(P - x)|`, so
/// scanning `(0, 3P/4]` is exhaustive. Incommensurate spectra are scanned
/// over a window of a few thousand oscillations of the fastest term.
pub fn lambda_min(state: &MomentumState, tol: &ToleranceProfile) -> Option<f64> {
    let p = state.occupied();
    if p.len() < 2 {
        return None;
    }
    let gaps: Vec<f64> = p.iter().map(|q| q - p[0]).skip(1).collect();
    let span = *gaps.last().unwrap();
    let g = approx_gcd(&gaps, 1e-9 * span);
    let cap = MAX_SCAN_SAMPLES * state.h / (SAMPLES_PER_FREQUENCY * span);
    let window = (0.75 * state.h / g).min(cap);
    let samples = (SAMPLES_PER_FREQUENCY * span * window / state.h).ceil().max(64.0) as usize;
    let base = p[0];
    let scan = scan_zeros(
        |x| state.autocorrelation(x) * Complex64::from_polar(1.0, -TAU * base * x / state.h),
        0.0,
        window,
        samples,
        tol.orthogonality,
    );
    scan.zeros.first().copied()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PminReport {
    pub mean_momentum: f64,
    pub lambda_min: Option<f64>,
    pub product: Option<f64>,
    pub bound: f64,
    /// Vacuously true when no orthogonal displacement exists.
    pub satisfied: bool,
    pub equality: bool,
}

/// `<p> lambda_min >= h / 4`.
pub fn pmin_check(state: &MomentumState, tol: &ToleranceProfile) -> PminReport {
    let mean = state.mean_momentum();
    let lambda = lambda_min(state, tol);
    let product = lambda.map(|l| mean * l);
    let bound = state.h / 4.0;
    let slack = PMIN_TOL * state.h;
    PminReport {
        mean_momentum: mean,
        lambda_min: lambda,
        product,
        bound,
        satisfied: product.is_none_or(|x| x >= bound - slack),
        equality: product.is_some_and(|x| (x - bound).abs() <= slack),
    }
}

/// Distinct-state counts of a body of rest energy `E_r` moving at `v` for
/// lab time `dt`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameCount {
    pub rest_energy: f64,
    pub v: f64,
    pub dt: f64,
    pub gamma: f64,
    pub energy: f64,
    pub momentum: f64,
    pub dt_rest: f64,
    pub dx: f64,
    /// `E dt`.
    pub lab_count: f64,
    /// `E_r dt_r`.
    pub rest_count: f64,
    /// `p dx`.
    pub motion_count: f64,
    /// `v p`.
    pub motional_rate: f64,
    /// `E - E_r / gamma`.
    pub rate_difference: f64,
}

fn ulp(x: f64) -> f64 {
    let x = x.abs();
    if x == 0.0 {
        return f64::MIN_POSITIVE * f64::EPSILON;
    }
    let next = f64::from_bits(x.to_bits() + 1);
    next - x
}

/// `a * b` as an unevaluated sum `p + e`.
fn two_product(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl FrameCount {
    /// `|E dt - E_r dt_r - p dx|` in ulps of the larger count.
    pub fn identity_ulps(&self) -> f64 {
        let (lab, lab_err) = two_product(self.energy, self.dt);
        let (rest, rest_err) = two_product(self.rest_energy, self.dt_rest);
        let lhs = (lab - rest) + (lab_err - rest_err);
        (lhs - self.motion_count).abs() / ulp(self.lab_count.max(self.rest_count))
    }

    /// `|v p - (E - E_r / gamma)|` in ulps of `E`.
    pub fn rate_ulps(&self) -> f64 {
        (self.motional_rate - self.rate_difference).abs() / ulp(self.energy)
    }

    pub fn identity_holds(&self, max_ulps: f64) -> bool {
        self.identity_ulps() <= max_ulps && self.rate_ulps() <= max_ulps
    }
}

pub fn frame_count(rest_energy: f64, v: f64, dt: f64) -> Result<FrameCount, MotionError> {
    if !(0.0..1.0).contains(&v) {
        return Err(MotionError::BadSpeed(v));
    }
    if !(rest_energy > 0.0 && rest_energy.is_finite() && dt >= 0.0 && dt.is_finite()) {
        return Err(MotionError::BadFrame);
    }
    let s = (-v).mul_add(v, 1.0);
    let gamma = 1.0 / s.sqrt();
    let inv_gamma = s * gamma;
    let energy = gamma * rest_energy;
    let momentum = energy * v;
    let dt_rest = dt * inv_gamma;
    let dx = v * dt;
    Ok(FrameCount {
        rest_energy,
        v,
        dt,
        gamma,
        energy,
        momentum,
        dt_rest,
        dx,
        lab_count: energy * dt,
        rest_count: rest_energy * dt_rest,
        motion_count: momentum * dx,
        motional_rate: v * momentum,
        rate_difference: rest_energy.mul_add(-inv_gamma, energy),
    })
}
