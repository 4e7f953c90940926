//! Lattice-time orthogonality problems and spectral weight vectors.
//!
//! A periodic evolution with period `T` (in lattice units) can only use the
//! eigenfrequencies `n / T`, `n = 0, 1, 2, ...`. The ground frequency is
//! taken as zero, so every energy reported here is `E - E_0`, expressed in
//! units of `h / 2T`.

use std::collections::BTreeSet;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("at least one orthogonality time is required")]
    NoTimes,
    #[error("period must be positive")]
    ZeroPeriod,
    #[error("time {time} lies outside [0, {period})")]
    TimeOutOfRange { time: u64, period: u64 },
    #[error("times must be strictly increasing (found {prev} then {next})")]
    NotIncreasing { prev: u64, next: u64 },
    #[error("interval {index} has zero length")]
    ZeroInterval { index: usize },
    #[error("scale factor must be positive")]
    ZeroScale,
    #[error("period overflows u64")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeightError {
    #[error("weight vector is empty")]
    Empty,
    #[error("weight {index} is negative or not finite ({value})")]
    Negative { index: usize, value: f64 },
    #[error("weights sum to {sum}, not 1")]
    NotNormalized { sum: f64 },
}

/// Numerical tolerances shared by the solver, the certificate checker and
/// the orthogonality checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceProfile {
    pub feasibility: f64,
    pub orthogonality: f64,
    pub duality_gap: f64,
    pub normalization: f64,
}

impl Default for ToleranceProfile {
    fn default() -> Self {
        Self {
            feasibility: 1e-9,
            orthogonality: 1e-8,
            duality_gap: 1e-7,
            normalization: 1e-12,
        }
    }
}

impl ToleranceProfile {
    pub fn is_valid(&self) -> bool {
        [self.feasibility, self.orthogonality, self.duality_gap, self.normalization]
            .iter()
            .all(|t| t.is_finite() && *t > 0.0)
    }
}

/// A period `T` and `N` lattice times in `[0, T)` at which the evolving
/// state must be mutually orthogonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrthogonalityProblem {
    period: u64,
    times: Vec<u64>,
}

impl OrthogonalityProblem {
    pub fn from_times(period: u64, times: Vec<u64>) -> Result<Self, ProblemError> {
        if period == 0 {
            return Err(ProblemError::ZeroPeriod);
        }
        if times.is_empty() {
            return Err(ProblemError::NoTimes);
        }
        for w in times.windows(2) {
            if w[1] <= w[0] {
                return Err(ProblemError::NotIncreasing { prev: w[0], next: w[1] });
            }
        }
        if let Some(&last) = times.last() {
            if last >= period {
                return Err(ProblemError::TimeOutOfRange { time: last, period });
            }
        }
        Ok(Self { period, times })
    }

    /// Builds the problem whose cyclic intervals are `intervals`, starting at
    /// time 0. The period is their sum.
    pub fn from_intervals(intervals: &[u64]) -> Result<Self, ProblemError> {
        if intervals.is_empty() {
            return Err(ProblemError::NoTimes);
        }
        let mut times = Vec::with_capacity(intervals.len());
        let mut t: u64 = 0;
        for (index, &len) in intervals.iter().enumerate() {
            if len == 0 {
                return Err(ProblemError::ZeroInterval { index });
            }
            times.push(t);
            t = t.checked_add(len).ok_or(ProblemError::Overflow)?;
        }
        Self::from_times(t, times)
    }

    /// `n` equal intervals of length `len`.
    pub fn equal_intervals(n: usize, len: u64) -> Result<Self, ProblemError> {
        Self::from_intervals(&vec![len; n])
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn times(&self) -> &[u64] {
        &self.times
    }

    /// Number of prescribed states `N`.
    pub fn n_states(&self) -> usize {
        self.times.len()
    }

    /// Gaps between consecutive times, closing the cycle back to the first.
    pub fn intervals(&self) -> Vec<u64> {
        let n = self.times.len();
        (0..n)
            .map(|k| {
                if k + 1 < n {
                    self.times[k + 1] - self.times[k]
                } else {
                    self.period - self.times[k] + self.times[0]
                }
            })
            .collect()
    }

    pub fn n_different(&self) -> usize {
        self.intervals().into_iter().collect::<BTreeSet<_>>().len()
    }

    pub fn min_interval(&self) -> u64 {
        self.intervals().into_iter().min().unwrap_or(self.period)
    }

    /// All pairwise time differences, folded into `[1, T/2]` and sorted.
    ///
    /// A difference `d` and its conjugate `T - d` give complex-conjugate
    /// constraints, so only the smaller of the two is kept.
    pub fn pairwise_differences(&self) -> Vec<u64> {
        let t = self.period;
        let mut out = BTreeSet::new();
        for (i, &a) in self.times.iter().enumerate() {
            for &b in &self.times[i + 1..] {
                let d = (b - a) % t;
                out.insert(d.min(t - d));
            }
        }
        out.into_iter().collect()
    }

    /// Multiplies every time and the period by `factor`.
    pub fn scaled(&self, factor: u64) -> Result<Self, ProblemError> {
        if factor == 0 {
            return Err(ProblemError::ZeroScale);
        }
        let period = self.period.checked_mul(factor).ok_or(ProblemError::Overflow)?;
        let times = self.times.iter().map(|&t| t * factor).collect();
        Self::from_times(period, times)
    }

    /// The problem with time running backwards, `t -> (-t) mod T`.
    pub fn reversed(&self) -> Self {
        let t = self.period;
        let mut times: Vec<u64> = self.times.iter().map(|&x| (t - x) % t).collect();
        times.sort_unstable();
        Self { period: t, times }
    }

    /// Hyphen-separated cyclic intervals, e.g. `1-1-2`.
    pub fn intervals_label(&self) -> String {
        self.intervals()
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join("-")
    }
}

/// Table of `e^{2 pi i k / T}` for `k = 0..T`; lookups reduce the phase index
/// modulo `T` first so identical lattice phases get bit-identical values.
#[derive(Debug, Clone)]
pub struct PhaseTable {
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl PhaseTable {
    pub fn new(period: u64) -> Self {
        let t = period as usize;
        let (cos, sin) = (0..t)
            .map(|k| {
                let angle = TAU * k as f64 / period as f64;
                (angle.cos(), angle.sin())
            })
            .unzip();
        Self { cos, sin }
    }

    pub fn period(&self) -> u64 {
        self.cos.len() as u64
    }

    /// `(cos, sin)` of `2 pi n d / T`.
    #[inline]
    pub fn phase(&self, n: u64, d: u64) -> (f64, f64) {
        let t = self.cos.len() as u128;
        let k = ((n as u128 * d as u128) % t) as usize;
        (self.cos[k], self.sin[k])
    }
}

/// Nonnegative weights `w_n = |a_n|^2` on the frequency grid `n / T`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightVector {
    weights: Vec<f64>,
}

impl WeightVector {
    pub fn new(weights: Vec<f64>, tol: &ToleranceProfile) -> Result<Self, WeightError> {
        if weights.is_empty() {
            return Err(WeightError::Empty);
        }
        if let Some((index, &value)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !w.is_finite() || **w < 0.0)
        {
            return Err(WeightError::Negative { index, value });
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > tol.normalization {
            return Err(WeightError::NotNormalized { sum });
        }
        Ok(Self { weights })
    }

    /// Clamps entries above `-clamp_tol` to be nonnegative and rescales to
    /// unit sum. Used for solver output, which is only feasible to within
    /// the solver tolerance.
    pub fn from_raw(mut weights: Vec<f64>, clamp_tol: f64) -> Result<Self, WeightError> {
        if weights.is_empty() {
            return Err(WeightError::Empty);
        }
        for (index, w) in weights.iter_mut().enumerate() {
            if !w.is_finite() || *w < -clamp_tol {
                return Err(WeightError::Negative { index, value: *w });
            }
            if *w < 0.0 {
                *w = 0.0;
            }
        }
        let sum: f64 = weights.iter().sum();
        if !(sum > 0.0) {
            return Err(WeightError::NotNormalized { sum });
        }
        weights.iter_mut().for_each(|w| *w /= sum);
        Ok(Self { weights })
    }

    /// All weight on the ground frequency.
    pub fn ground(n_max: usize) -> Self {
        let mut weights = vec![0.0; n_max.max(1)];
        weights[0] = 1.0;
        Self { weights }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Index of the highest frequency with weight above `threshold`.
    pub fn highest_occupied(&self, threshold: f64) -> Option<usize> {
        self.weights.iter().rposition(|&w| w > threshold)
    }

    /// `(n, w_n)` for every weight above `threshold`.
    pub fn support(&self, threshold: f64) -> Vec<(usize, f64)> {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > threshold)
            .map(|(n, &w)| (n, w))
            .collect()
    }

    /// Weights padded with zeros to length `n_max` (no-op if already longer).
    pub fn padded(&self, n_max: usize) -> Self {
        let mut weights = self.weights.clone();
        if weights.len() < n_max {
            weights.resize(n_max, 0.0);
        }
        Self { weights }
    }

    /// Dimensionless energy `2 * sum_n w_n n`, in units of `h / 2T`.
    pub fn average_energy(&self) -> f64 {
        2.0 * self
            .weights
            .iter()
            .enumerate()
            .map(|(n, &w)| w * n as f64)
            .sum::<f64>()
    }

    /// `sum_n w_n e^{2 pi i n d / T}` for a lattice difference `d`.
    pub fn overlap(&self, d: u64, period: u64) -> Complex64 {
        let table = PhaseTable::new(period);
        self.overlap_with(&table, d)
    }

    pub fn overlap_with(&self, table: &PhaseTable, d: u64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (n, &w) in self.weights.iter().enumerate() {
            if w != 0.0 {
                let (c, s) = table.phase(n as u64, d);
                acc += Complex64::new(w * c, w * s);
            }
        }
        acc
    }

    /// Overlap at a continuous time `t`, `sum_n w_n e^{2 pi i n t / T}`.
    pub fn overlap_at(&self, t: f64, period: f64) -> Complex64 {
        let z = Complex64::from_polar(1.0, TAU * t / period);
        let mut zn = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for &w in &self.weights {
            acc += zn * w;
            zn *= z;
        }
        acc
    }
}
