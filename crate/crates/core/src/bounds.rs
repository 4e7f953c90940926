//! Closed-form speed-limit bounds on energy and momentum.
//!
//! `h` is always passed explicitly. Energies are `E - E_0` unless stated
//! otherwise; times and distances are in whatever unit `T` uses.

use serde::{Deserialize, Serialize};

/// Relative slack (in units of `h`) for the boolean checks.
pub const CHECK_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// `E - E_0 >= h (N - 1) / 2T`.
    Bandwidth,
    /// `E - E_0 >= h / (4 tau_min)`.
    MinInterval,
    /// `E - E_0 >= h N / 4T`.
    EqualSpacingMinInterval,
    /// `E tau >= h / 2`.
    AverageRate,
    /// `E T >= h / 2`.
    Oscillator,
    /// `p lambda >= h / 2`.
    AverageDistance,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Bandwidth => "eband",
            BoundKind::MinInterval => "taumin",
            BoundKind::EqualSpacingMinInterval => "n2t",
            BoundKind::AverageRate => "average_rate",
            BoundKind::Oscillator => "oscillator",
            BoundKind::AverageDistance => "px",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub inputs: Vec<(String, f64)>,
    pub value: f64,
    /// Whether a supplied actual value meets the bound.
    pub satisfied: Option<bool>,
    /// For [`dominating_bound`]: true when both bounds agree to within
    /// [`CHECK_TOL`].
    pub coincide: bool,
}

impl BoundReport {
    fn new(kind: BoundKind, inputs: &[(&str, f64)], value: f64) -> Self {
        Self {
            kind,
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            value,
            satisfied: None,
            coincide: false,
        }
    }

    /// Records whether `actual` reaches the bound.
    pub fn check(mut self, actual: f64, h: f64) -> Self {
        self.satisfied = Some(actual >= self.value - CHECK_TOL * h);
        self
    }
}

/// Minimum `E - E_0` for `N` mutually orthogonal states in period `T`.
pub fn eband_bound(n: usize, period: f64, h: f64) -> f64 {
    h * n.saturating_sub(1) as f64 / (2.0 * period)
}

/// Minimum `E - E_0` given the shortest interval between orthogonal states.
pub fn taumin_bound(tau_min: f64, h: f64) -> f64 {
    h / (4.0 * tau_min)
}

/// [`taumin_bound`] evaluated at the equal spacing `T / N`.
pub fn n2t_bound(n: usize, period: f64, h: f64) -> f64 {
    h * n as f64 / (4.0 * period)
}

pub fn oscillator_bound(period: f64, h: f64) -> f64 {
    h / (2.0 * period)
}

/// Interval below which the min-interval bound overtakes the bandwidth
/// bound: `T / (2 (N - 1))`, infinite for `N = 1`.
pub fn dominance_threshold(n: usize, period: f64) -> f64 {
    if n <= 1 {
        f64::INFINITY
    } else {
        period / (2.0 * (n - 1) as f64)
    }
}

/// The larger of [`eband_bound`] and [`taumin_bound`]. The min-interval
/// bound dominates exactly when `tau_min < T / (2 (N - 1))`.
pub fn dominating_bound(n: usize, period: f64, tau_min: f64, h: f64) -> BoundReport {
    let eband = eband_bound(n, period, h);
    let taumin = taumin_bound(tau_min, h);
    let inputs = [("n", n as f64), ("t", period), ("tau_min", tau_min), ("h", h)];
    let kind = if tau_min < dominance_threshold(n, period) { BoundKind::MinInterval } else { BoundKind::Bandwidth };
    let mut report = BoundReport::new(kind, &inputs, eband.max(taumin));
    report.coincide = (eband - taumin).abs() <= CHECK_TOL * h;
    report
}

/// `E tau_avg >= h / 2`. This holds exactly when the ground energy itself
/// satisfies the oscillator bound, and asymptotically in `N` otherwise.
pub fn average_rate_check(energy: f64, tau_avg: f64, h: f64) -> bool {
    energy * tau_avg >= h / 2.0 - CHECK_TOL * h
}

/// `p lambda_avg >= h / 2`, for the average distance between distinct
/// positions. A minimum distance only obeys the weaker `p lambda_min >= h/4`
/// (see [`crate::motion::pmin_check`]).
pub fn px_bound(momentum: f64, lambda_avg: f64, h: f64) -> bool {
    momentum * lambda_avg >= h / 2.0 - CHECK_TOL * h
}

/// Every closed-form bound for `N` states in period `T`, with the optional
/// minimum interval.
pub fn all_bounds(n: usize, period: f64, tau_min: Option<f64>, h: f64) -> Vec<BoundReport> {
    let base = [("n", n as f64), ("t", period), ("h", h)];
    let mut out = vec![
        BoundReport::new(BoundKind::Bandwidth, &base, eband_bound(n, period, h)),
        BoundReport::new(BoundKind::EqualSpacingMinInterval, &base, n2t_bound(n, period, h)),
        BoundReport::new(BoundKind::Oscillator, &[("t", period), ("h", h)], oscillator_bound(period, h)),
    ];
    if let Some(tau) = tau_min {
        out.push(BoundReport::new(BoundKind::MinInterval, &[("tau_min", tau), ("h", h)], taumin_bound(tau, h)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eband_examples() {
        assert_eq!(eband_bound(1, 3.0, 1.0), 0.0);
        assert_eq!(eband_bound(4, 4.0, 1.0), 0.375);
        // dimensionless: divide by h / 2T
        assert_eq!(eband_bound(4, 4.0, 1.0) / oscillator_bound(4.0, 1.0), 3.0);
        assert_eq!(eband_bound(2, 2.0, 1.0), 0.25);
    }

    #[test]
    fn taumin_examples() {
        assert_eq!(taumin_bound(1.0, 1.0), 0.25);
        assert_eq!(taumin_bound(2.0 / 2.0, 1.0), eband_bound(2, 2.0, 1.0));
        assert_eq!(taumin_bound(2.0, 1.0), 0.5 * taumin_bound(1.0, 1.0));
    }

    #[test]
    fn n2t_examples() {
        assert_eq!(n2t_bound(2, 2.0, 1.0), eband_bound(2, 2.0, 1.0));
        assert_eq!(n2t_bound(4, 4.0, 1.0), 0.25);
        let ratio = n2t_bound(100_000, 1.0, 1.0) / eband_bound(100_000, 1.0, 1.0);
        assert!((ratio - 0.5).abs() < 1e-5);
    }

    #[test]
    fn n2t_never_exceeds_eband() {
        for n in 2..200 {
            let (a, b) = (eband_bound(n, 7.0, 1.3), n2t_bound(n, 7.0, 1.3));
            assert!(a >= b);
            assert_eq!(a == b, n == 2, "n = {n}");
        }
    }

    #[test]
    fn dominance_examples() {
        let r = dominating_bound(10, 10.0, 0.1, 1.0);
        assert_eq!(r.kind, BoundKind::MinInterval);
        assert_eq!(r.value, 2.5);
        let r = dominating_bound(10, 10.0, 1.0, 1.0);
        assert_eq!(r.kind, BoundKind::Bandwidth);
        assert_eq!(r.value, 0.45);
        let r = dominating_bound(2, 6.0, 3.0, 1.0);
        assert!(r.coincide);
        assert_eq!(r.kind, BoundKind::Bandwidth);
        assert_eq!(dominating_bound(2, 6.0, 2.999, 1.0).kind, BoundKind::MinInterval);
    }

    #[test]
    fn dominance_is_continuous_at_threshold() {
        for n in 2..30 {
            let t = 13.0;
            let th = dominance_threshold(n, t);
            let below = dominating_bound(n, t, th * (1.0 - 1e-12), 1.0).value;
            let above = dominating_bound(n, t, th * (1.0 + 1e-12), 1.0).value;
            assert!((below - above).abs() < 1e-9 * below);
        }
    }

    #[test]
    fn rate_checks() {
        assert!(average_rate_check(1.0, 0.5, 1.0));
        assert!(!average_rate_check(1.0, 0.4, 1.0));
        assert!(px_bound(1.0, 0.5, 1.0));
        assert!(!px_bound(1.0, 0.49, 1.0));
    }

    #[test]
    fn equal_interval_optimum_approaches_average_rate_limit() {
        // E = h (N - 1) / 2T with tau = T / N gives E tau = h (N - 1) / 2N.
        let (t, h) = (1.0, 1.0);
        let mut last = 0.0;
        for n in [2usize, 10, 100, 1000, 100_000] {
            let product = eband_bound(n, t, h) * (t / n as f64);
            assert!(product < h / 2.0);
            assert!(product > last);
            last = product;
        }
        assert!((last - 0.5).abs() < 1e-5);
        // With a ground energy of h / 2T the rate bound holds for every N.
        for n in 1..50 {
            let e = oscillator_bound(t, h) + eband_bound(n, t, h);
            assert!(average_rate_check(e, t / n as f64, h));
        }
    }

    #[test]
    fn oscillator_examples() {
        assert_eq!(oscillator_bound(1.0, 1.0), 0.5);
        assert_eq!(oscillator_bound(2.0, 2.0), 0.5);
        for t in [0.5, 1.0, 3.0] {
            assert_eq!(oscillator_bound(t, 1.0), eband_bound(2, t, 1.0));
        }
    }

    #[test]
    fn linear_in_h_and_inverse_in_time() {
        for &(n, t, tau) in &[(3usize, 5.0, 0.7), (11, 2.0, 0.1)] {
            assert!((eband_bound(n, t, 2.0) - 2.0 * eband_bound(n, t, 1.0)).abs() < 1e-15);
            assert!((eband_bound(n, 2.0 * t, 1.0) - 0.5 * eband_bound(n, t, 1.0)).abs() < 1e-15);
            assert!((taumin_bound(tau, 3.0) - 3.0 * taumin_bound(tau, 1.0)).abs() < 1e-14);
            assert!((n2t_bound(n, 4.0 * t, 1.0) - 0.25 * n2t_bound(n, t, 1.0)).abs() < 1e-15);
            assert!((oscillator_bound(3.0 * t, 1.0) - oscillator_bound(t, 1.0) / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn report_check_flag() {
        let r = BoundReport::new(BoundKind::Bandwidth, &[], 0.375).check(0.4, 1.0);
        assert_eq!(r.satisfied, Some(true));
        let r = BoundReport::new(BoundKind::Bandwidth, &[], 0.375).check(0.3, 1.0);
        assert_eq!(r.satisfied, Some(false));
        assert_eq!(all_bounds(4, 4.0, Some(1.0), 1.0).len(), 4);
    }
}
