//! Autocorrelation `<psi(0)|psi(t)>` over one period and numerical location
//! of its zeros.

use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::problem::{ToleranceProfile, WeightVector};

/// Refined minima with `|overlap|` below this but above the orthogonality
/// tolerance are reported as near misses.
pub const NEAR_MISS: f64 = 1e-3;

/// Grid samples per unit of the highest occupied frequency.
const SAMPLES_PER_FREQUENCY: usize = 16;
const GOLDEN_ITERS: usize = 120;

#[derive(Debug, Error, PartialEq)]
pub enum EvolutionError {
    #[error("need at least {min} samples, got {samples}")]
    TooFewSamples { samples: usize, min: usize },
    #[error("cannot place {n} equally weighted levels on a grid of {period}")]
    TooManyLevels { n: usize, period: u64 },
    #[error("at least one level is required")]
    NoLevels,
    #[error("period must be positive")]
    ZeroPeriod,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverlapTrace {
    pub period: u64,
    pub samples: usize,
    pub points: Vec<(f64, Complex64)>,
}

impl OverlapTrace {
    pub fn max_magnitude(&self) -> f64 {
        self.points.iter().map(|(_, z)| z.norm()).fold(0.0, f64::max)
    }

    /// Writes `t,re,im,abs` rows with a header.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "re", "im", "abs"])?;
        for (t, z) in &self.points {
            w.write_record([t.to_string(), z.re.to_string(), z.im.to_string(), z.norm().to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Minimum {
    pub at: f64,
    pub magnitude: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ZeroScan {
    pub zeros: Vec<f64>,
    pub near_misses: Vec<Minimum>,
}

/// `w_n = 1/N` on `n = 0..N`, padded with zeros up to `T`.
pub fn equal_weight_state(n: usize, period: u64) -> Result<WeightVector, EvolutionError> {
    if n == 0 {
        return Err(EvolutionError::NoLevels);
    }
    if n as u64 > period {
        return Err(EvolutionError::TooManyLevels { n, period });
    }
    let mut w = vec![0.0; period as usize];
    w[..n].iter_mut().for_each(|x| *x = 1.0 / n as f64);
    WeightVector::from_raw(w, 0.0).map_err(|_| EvolutionError::NoLevels)
}

pub fn overlap_trace(w: &WeightVector, period: u64, samples: usize) -> Result<OverlapTrace, EvolutionError> {
    if period == 0 {
        return Err(EvolutionError::ZeroPeriod);
    }
    let min = 2 * period as usize;
    if samples < min {
        return Err(EvolutionError::TooFewSamples { samples, min });
    }
    let t_total = period as f64;
    let points = (0..samples)
        .map(|j| {
            let t = j as f64 * t_total / samples as f64;
            (t, w.overlap_at(t, t_total))
        })
        .collect();
    Ok(OverlapTrace { period, samples, points })
}

/// Local minima of `|f|^2` on a uniform grid over `[lo, hi]`, refined by
/// golden-section search and split into zeros (`|f| <= tol`) and near
/// misses. Stretches of the grid where `|f|` is small are rescanned on finer
/// grids first, so that close pairs of zeros are resolved.
pub fn scan_zeros<F: Fn(f64) -> Complex64>(f: F, lo: f64, hi: f64, samples: usize, tol: f64) -> ZeroScan {
    let samples = samples.max(2);
    let step = (hi - lo) / samples as f64;
    let g = |x: f64| f(x).norm_sqr();
    let mut found: Vec<Minimum> = Vec::new();
    small_minima(&g, lo, step, samples, REFINE_DEPTH, &mut found);
    found.sort_by(|a, b| a.at.total_cmp(&b.at));
    let mut scan = ZeroScan::default();
    let mut last: Option<Minimum> = None;
    for m in found {
        if m.magnitude > tol {
            if m.magnitude <= NEAR_MISS {
                scan.near_misses.push(m);
            }
            continue;
        }
        match last {
            Some(prev) if m.at - prev.at <= step * DUPLICATE => {
                if m.magnitude < prev.magnitude {
                    *scan.zeros.last_mut().unwrap() = m.at;
                    last = Some(m);
                }
            }
            _ => {
                scan.zeros.push(m.at);
                last = Some(m);
            }
        }
    }
    scan
}

const REFINE_DEPTH: u32 = 2;
/// Each refinement divides the grid step by this.
const REFINE_FACTOR: usize = 8;
/// Only grid values with `|f|` below this are examined.
const SMALL: f64 = 0.1;
/// Minima closer than this many grid steps are the same zero.
const DUPLICATE: f64 = 1e-4;

/// Pushes the minima of `g` below `SMALL^2`, found on the grid
/// `lo + i * step` for `i = 0..=samples`.
fn small_minima<G: Fn(f64) -> f64>(g: &G, lo: f64, step: f64, samples: usize, depth: u32, out: &mut Vec<Minimum>) {
    let xs: Vec<f64> = (0..=samples).map(|i| lo + i as f64 * step).collect();
    let gs: Vec<f64> = xs.iter().map(|&x| g(x)).collect();
    let small = |i: usize| gs[i] <= SMALL * SMALL;
    if depth == 0 {
        for i in 1..samples {
            if small(i) && gs[i] <= gs[i - 1] && gs[i] <= gs[i + 1] {
                let (at, val) = golden_min(g, xs[i - 1], xs[i + 1]);
                let (at, val) = if gs[i] <= val { (xs[i], gs[i]) } else { (at, val) };
                out.push(Minimum { at, magnitude: val.sqrt() });
            }
        }
        return;
    }
    let mut i = 0;
    while i <= samples {
        if !small(i) {
            i += 1;
            continue;
        }
        let start = i.saturating_sub(1);
        while i <= samples && small(i) {
            i += 1;
        }
        let end = i.min(samples);
        let sub = (end - start) * REFINE_FACTOR;
        small_minima(g, xs[start], step / REFINE_FACTOR as f64, sub, depth - 1, out);
    }
}

fn golden_min<G: Fn(f64) -> f64>(g: G, mut a: f64, mut b: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut gc, mut gd) = (g(c), g(d));
    for _ in 0..GOLDEN_ITERS {
        if b - a <= f64::EPSILON * (a.abs() + b.abs()) {
            break;
        }
        if gc <= gd {
            b = d;
            d = c;
            gd = gc;
            c = b - r * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + r * (b - a);
            gd = g(d);
        }
    }
    if gc <= gd {
        (c, gc)
    } else {
        (d, gd)
    }
}

/// Zeros and near misses of the overlap in `(0, T)`.
pub fn scan_orthogonal_times(w: &WeightVector, period: u64, tol: &ToleranceProfile) -> ZeroScan {
    let support = w.support(0.0);
    if support.len() < 2 || period == 0 {
        return ZeroScan::default();
    }
    let span = support.last().unwrap().0 - support[0].0;
    // Grid is a multiple of T so lattice times are sampled exactly.
    let per_unit = (SAMPLES_PER_FREQUENCY * span).div_ceil(period as usize).max(2);
    let t_total = period as f64;
    scan_zeros(|t| w.overlap_at(t, t_total), 0.0, t_total, per_unit * period as usize, tol.orthogonality)
}

/// Sorted times in `(0, T)` where `|overlap| <= tol.orthogonality`.
pub fn find_orthogonal_times(w: &WeightVector, period: u64, tol: &ToleranceProfile) -> Vec<f64> {
    scan_orthogonal_times(w, period, tol).zeros
}

/// Smallest gap between consecutive times, counting the gaps from `0` to the
/// first time and from the last time to `T`. `T` itself for no times.
pub fn min_cyclic_interval(times: &[f64], period: f64) -> f64 {
    let mut prev = 0.0;
    let mut best = f64::INFINITY;
    for &t in times {
        best = best.min(t - prev);
        prev = t;
    }
    best.min(period - prev)
}
