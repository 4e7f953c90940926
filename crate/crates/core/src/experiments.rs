//! Randomised sweeps over orthogonality problems, scaling summaries and
//! reproducible persistence.
//!
//! Each sample `i` gets `sub_seed = splitmix64(seed ^ splitmix64(i))` and a
//! fresh `ChaCha8Rng::seed_from_u64(sub_seed)`. Stream 1 of that generator
//! picks `(n_different, N)`; stream 0 draws the interval lengths.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::energy::minimize_energy;
use crate::problem::{OrthogonalityProblem, ToleranceProfile};

pub const SUB_SEED_MIX: &str = "splitmix64(seed ^ splitmix64(index))";
pub const PRNG: &str = "rand_chacha 0.3 ChaCha8Rng::seed_from_u64(sub_seed); stream 1 draws n_different then N, stream 0 draws lengths";
pub const SAMPLING: &str =
    "n_different uniform over the set; N uniform over [max(n_min, n_different), n_max]; distinct lengths uniform without replacement; each slot uniform over the chosen lengths, rejected until every length is used";

/// CSV column order.
pub const CSV_HEADER: &str = "index,N,T,n_different,intervals,e_min,e_bound,ratio,cert_gap,ortho_ok,solve_ms,sub_seed";

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),
    #[error("cannot use {n_different} distinct lengths from {lengths} choices in {n} intervals")]
    Impossible { n: usize, n_different: usize, lengths: u64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("thread pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub seed: u64,
    pub samples: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub len_min: u64,
    pub len_max: u64,
    pub n_different: Vec<usize>,
    pub tolerances: ToleranceProfile,
    /// CSV path; the JSONL mirror and metadata go next to it.
    pub output: Option<PathBuf>,
    /// Worker threads, `0` for the rayon default.
    pub parallelism: usize,
    /// Record per-solve wall time. Off by default so output is a pure
    /// function of the configuration.
    pub timing: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            samples: 10_000,
            n_min: 2,
            n_max: 20,
            len_min: 1,
            len_max: 100,
            n_different: vec![2, 3, 4],
            tolerances: ToleranceProfile::default(),
            output: None,
            parallelism: 0,
            timing: false,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |m: &str| Err(ExperimentError::InvalidConfig(m.to_string()));
        if self.n_min == 0 || self.n_min > self.n_max {
            return bad("N range must be nonempty and start at 1 or more");
        }
        if self.len_min == 0 || self.len_min > self.len_max {
            return bad("length range must be nonempty and start at 1 or more");
        }
        if self.n_different.is_empty() {
            return bad("n_different set is empty");
        }
        let lengths = self.len_max - self.len_min + 1;
        for &d in &self.n_different {
            if d == 0 || d > self.n_max || d as u64 > lengths {
                return Err(ExperimentError::InvalidConfig(format!(
                    "n_different = {d} does not fit N <= {} with {lengths} lengths",
                    self.n_max
                )));
            }
        }
        if !self.tolerances.is_valid() {
            return bad("tolerances must be positive");
        }
        Ok(())
    }

    pub fn lengths(&self) -> RangeInclusive<u64> {
        self.len_min..=self.len_max
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub index: usize,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "T")]
    pub t: u64,
    pub n_different: usize,
    pub intervals: String,
    pub e_min: Option<f64>,
    pub e_bound: f64,
    pub ratio: Option<f64>,
    pub cert_gap: Option<f64>,
    pub ortho_ok: bool,
    pub solve_ms: Option<f64>,
    pub sub_seed: u64,
}

impl SweepRecord {
    /// Parses the dash-separated interval list.
    pub fn interval_lengths(&self) -> Vec<u64> {
        self.intervals.split('-').filter_map(|s| s.parse().ok()).collect()
    }

    pub fn solved(&self) -> bool {
        self.e_min.is_some()
    }
}

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn sub_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index))
}

pub fn generate_problem(
    sub_seed: u64,
    n: usize,
    n_different: usize,
    max_len: u64,
) -> Result<OrthogonalityProblem, ExperimentError> {
    generate_problem_in(sub_seed, n, n_different, 1..=max_len)
}

/// `n` cyclic intervals using exactly `n_different` distinct lengths from
/// `lengths`.
pub fn generate_problem_in(
    sub_seed: u64,
    n: usize,
    n_different: usize,
    lengths: RangeInclusive<u64>,
) -> Result<OrthogonalityProblem, ExperimentError> {
    let (lo, hi) = (*lengths.start(), *lengths.end());
    let count = if lo == 0 || hi < lo { 0 } else { hi - lo + 1 };
    if n_different == 0 || n_different > n || n_different as u64 > count {
        return Err(ExperimentError::Impossible { n, n_different, lengths: count });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed);
    let chosen: Vec<u64> = sample(&mut rng, count as usize, n_different)
        .into_iter()
        .map(|i| lo + i as u64)
        .collect();
    let mut slots = vec![0usize; n];
    let mut used = vec![false; n_different];
    loop {
        used.iter_mut().for_each(|u| *u = false);
        for s in slots.iter_mut() {
            *s = rng.gen_range(0..n_different);
            used[*s] = true;
        }
        if used.iter().all(|&u| u) {
            break;
        }
    }
    let intervals: Vec<u64> = slots.iter().map(|&s| chosen[s]).collect();
    OrthogonalityProblem::from_intervals(&intervals).map_err(|_| ExperimentError::Impossible {
        n,
        n_different,
        lengths: count,
    })
}

fn draw_shape(config: &SweepConfig, sub_seed: u64) -> (usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed);
    rng.set_stream(1);
    let nd = config.n_different[rng.gen_range(0..config.n_different.len())];
    let n = rng.gen_range(config.n_min.max(nd)..=config.n_max);
    (nd, n)
}

/// Solves one problem and packs the outcome. Solver failures give a record
/// with empty numeric fields and `ortho_ok = false`.
pub fn solve_record(
    index: usize,
    sub_seed: u64,
    problem: &OrthogonalityProblem,
    tol: &ToleranceProfile,
    timing: bool,
) -> SweepRecord {
    let start = timing.then(Instant::now);
    let result = minimize_energy(problem, tol);
    let solve_ms = start.map(|s| s.elapsed().as_secs_f64() * 1e3);
    let n = problem.n_states();
    let mut record = SweepRecord {
        index,
        n,
        t: problem.period(),
        n_different: problem.n_different(),
        intervals: problem.intervals_label(),
        e_min: None,
        e_bound: (n - 1) as f64,
        ratio: None,
        cert_gap: None,
        ortho_ok: false,
        solve_ms,
        sub_seed,
    };
    if let Ok(r) = result {
        record.e_min = Some(r.e_min);
        record.ratio = r.ratio;
        record.cert_gap = Some(r.certificate.duality_gap);
        record.ortho_ok = r.orthogonal;
    }
    record
}

pub fn sweep_record(config: &SweepConfig, index: usize) -> SweepRecord {
    let seed = sub_seed(config.seed, index as u64);
    let (nd, n) = draw_shape(config, seed);
    let problem = generate_problem_in(seed, n, nd, config.lengths()).expect("validated configuration");
    solve_record(index, seed, &problem, &config.tolerances, config.timing)
}

/// Runs every sample, writes the output files when `config.output` is set,
/// and returns the records ordered by index.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRecord>, ExperimentError> {
    config.validate()?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if config.parallelism > 0 {
        pool = pool.num_threads(config.parallelism);
    }
    let pool = pool.build().map_err(|e| ExperimentError::Pool(e.to_string()))?;
    let records: Vec<SweepRecord> =
        pool.install(|| (0..config.samples).into_par_iter().map(|i| sweep_record(config, i)).collect());
    if let Some(path) = &config.output {
        write_outputs(config, &records, path)?;
    }
    Ok(records)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepMetadata {
    pub seed: u64,
    pub code_version: String,
    pub sub_seed_mix: String,
    pub prng: String,
    pub sampling: String,
    pub columns: String,
    pub config: SweepConfig,
}

impl SweepMetadata {
    pub fn new(config: &SweepConfig) -> Self {
        Self {
            seed: config.seed,
            code_version: env!("CARGO_PKG_VERSION").to_string(),
            sub_seed_mix: SUB_SEED_MIX.to_string(),
            prng: PRNG.to_string(),
            sampling: SAMPLING.to_string(),
            columns: CSV_HEADER.to_string(),
            config: config.clone(),
        }
    }
}

/// `(csv, jsonl, metadata)` paths derived from the CSV path.
pub fn output_paths(csv_path: &Path) -> (PathBuf, PathBuf, PathBuf) {
    (
        csv_path.to_path_buf(),
        csv_path.with_extension("jsonl"),
        csv_path.with_extension("meta.json"),
    )
}

pub fn write_csv<W: Write>(records: &[SweepRecord], out: W) -> Result<(), ExperimentError> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_jsonl<W: Write>(records: &[SweepRecord], mut out: W) -> Result<(), ExperimentError> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_outputs(config: &SweepConfig, records: &[SweepRecord], csv_path: &Path) -> Result<(), ExperimentError> {
    let (csv_p, jsonl_p, meta_p) = output_paths(csv_path);
    write_csv(records, BufWriter::new(File::create(csv_p)?))?;
    write_jsonl(records, BufWriter::new(File::create(jsonl_p)?))?;
    let mut meta = BufWriter::new(File::create(meta_p)?);
    serde_json::to_writer_pretty(&mut meta, &SweepMetadata::new(config))?;
    meta.write_all(b"\n")?;
    meta.flush()?;
    Ok(())
}

pub fn read_csv(path: &Path) -> Result<Vec<SweepRecord>, ExperimentError> {
    let mut r = csv::Reader::from_path(path)?;
    let records = r.deserialize().collect::<Result<Vec<SweepRecord>, _>>()?;
    Ok(records)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SizeGroup {
    All,
    /// `N < 8`.
    Small,
    /// `N >= 8`.
    Large,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingRow {
    pub n_different: usize,
    pub group: SizeGroup,
    pub min_ratio: f64,
    pub median_ratio: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyRow {
    pub n: usize,
    pub e_min: Option<f64>,
    pub ratio: Option<f64>,
    /// `N / (N - 1)`.
    pub expected: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingStudy {
    pub rows: Vec<ScalingRow>,
    pub family: Vec<FamilyRow>,
}

impl ScalingStudy {
    pub fn row(&self, n_different: usize, group: SizeGroup) -> Option<&ScalingRow> {
        self.rows.iter().find(|r| r.n_different == n_different && r.group == group)
    }

    /// Whether the overall minimum ratio never decreases with `n_different`.
    pub fn min_ratio_monotone(&self) -> bool {
        let mins: Vec<f64> = self.rows.iter().filter(|r| r.group == SizeGroup::All).map(|r| r.min_ratio).collect();
        mins.windows(2).all(|w| w[1] >= w[0])
    }
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Min and median ratio per `n_different`, overall and split at `N = 8`.
/// Unsolved records and single-state records are skipped.
pub fn summarize(records: &[SweepRecord]) -> Vec<ScalingRow> {
    let mut nds: Vec<usize> = records.iter().map(|r| r.n_different).collect();
    nds.sort_unstable();
    nds.dedup();
    let mut rows = Vec::new();
    for nd in nds {
        for group in [SizeGroup::All, SizeGroup::Small, SizeGroup::Large] {
            let mut ratios: Vec<f64> = records
                .iter()
                .filter(|r| r.n_different == nd)
                .filter(|r| match group {
                    SizeGroup::All => true,
                    SizeGroup::Small => r.n < 8,
                    SizeGroup::Large => r.n >= 8,
                })
                .filter_map(|r| r.ratio)
                .collect();
            if ratios.is_empty() {
                continue;
            }
            ratios.sort_by(f64::total_cmp);
            rows.push(ScalingRow {
                n_different: nd,
                group,
                min_ratio: ratios[0],
                median_ratio: median(&ratios),
                count: ratios.len(),
            });
        }
    }
    rows
}

/// Intervals `(1, ..., 1, 2)` with `N - 1` ones.
pub fn double_interval_problem(n: usize) -> OrthogonalityProblem {
    let mut intervals = vec![1u64; n.max(1)];
    *intervals.last_mut().unwrap() = 2;
    OrthogonalityProblem::from_intervals(&intervals).expect("positive intervals")
}

/// The `(1, ..., 1, 2)` family for `N = 2..=n_max`.
pub fn double_interval_family(n_max: usize, tol: &ToleranceProfile) -> Vec<FamilyRow> {
    (2..=n_max)
        .map(|n| {
            let r = minimize_energy(&double_interval_problem(n), tol).ok();
            FamilyRow {
                n,
                e_min: r.as_ref().map(|r| r.e_min),
                ratio: r.and_then(|r| r.ratio),
                expected: n as f64 / (n - 1) as f64,
            }
        })
        .collect()
}

pub fn scaling_study(config: &SweepConfig) -> Result<ScalingStudy, ExperimentError> {
    let records = run_sweep(config)?;
    Ok(ScalingStudy {
        rows: summarize(&records),
        family: double_interval_family(19, &config.tolerances),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaleEntry {
    pub factor: u64,
    pub e_min: Option<f64>,
    pub difference: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaleReport {
    pub base: Option<f64>,
    pub entries: Vec<ScaleEntry>,
    pub max_difference: f64,
    pub pass: bool,
}

/// Re-solves with all times and `T` multiplied by each factor and compares
/// the dimensionless `e_min` (pass within `tolerance`).
pub fn scale_invariance_check(
    problem: &OrthogonalityProblem,
    factors: &[u64],
    tol: &ToleranceProfile,
    tolerance: f64,
) -> ScaleReport {
    let base = minimize_energy(problem, tol).ok().map(|r| r.e_min);
    let entries: Vec<ScaleEntry> = factors
        .iter()
        .map(|&factor| {
            let e_min = problem
                .scaled(factor)
                .ok()
                .and_then(|p| minimize_energy(&p, tol).ok())
                .map(|r| r.e_min);
            let difference = base.zip(e_min).map(|(a, b)| (a - b).abs());
            ScaleEntry { factor, e_min, difference }
        })
        .collect();
    let max_difference = entries
        .iter()
        .map(|e| e.difference.unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max);
    let pass = base.is_some() && max_difference <= tolerance;
    ScaleReport { base, entries, max_difference, pass }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> ToleranceProfile {
        ToleranceProfile::default()
    }

    #[test]
    fn splitmix_reference_values() {
        // First outputs of the reference splitmix64 generator seeded with 0.
        assert_eq!(splitmix64(0), 0xE220_A839_7B1D_CDAF);
        assert_eq!(splitmix64(0x9E37_79B9_7F4A_7C15), 0x6E78_9E6A_A1B9_65F4);
        assert_ne!(sub_seed(1, 0), sub_seed(1, 1));
        assert_ne!(sub_seed(1, 0), sub_seed(2, 0));
    }

    #[test]
    fn equal_lengths_for_one_distinct() {
        for seed in 0..20 {
            let p = generate_problem(seed, 5, 1, 100).unwrap();
            let iv = p.intervals();
            assert_eq!(iv.len(), 5);
            assert!(iv.iter().all(|&x| x == iv[0]));
        }
    }

    #[test]
    fn two_states_two_lengths() {
        for seed in 0..20 {
            let p = generate_problem(seed, 2, 2, 100).unwrap();
            let iv = p.intervals();
            assert_ne!(iv[0], iv[1]);
            assert_eq!(p.period(), iv[0] + iv[1]);
            assert_eq!(p.times()[0], 0);
        }
    }

    #[test]
    fn generation_is_deterministic_and_uses_every_length() {
        for seed in 0..50 {
            let a = generate_problem(seed, 7, 4, 10).unwrap();
            assert_eq!(a, generate_problem(seed, 7, 4, 10).unwrap());
            assert_eq!(a.n_different(), 4);
            assert!(a.intervals().iter().all(|&x| (1..=10).contains(&x)));
        }
    }

    #[test]
    fn impossible_generation_rejected() {
        assert!(matches!(generate_problem(0, 2, 3, 100), Err(ExperimentError::Impossible { .. })));
        assert!(matches!(generate_problem(0, 5, 3, 2), Err(ExperimentError::Impossible { .. })));
        assert!(matches!(generate_problem(0, 5, 0, 2), Err(ExperimentError::Impossible { .. })));
    }

    #[test]
    fn config_validation() {
        assert!(SweepConfig::default().validate().is_ok());
        let bad = SweepConfig { n_different: vec![], ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = SweepConfig { n_max: 3, n_different: vec![4], ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = SweepConfig { len_min: 5, len_max: 4, ..Default::default() };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn shapes_respect_ranges() {
        let c = SweepConfig { n_min: 2, n_max: 6, n_different: vec![3, 5], ..Default::default() };
        for i in 0..200 {
            let (nd, n) = draw_shape(&c, sub_seed(c.seed, i));
            assert!(nd == 3 || nd == 5);
            assert!(n >= nd && n <= 6);
        }
    }

    #[test]
    fn small_sweep_records() {
        let c = SweepConfig { samples: 20, n_max: 6, len_max: 8, ..Default::default() };
        let rs = run_sweep(&c).unwrap();
        assert_eq!(rs.len(), 20);
        for (i, r) in rs.iter().enumerate() {
            assert_eq!(r.index, i);
            assert_eq!(r.interval_lengths().iter().sum::<u64>(), r.t);
            assert_eq!(r.interval_lengths().len(), r.n);
            assert!(r.ortho_ok);
            assert!(r.ratio.unwrap() >= 1.0 - 1e-7);
            assert!(r.cert_gap.unwrap() <= 1e-7);
            assert_eq!(r.solve_ms, None);
        }
    }

    #[test]
    fn csv_header_matches_schema() {
        let c = SweepConfig { samples: 2, n_max: 4, len_max: 5, ..Default::default() };
        let rs = run_sweep(&c).unwrap();
        let mut buf = Vec::new();
        write_csv(&rs, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_HEADER);
        assert_eq!(text.lines().count(), 3);
    }

    #[test]
    fn failed_record_has_empty_fields() {
        let r = SweepRecord {
            index: 3,
            n: 2,
            t: 3,
            n_different: 2,
            intervals: "1-2".into(),
            e_min: None,
            e_bound: 1.0,
            ratio: None,
            cert_gap: None,
            ortho_ok: false,
            solve_ms: None,
            sub_seed: 9,
        };
        let mut buf = Vec::new();
        write_csv(std::slice::from_ref(&r), &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().nth(1).unwrap(), "3,2,3,2,1-2,,1.0,,,false,,9");
        let mut buf = Vec::new();
        write_jsonl(&[r], &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert!(v["e_min"].is_null());
        assert_eq!(v["N"], 2);
    }

    #[test]
    fn summary_groups() {
        let mk = |n: usize, nd: usize, ratio: f64| SweepRecord {
            index: 0,
            n,
            t: 0,
            n_different: nd,
            intervals: String::new(),
            e_min: Some(ratio * (n - 1) as f64),
            e_bound: (n - 1) as f64,
            ratio: Some(ratio),
            cert_gap: Some(0.0),
            ortho_ok: true,
            solve_ms: None,
            sub_seed: 0,
        };
        let rs = vec![mk(3, 2, 1.5), mk(9, 2, 1.2), mk(10, 2, 1.4), mk(4, 3, 2.0)];
        let rows = summarize(&rs);
        let study = ScalingStudy { rows, family: vec![] };
        let all2 = study.row(2, SizeGroup::All).unwrap();
        assert_eq!((all2.min_ratio, all2.median_ratio, all2.count), (1.2, 1.4, 3));
        let large2 = study.row(2, SizeGroup::Large).unwrap();
        assert_eq!(large2.min_ratio, 1.2);
        assert!((large2.median_ratio - 1.3).abs() < 1e-15);
        assert_eq!(study.row(3, SizeGroup::Large), None);
        assert!(study.min_ratio_monotone());
    }

    #[test]
    fn family_ratios() {
        let fam = double_interval_family(6, &tol());
        assert_eq!(fam.len(), 5);
        for row in &fam {
            assert!((row.e_min.unwrap() - row.n as f64).abs() < 1e-9);
            assert!((row.ratio.unwrap() - row.expected).abs() < 1e-9);
        }
        assert_eq!(double_interval_problem(3).intervals(), vec![1, 1, 2]);
    }

    #[test]
    fn scale_invariance_examples() {
        let p = OrthogonalityProblem::from_intervals(&[1, 1, 2]).unwrap();
        let r = scale_invariance_check(&p, &[1, 2], &tol(), 1e-9);
        assert!(r.pass);
        assert!((r.entries[1].e_min.unwrap() - 3.0).abs() < 1e-9);
        let eq = OrthogonalityProblem::equal_intervals(5, 1).unwrap();
        let r = scale_invariance_check(&eq, &[3], &tol(), 1e-9);
        assert!(r.pass);
        assert!((r.entries[0].e_min.unwrap() - 4.0).abs() < 1e-9);
    }
}
