mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use statechange::bounds::{all_bounds, dominating_bound};
use statechange::evolution::{equal_weight_state, min_cyclic_interval, overlap_trace, scan_orthogonal_times};
use statechange::experiments::{double_interval_family, run_sweep, summarize, SweepConfig};
use statechange::motion::{frame_count, pmin_check, MomentumState};
use statechange::{minimize_energy, OrthogonalityProblem, ToleranceProfile, WeightVector};

use output::{Field, Format, Table};

#[derive(Debug)]
enum CliError {
    Usage(String),
    Solver(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Solver(m) | CliError::Io(m) => m,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(name = "statechange", version, about = "Minimum energy for periodic evolutions through orthogonal states")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Report format.
    #[arg(long, value_enum, default_value = "table", global = true)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Planck constant; 1 by default, 2 for the "h = 2" convention.
    #[arg(long, default_value_t = 1.0, global = true)]
    h: f64,
    /// Primal feasibility tolerance [default: 1e-9]
    #[arg(long, global = true)]
    feas_tol: Option<f64>,
    /// Largest |overlap| counted as orthogonal [default: 1e-8]
    #[arg(long, global = true)]
    ortho_tol: Option<f64>,
    /// Duality gap tolerance [default: 1e-7]
    #[arg(long, global = true)]
    gap_tol: Option<f64>,
}

impl Global {
    fn tolerances(&self) -> CliResult<ToleranceProfile> {
        let mut tol = ToleranceProfile::default();
        if let Some(x) = self.feas_tol {
            tol.feasibility = x;
        }
        if let Some(x) = self.ortho_tol {
            tol.orthogonality = x;
        }
        if let Some(x) = self.gap_tol {
            tol.duality_gap = x;
        }
        if !tol.is_valid() {
            return Err(CliError::Usage("tolerances must be positive".into()));
        }
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(CliError::Usage("--h must be positive".into()));
        }
        Ok(tol)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Minimum energy for a set of cyclic intervals.
    Solve(SolveArgs),
    /// Closed-form energy bounds.
    Bounds(BoundsArgs),
    /// Overlap trace and orthogonal times of a weight vector.
    Evolve(EvolveArgs),
    /// Minimum orthogonal displacement of a momentum superposition.
    Shift(ShiftArgs),
    /// Lab and rest frame state counts of a moving body.
    Frames(FramesArgs),
    /// Seeded random sweep, or the (1,...,1,2) family.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Comma-separated interval lengths, integers or fractions like 1/2.
    intervals: Option<String>,
    /// Comma-separated lattice times (first must be 0), with --period.
    #[arg(long, requires = "period", conflicts_with = "intervals")]
    times: Option<String>,
    #[arg(long)]
    period: Option<u64>,
    /// JSON file with {"intervals": [...]} or {"period": T, "times": [...]}.
    #[arg(long, conflicts_with_all = ["intervals", "times"])]
    problem: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    t: f64,
    #[arg(long)]
    taumin: Option<f64>,
}

#[derive(Args)]
struct EvolveArgs {
    /// Equal weights on the lowest N levels.
    #[arg(long, conflicts_with = "weights")]
    equal: Option<usize>,
    /// Comma-separated weights w_0, w_1, ...
    #[arg(long)]
    weights: Option<String>,
    /// Period; defaults to the number of levels.
    #[arg(long)]
    t: Option<u64>,
    /// Trace samples per period (at least 2T).
    #[arg(long)]
    samples: Option<usize>,
    /// Write the trace as CSV (t,re,im,abs).
    #[arg(long)]
    trace_out: Option<PathBuf>,
}

#[derive(Args)]
struct ShiftArgs {
    /// Comma-separated nonnegative increasing momenta.
    #[arg(long)]
    p: String,
    /// Comma-separated weights; uniform when omitted.
    #[arg(long)]
    u: Option<String>,
    #[arg(long, default_value_t = 0.5)]
    v: f64,
}

#[derive(Args)]
struct FramesArgs {
    #[arg(long)]
    er: f64,
    #[arg(long)]
    v: f64,
    #[arg(long, default_value_t = 1.0)]
    dt: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Double,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    /// Comma-separated set of distinct-length counts.
    #[arg(long, default_value = "2,3,4")]
    ndiff: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Worker threads; 0 uses all cores
    #[arg(long, default_value_t = 0)]
    parallelism: usize,
    #[arg(long, default_value_t = 2)]
    nmin: usize,
    #[arg(long, default_value_t = 20)]
    nmax: usize,
    #[arg(long, default_value_t = 1)]
    len_min: u64,
    #[arg(long, default_value_t = 100)]
    len_max: u64,
    /// Record CSV; the .jsonl mirror and .meta.json go next to it.
    #[arg(long, default_value = "sweep.csv")]
    out: PathBuf,
    /// Record per-solve wall time (output is then not reproducible).
    #[arg(long)]
    timing: bool,
    /// Evaluate a constructed family instead of sampling.
    #[arg(long, value_enum)]
    family: Option<Family>,
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> CliResult<Vec<T>> {
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| CliError::Usage(format!("bad {what} value '{x}'"))))
        .collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Integers or fractions, scaled by the common denominator.
fn parse_intervals(s: &str) -> CliResult<Vec<u64>> {
    let bad = |x: &str| CliError::Usage(format!("bad interval '{x}'"));
    let mut fracs = Vec::new();
    for part in s.split(',').map(str::trim) {
        let (n, d) = match part.split_once('/') {
            Some((n, d)) => (n.trim().parse::<u64>(), d.trim().parse::<u64>()),
            None => (part.parse::<u64>(), Ok(1)),
        };
        match (n, d) {
            (Ok(n), Ok(d)) if n > 0 && d > 0 => fracs.push((n, d)),
            _ => return Err(bad(part)),
        }
    }
    let lcm = fracs
        .iter()
        .try_fold(1u64, |l, &(_, d)| (l / gcd(l, d)).checked_mul(d))
        .ok_or_else(|| CliError::Usage("denominators too large".into()))?;
    fracs
        .iter()
        .map(|&(n, d)| n.checked_mul(lcm / d).ok_or_else(|| CliError::Usage("interval too large".into())))
        .collect()
}

fn load_problem(path: &Path) -> CliResult<OrthogonalityProblem> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let v: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let ints = |key: &str| -> CliResult<Option<Vec<u64>>> {
        match v.get(key) {
            None => Ok(None),
            Some(a) => a
                .as_array()
                .and_then(|a| a.iter().map(|x| x.as_u64()).collect::<Option<Vec<u64>>>())
                .map(Some)
                .ok_or_else(|| CliError::Usage(format!("'{key}' must be a list of nonnegative integers"))),
        }
    };
    let result = if let Some(iv) = ints("intervals")? {
        OrthogonalityProblem::from_intervals(&iv)
    } else {
        let times = ints("times")?.ok_or_else(|| CliError::Usage("problem needs 'intervals' or 'times'".into()))?;
        let period = v
            .get("period")
            .and_then(|p| p.as_u64())
            .ok_or_else(|| CliError::Usage("'times' needs an integer 'period'".into()))?;
        OrthogonalityProblem::from_times(period, times)
    };
    result.map_err(|e| CliError::Usage(e.to_string()))
}

fn cmd_solve(args: &SolveArgs, g: &Global) -> CliResult<Table> {
    let tol = g.tolerances()?;
    let problem = if let Some(path) = &args.problem {
        load_problem(path)?
    } else if let Some(times) = &args.times {
        OrthogonalityProblem::from_times(args.period.unwrap_or(0), parse_list(times, "time")?)
            .map_err(|e| CliError::Usage(e.to_string()))?
    } else if let Some(iv) = &args.intervals {
        OrthogonalityProblem::from_intervals(&parse_intervals(iv)?).map_err(|e| CliError::Usage(e.to_string()))?
    } else {
        return Err(CliError::Usage("give intervals, --times with --period, or --problem".into()));
    };
    let r = minimize_energy(&problem, &tol).map_err(|e| CliError::Solver(format!("solver failed: {e}")))?;
    let support = r.weights.support(1e-12);
    let weights = support
        .iter()
        .map(|(n, w)| format!("{n}:{}", output::num(*w)))
        .collect::<Vec<_>>()
        .join(" ");
    let t = problem.period() as f64;
    let table = Table::single(vec![
        ("intervals", problem.intervals_label().into()),
        ("N", problem.n_states().into()),
        ("T", problem.period().into()),
        ("n_different", problem.n_different().into()),
        ("e_min", r.e_min.into()),
        ("e_bound", r.e_bound.into()),
        ("ratio", r.ratio.into()),
        ("energy", (r.e_min * g.h / (2.0 * t)).into()),
        ("weights", weights.into()),
        ("primal_residual", r.certificate.primal_residual.into()),
        ("dual_residual", r.certificate.dual_residual.into()),
        ("cert_gap", r.certificate.duality_gap.into()),
        ("cert_pass", r.certificate.pass.into()),
        ("ortho_ok", r.orthogonal.into()),
    ]);
    if !r.verified() {
        emit(&table, g)?;
        return Err(CliError::Solver("solution failed verification".into()));
    }
    Ok(table)
}

fn cmd_bounds(args: &BoundsArgs, g: &Global) -> CliResult<Table> {
    g.tolerances()?;
    if args.n == 0 || !(args.t > 0.0 && args.t.is_finite()) {
        return Err(CliError::Usage("need --n >= 1 and --t > 0".into()));
    }
    if args.taumin.is_some_and(|x| !(x > 0.0 && x.is_finite())) {
        return Err(CliError::Usage("--taumin must be positive".into()));
    }
    let mut table = Table::new(vec!["bound", "value", "dimensionless", "dominant"]);
    let unit = g.h / (2.0 * args.t);
    for r in all_bounds(args.n, args.t, args.taumin, g.h) {
        table.push(vec![r.kind.name().into(), r.value.into(), (r.value / unit).into(), Field::Missing]);
    }
    if let Some(tau) = args.taumin {
        let d = dominating_bound(args.n, args.t, tau, g.h);
        let which = if d.coincide { "coincide" } else { d.kind.name() };
        table.push(vec!["max".into(), d.value.into(), (d.value / unit).into(), which.into()]);
    }
    Ok(table)
}

fn cmd_evolve(args: &EvolveArgs, g: &Global) -> CliResult<Table> {
    let tol = g.tolerances()?;
    let (w, period) = match (args.equal, &args.weights) {
        (Some(n), None) => {
            let t = args.t.unwrap_or(n as u64);
            (equal_weight_state(n, t).map_err(|e| CliError::Usage(e.to_string()))?, t)
        }
        (None, Some(ws)) => {
            let raw: Vec<f64> = parse_list(ws, "weight")?;
            let t = args.t.unwrap_or(raw.len() as u64);
            let lenient = ToleranceProfile { normalization: 1e-9, ..tol };
            let w = WeightVector::new(raw, &lenient).map_err(|e| CliError::Usage(e.to_string()))?;
            let w = WeightVector::from_raw(w.weights().to_vec(), 0.0).map_err(|e| CliError::Usage(e.to_string()))?;
            (w, t)
        }
        _ => return Err(CliError::Usage("give exactly one of --equal or --weights".into())),
    };
    if period == 0 {
        return Err(CliError::Usage("--t must be positive".into()));
    }
    let samples = args.samples.unwrap_or(32 * period as usize);
    let trace = overlap_trace(&w, period, samples).map_err(|e| CliError::Usage(e.to_string()))?;
    if let Some(path) = &args.trace_out {
        let file = fs::File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        trace
            .write_csv(std::io::BufWriter::new(file))
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    let scan = scan_orthogonal_times(&w, period, &tol);
    let tau = (!scan.zeros.is_empty()).then(|| min_cyclic_interval(&scan.zeros, period as f64));
    Ok(Table::single(vec![
        ("T", period.into()),
        ("energy", w.average_energy().into()),
        ("orthogonal_times", Field::List(scan.zeros.clone())),
        ("count", scan.zeros.len().into()),
        ("near_misses", Field::List(scan.near_misses.iter().map(|m| m.at).collect())),
        ("tau_min", tau.into()),
        ("taumin_bound", tau.map(|t| period as f64 / (2.0 * t)).into()),
        ("max_abs", trace.max_magnitude().into()),
    ]))
}

fn cmd_shift(args: &ShiftArgs, g: &Global) -> CliResult<Table> {
    let tol = g.tolerances()?;
    if !(args.v > 0.0 && args.v < 1.0) {
        return Err(CliError::Usage("--v must lie in (0, 1)".into()));
    }
    let p: Vec<f64> = parse_list(&args.p, "momentum")?;
    let state = match &args.u {
        Some(u) => {
            let lenient = ToleranceProfile { normalization: 1e-9, ..tol };
            MomentumState::new(p, parse_list(u, "weight")?, g.h, &lenient)
        }
        None => MomentumState::uniform(p, g.h),
    }
    .map_err(|e| CliError::Usage(e.to_string()))?;
    let r = pmin_check(&state, &tol);
    Ok(Table::single(vec![
        ("h", g.h.into()),
        ("mean_p", r.mean_momentum.into()),
        ("lambda_min", r.lambda_min.into()),
        ("product", r.product.into()),
        ("bound", r.bound.into()),
        ("satisfied", r.satisfied.into()),
        ("equality", r.equality.into()),
        ("tau_min", r.lambda_min.map(|l| l / args.v).into()),
    ]))
}

fn cmd_frames(args: &FramesArgs, _g: &Global) -> CliResult<Table> {
    let f = frame_count(args.er, args.v, args.dt).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(Table::single(vec![
        ("rest_energy", f.rest_energy.into()),
        ("v", f.v.into()),
        ("dt", f.dt.into()),
        ("gamma", f.gamma.into()),
        ("energy", f.energy.into()),
        ("momentum", f.momentum.into()),
        ("dt_rest", f.dt_rest.into()),
        ("dx", f.dx.into()),
        ("lab_count", f.lab_count.into()),
        ("rest_count", f.rest_count.into()),
        ("motion_count", f.motion_count.into()),
        ("count_difference", (f.lab_count - f.rest_count).into()),
        ("motional_rate", f.motional_rate.into()),
        ("rate_difference", f.rate_difference.into()),
        ("identity_ulps", f.identity_ulps().into()),
        ("rate_ulps", f.rate_ulps().into()),
        ("identity_holds", f.identity_holds(4.0).into()),
    ]))
}

fn cmd_sweep(args: &SweepArgs, g: &Global) -> CliResult<Table> {
    let tol = g.tolerances()?;
    if let Some(Family::Double) = args.family {
        if args.nmax < 2 {
            return Err(CliError::Usage("--nmax must be at least 2".into()));
        }
        let mut table = Table::new(vec!["N", "intervals", "e_min", "ratio", "expected"]);
        let mut failed = false;
        for row in double_interval_family(args.nmax, &tol) {
            failed |= row.e_min.is_none();
            let label = statechange::experiments::double_interval_problem(row.n).intervals_label();
            table.push(vec![row.n.into(), label.into(), row.e_min.into(), row.ratio.into(), row.expected.into()]);
        }
        if failed {
            emit(&table, g)?;
            return Err(CliError::Solver("a family member failed to solve".into()));
        }
        return Ok(table);
    }
    let config = SweepConfig {
        seed: args.seed,
        samples: args.samples,
        n_min: args.nmin,
        n_max: args.nmax,
        len_min: args.len_min,
        len_max: args.len_max,
        n_different: parse_list(&args.ndiff, "n_different")?,
        tolerances: tol,
        output: Some(args.out.clone()),
        parallelism: args.parallelism,
        timing: args.timing,
    };
    config.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let records = run_sweep(&config).map_err(|e| CliError::Io(e.to_string()))?;
    let failures = records.iter().filter(|r| !r.solved() || !r.ortho_ok).count();
    let mut table = Table::new(vec!["n_different", "group", "min_ratio", "median_ratio", "count"]);
    for row in summarize(&records) {
        let group = format!("{:?}", row.group).to_lowercase();
        table.push(vec![row.n_different.into(), group.into(), row.min_ratio.into(), row.median_ratio.into(), row.count.into()]);
    }
    if failures > 0 {
        emit(&table, g)?;
        return Err(CliError::Solver(format!("{failures} of {} records failed", records.len())));
    }
    Ok(table)
}

fn emit(table: &Table, g: &Global) -> CliResult<()> {
    let text = table.render(g.format);
    match &g.output {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    let g = &cli.global;
    let table = match &cli.command {
        Command::Solve(a) => cmd_solve(a, g)?,
        Command::Bounds(a) => cmd_bounds(a, g)?,
        Command::Evolve(a) => cmd_evolve(a, g)?,
        Command::Shift(a) => cmd_shift(a, g)?,
        Command::Frames(a) => cmd_frames(a, g)?,
        Command::Sweep(a) => cmd_sweep(a, g)?,
    };
    emit(&table, g)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
