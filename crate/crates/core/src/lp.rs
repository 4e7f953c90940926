//! Dense two-phase revised simplex for `min c.x  s.t.  A x = b, x >= 0`.
//!
//! The basis inverse is kept explicitly and updated by elementary row
//! operations after each pivot; it is rebuilt from scratch every
//! [`SolverOptions::refactor_every`] pivots and once more before the answer
//! is extracted. Entering columns are priced with Devex reference weights
//! by default; Bland's smallest-index rule takes over whenever the
//! objective stalls, so the method cannot cycle.
//!
//! [`check_certificate`] re-derives primal feasibility, dual feasibility,
//! complementary slackness and the duality gap from the problem data alone,
//! so it can be trusted independently of the solver.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::problem::ToleranceProfile;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LpError {
    #[error("LP needs at least one row and one column")]
    Empty,
    #[error("row {row} has {got} coefficients, expected {expected}")]
    RowLength { row: usize, got: usize, expected: usize },
    #[error("{rows} constraint rows but {rhs} right-hand sides")]
    RhsLength { rows: usize, rhs: usize },
    #[error("row {row} is all zeros but has right-hand side {rhs}")]
    InconsistentZeroRow { row: usize, rhs: f64 },
    #[error("non-finite value in LP data")]
    NonFinite,
    #[error("simplex exceeded {limit} iterations")]
    IterationLimit { limit: usize },
    #[error("basis matrix became numerically singular")]
    SingularBasis,
}

/// Coefficients with magnitude at or below this are treated as zero when
/// deciding whether a row is empty.
const ZERO_ROW_EPS: f64 = 1e-14;

/// `min c.x` subject to `A x = b`, `x >= 0`, with `A` stored densely
/// row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StandardFormLp {
    cost: Vec<f64>,
    matrix: Vec<f64>,
    rhs: Vec<f64>,
    rows: usize,
    cols: usize,
}

impl StandardFormLp {
    /// Validates and assembles an LP. All-zero rows are rejected; use
    /// [`LpBuilder`] to have them stripped.
    pub fn new(cost: Vec<f64>, rows: Vec<Vec<f64>>, rhs: Vec<f64>) -> Result<Self, LpError> {
        let mut builder = LpBuilder::new(cost);
        if rows.len() != rhs.len() {
            return Err(LpError::RhsLength { rows: rows.len(), rhs: rhs.len() });
        }
        for (r, (row, b)) in rows.into_iter().zip(rhs).enumerate() {
            if row.len() != builder.cols() {
                return Err(LpError::RowLength { row: r, got: row.len(), expected: builder.cols() });
            }
            if row.iter().all(|a| a.abs() <= ZERO_ROW_EPS) {
                return Err(LpError::InconsistentZeroRow { row: r, rhs: b });
            }
            builder.push_row(row, b)?;
        }
        builder.build()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cost(&self) -> &[f64] {
        &self.cost
    }

    pub fn rhs(&self) -> &[f64] {
        &self.rhs
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.matrix[r * self.cols..(r + 1) * self.cols]
    }

    pub fn coeff(&self, r: usize, c: usize) -> f64 {
        self.matrix[r * self.cols + c]
    }

    /// Copy of this LP with one more equality row.
    pub fn with_row(&self, row: Vec<f64>, rhs: f64) -> Result<Self, LpError> {
        let mut b = LpBuilder::new(self.cost.clone());
        for r in 0..self.rows {
            b.push_row(self.row(r).to_vec(), self.rhs[r])?;
        }
        b.push_row(row, rhs)?;
        b.build()
    }
}

/// Incremental LP assembly. Rows whose coefficients are all zero with a zero
/// right-hand side carry no information and are dropped.
#[derive(Debug, Clone)]
pub struct LpBuilder {
    cost: Vec<f64>,
    matrix: Vec<f64>,
    rhs: Vec<f64>,
    dropped: usize,
}

impl LpBuilder {
    pub fn new(cost: Vec<f64>) -> Self {
        Self { cost, matrix: Vec::new(), rhs: Vec::new(), dropped: 0 }
    }

    pub fn cols(&self) -> usize {
        self.cost.len()
    }

    pub fn rows(&self) -> usize {
        self.rhs.len()
    }

    /// Rows dropped so far for being identically zero.
    pub fn dropped(&self) -> usize {
        self.dropped
    }

    pub fn push_row(&mut self, row: Vec<f64>, rhs: f64) -> Result<&mut Self, LpError> {
        if row.len() != self.cost.len() {
            return Err(LpError::RowLength { row: self.rhs.len(), got: row.len(), expected: self.cost.len() });
        }
        if row.iter().chain(std::iter::once(&rhs)).any(|v| !v.is_finite()) {
            return Err(LpError::NonFinite);
        }
        if row.iter().all(|a| a.abs() <= ZERO_ROW_EPS) {
            if rhs.abs() > ZERO_ROW_EPS {
                return Err(LpError::InconsistentZeroRow { row: self.rhs.len(), rhs });
            }
            self.dropped += 1;
            return Ok(self);
        }
        self.matrix.extend(row);
        self.rhs.push(rhs);
        Ok(self)
    }

    pub fn build(self) -> Result<StandardFormLp, LpError> {
        let cols = self.cost.len();
        let rows = self.rhs.len();
        if cols == 0 || rows == 0 {
            return Err(LpError::Empty);
        }
        if self.cost.iter().any(|c| !c.is_finite()) {
            return Err(LpError::NonFinite);
        }
        Ok(StandardFormLp { cost: self.cost, matrix: self.matrix, rhs: self.rhs, rows, cols })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpSolution {
    pub status: LpStatus,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PricingRule {
    /// First improving column in index order. Never cycles.
    Bland,
    /// Most negative reduced cost.
    Dantzig,
    /// Reduced cost squared over an approximate steepest-edge weight.
    Devex,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    pub pricing: PricingRule,
    /// `None` means `50 * (rows + cols)`.
    pub iteration_limit: Option<usize>,
    /// Pivots between rebuilds of the basis inverse; `None` means
    /// `max(64, rows)`.
    pub refactor_every: Option<usize>,
    pub pivot_tol: f64,
    pub optimality_tol: f64,
    pub feasibility_tol: f64,
}

impl SolverOptions {
    pub fn from_tolerances(tol: &ToleranceProfile) -> Self {
        Self {
            pricing: PricingRule::Devex,
            iteration_limit: None,
            refactor_every: None,
            pivot_tol: 1e-9,
            optimality_tol: 1e-10,
            feasibility_tol: tol.feasibility,
        }
    }
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self::from_tolerances(&ToleranceProfile::default())
    }
}

/// Solves with default options and tolerances taken from `tol`.
pub fn solve_lp(lp: &StandardFormLp, tol: &ToleranceProfile) -> Result<LpSolution, LpError> {
    solve_lp_with(lp, &SolverOptions::from_tolerances(tol))
}

pub fn solve_lp_with(lp: &StandardFormLp, opts: &SolverOptions) -> Result<LpSolution, LpError> {
    let limit = opts.iteration_limit.unwrap_or(50 * (lp.rows + lp.cols));
    let mut tab = Simplex::new(lp, *opts, limit);

    // Phase 1: minimise the sum of artificials.
    let phase1_cost: Vec<f64> = (0..tab.total).map(|j| if j >= tab.n { 1.0 } else { 0.0 }).collect();
    match tab.run(&phase1_cost, true)? {
        Outcome::Optimal => {}
        // Phase 1 is bounded below by zero.
        Outcome::Unbounded => return Err(LpError::SingularBasis),
    }
    tab.refactor()?;
    let infeasibility: f64 = tab
        .basis
        .iter()
        .zip(&tab.x_b)
        .filter(|(&j, _)| j >= tab.n)
        .map(|(_, &v)| v)
        .sum();
    let rhs_scale = 1.0 + lp.rhs.iter().fold(0.0f64, |m, b| m.max(b.abs()));
    if infeasibility > opts.feasibility_tol * rhs_scale {
        let iterations = tab.iterations;
        return Ok(LpSolution {
            status: LpStatus::Infeasible,
            x: tab.primal(),
            y: vec![0.0; lp.rows],
            objective: f64::NAN,
            iterations,
        });
    }
    tab.drive_out_artificials()?;

    // Phase 2 on the original costs; artificials may leave but never enter.
    let mut phase2_cost = lp.cost.clone();
    phase2_cost.resize(tab.total, 0.0);
    let outcome = tab.run(&phase2_cost, false)?;
    tab.refactor()?;
    tab.refine_primal();

    let x = tab.primal();
    let y = tab.dual(&phase2_cost);
    let objective = lp.cost.iter().zip(&x).map(|(c, x)| c * x).sum();
    let status = match outcome {
        Outcome::Optimal => LpStatus::Optimal,
        Outcome::Unbounded => LpStatus::Unbounded,
    };
    Ok(LpSolution { status, x, y, objective, iterations: tab.iterations })
}

/// Dot product with independent partial sums, so the additions pipeline
/// instead of forming one long dependency chain.
#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = [0.0f64; 8];
    let ca = a.chunks_exact(8);
    let cb = b.chunks_exact(8);
    let tail: f64 = ca.remainder().iter().zip(cb.remainder()).map(|(x, y)| x * y).sum();
    for (xa, xb) in ca.zip(cb) {
        for k in 0..8 {
            acc[k] += xa[k] * xb[k];
        }
    }
    (acc[0] + acc[4]) + (acc[1] + acc[5]) + (acc[2] + acc[6]) + (acc[3] + acc[7]) + tail
}

enum Outcome {
    Optimal,
    Unbounded,
}

/// Working state of one solve. Columns `0..n` are structural, `n..n+m`
/// are artificials (identity columns). Rows are sign-flipped so `b >= 0`.
struct Simplex {
    m: usize,
    n: usize,
    total: usize,
    /// Column-major structural columns, `cols[j*m..(j+1)*m]`.
    cols: Vec<f64>,
    b: Vec<f64>,
    row_sign: Vec<f64>,
    basis: Vec<usize>,
    /// Position of each variable in the basis, `NONBASIC` if nonbasic.
    position: Vec<usize>,
    /// Row-major `m x m` basis inverse.
    binv: Vec<f64>,
    x_b: Vec<f64>,
    /// Reduced costs, kept current across pivots; zero for basic columns.
    reduced: Vec<f64>,
    /// Devex reference weights.
    weights: Vec<f64>,
    opts: SolverOptions,
    limit: usize,
    refactor_every: usize,
    iterations: usize,
    since_refactor: usize,
    y: Vec<f64>,
    u: Vec<f64>,
    alpha: Vec<f64>,
}

const NONBASIC: usize = usize::MAX;
/// Primal relaxation used by the Harris ratio test.
const HARRIS_RELAX: f64 = 1e-11;
/// Devex weights are reset to 1 once any exceeds this.
const DEVEX_RESET: f64 = 1e8;

impl Simplex {
    fn new(lp: &StandardFormLp, opts: SolverOptions, limit: usize) -> Self {
        let (m, n) = (lp.rows, lp.cols);
        let row_sign: Vec<f64> = lp.rhs.iter().map(|&b| if b < 0.0 { -1.0 } else { 1.0 }).collect();
        let mut cols = vec![0.0; m * n];
        for r in 0..m {
            let row = lp.row(r);
            for j in 0..n {
                cols[j * m + r] = row_sign[r] * row[j];
            }
        }
        let b: Vec<f64> = lp.rhs.iter().zip(&row_sign).map(|(b, s)| b * s).collect();
        let mut binv = vec![0.0; m * m];
        for i in 0..m {
            binv[i * m + i] = 1.0;
        }
        let basis: Vec<usize> = (n..n + m).collect();
        let mut position = vec![NONBASIC; n + m];
        for (i, &j) in basis.iter().enumerate() {
            position[j] = i;
        }
        Self {
            m,
            n,
            total: n + m,
            cols,
            x_b: b.clone(),
            b,
            row_sign,
            basis,
            position,
            binv,
            reduced: vec![0.0; n + m],
            weights: vec![1.0; n + m],
            opts,
            limit,
            refactor_every: opts.refactor_every.unwrap_or(m.max(64)),
            iterations: 0,
            since_refactor: 0,
            y: vec![0.0; m],
            u: vec![0.0; m],
            alpha: vec![0.0; n + m],
        }
    }

    /// Column `j` of the sign-adjusted constraint matrix dotted with `v`.
    #[inline]
    fn dot_col(&self, j: usize, v: &[f64]) -> f64 {
        if j < self.n {
            dot(&self.cols[j * self.m..(j + 1) * self.m], v)
        } else {
            v[j - self.n]
        }
    }

    /// `y = c_B^T B^{-1}`.
    fn compute_duals(&mut self, cost: &[f64]) {
        let m = self.m;
        self.y.iter_mut().for_each(|v| *v = 0.0);
        for i in 0..m {
            let cb = cost[self.basis[i]];
            if cb != 0.0 {
                let row = &self.binv[i * m..(i + 1) * m];
                for (yk, &bk) in self.y.iter_mut().zip(row) {
                    *yk += cb * bk;
                }
            }
        }
    }

    /// Recomputes every reduced cost from fresh duals.
    fn price_all(&mut self, cost: &[f64]) {
        self.compute_duals(cost);
        for j in 0..self.total {
            self.reduced[j] = if self.position[j] == NONBASIC { cost[j] - self.dot_col(j, &self.y) } else { 0.0 };
        }
    }

    /// `u = B^{-1} a_j`.
    fn compute_column(&mut self, j: usize) {
        let m = self.m;
        if j < self.n {
            let col = &self.cols[j * m..(j + 1) * m];
            for i in 0..m {
                self.u[i] = dot(&self.binv[i * m..(i + 1) * m], col);
            }
        } else {
            let k = j - self.n;
            for i in 0..m {
                self.u[i] = self.binv[i * m + k];
            }
        }
    }

    /// Row `r` of `B^{-1} A` over nonbasic columns.
    fn compute_pivot_row(&mut self, r: usize) {
        let m = self.m;
        let rho = self.binv[r * m..(r + 1) * m].to_vec();
        for j in 0..self.total {
            self.alpha[j] = if self.position[j] == NONBASIC { self.dot_col(j, &rho) } else { 0.0 };
        }
    }

    fn choose_entering(&self, cost: &[f64], phase1: bool, bland: bool) -> Option<usize> {
        let limit = if phase1 { self.total } else { self.n };
        let scale = 1.0 + cost.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        let tol = self.opts.optimality_tol * scale;
        let candidates = (0..limit).filter(|&j| self.position[j] == NONBASIC && self.reduced[j] < -tol);
        if bland {
            return candidates.min();
        }
        let mut best = None;
        let mut best_score = 0.0;
        for j in candidates {
            let d = self.reduced[j];
            let score = match self.opts.pricing {
                PricingRule::Devex => d * d / self.weights[j],
                _ => -d,
            };
            if score > best_score {
                best_score = score;
                best = Some(j);
            }
        }
        best
    }

    /// Leaving row. Under Bland's rule: minimum ratio, ties to the smallest
    /// basic index. Otherwise a Harris two-pass test: among rows whose ratio
    /// is within a small feasibility relaxation of the minimum, take the
    /// largest pivot element.
    fn choose_leaving(&self, bland: bool) -> Option<usize> {
        let piv_tol = self.opts.pivot_tol;
        if bland {
            let mut best: Option<(usize, f64)> = None;
            for i in 0..self.m {
                let ui = self.u[i];
                if ui > piv_tol {
                    let ratio = self.x_b[i].max(0.0) / ui;
                    best = match best {
                        None => Some((i, ratio)),
                        Some((bi, br)) => {
                            let tie = (ratio - br).abs() <= 1e-12 * (1.0 + br.abs());
                            if (ratio < br && !tie) || (tie && self.basis[i] < self.basis[bi]) {
                                Some((i, ratio))
                            } else {
                                Some((bi, br))
                            }
                        }
                    };
                }
            }
            return best.map(|(i, _)| i);
        }
        let relax = HARRIS_RELAX;
        let mut bound = f64::INFINITY;
        for i in 0..self.m {
            let ui = self.u[i];
            if ui > piv_tol {
                bound = bound.min((self.x_b[i].max(0.0) + relax) / ui);
            }
        }
        if !bound.is_finite() {
            return None;
        }
        let mut best: Option<usize> = None;
        for i in 0..self.m {
            let ui = self.u[i];
            if ui > piv_tol && self.x_b[i].max(0.0) / ui <= bound {
                if best.map_or(true, |b| ui > self.u[b]) {
                    best = Some(i);
                }
            }
        }
        best
    }

    /// Updates reduced costs and Devex weights for the pivot on `(row,
    /// entering)`; must run before [`Simplex::pivot`] changes the basis.
    fn update_pricing(&mut self, row: usize, entering: usize) {
        self.compute_pivot_row(row);
        let alpha_q = self.u[row];
        let ratio_d = self.reduced[entering] / alpha_q;
        let w_q = self.weights[entering];
        for j in 0..self.total {
            let a = self.alpha[j];
            if a != 0.0 && j != entering {
                self.reduced[j] -= ratio_d * a;
                let rel = a / alpha_q;
                let w = rel * rel * w_q;
                if w > self.weights[j] {
                    self.weights[j] = w;
                }
            }
        }
        let leaving = self.basis[row];
        self.reduced[entering] = 0.0;
        self.reduced[leaving] = -ratio_d;
        self.weights[leaving] = (w_q / (alpha_q * alpha_q)).max(1.0);
        if self.weights.iter().any(|&w| w > DEVEX_RESET) {
            self.weights.iter_mut().for_each(|w| *w = 1.0);
        }
    }

    fn pivot(&mut self, row: usize, entering: usize) {
        let m = self.m;
        let piv = self.u[row];
        let theta = self.x_b[row].max(0.0) / piv;
        for i in 0..m {
            if i == row {
                self.x_b[i] = theta;
            } else {
                self.x_b[i] -= theta * self.u[i];
                if self.x_b[i] < 0.0 && self.x_b[i] > -self.opts.feasibility_tol {
                    self.x_b[i] = 0.0;
                }
            }
        }
        let (before, rest) = self.binv.split_at_mut(row * m);
        let (pivot_row, after) = rest.split_at_mut(m);
        pivot_row.iter_mut().for_each(|v| *v /= piv);
        for (i, target) in before.chunks_exact_mut(m).chain(after.chunks_exact_mut(m)).enumerate() {
            let i = if i < row { i } else { i + 1 };
            let f = self.u[i];
            if f != 0.0 {
                for (t, p) in target.iter_mut().zip(pivot_row.iter()) {
                    *t -= f * p;
                }
            }
        }
        let leaving = self.basis[row];
        self.position[leaving] = NONBASIC;
        self.basis[row] = entering;
        self.position[entering] = row;
        self.since_refactor += 1;
    }

    fn objective(&self, cost: &[f64]) -> f64 {
        self.basis.iter().zip(&self.x_b).map(|(&j, &x)| cost[j] * x).sum()
    }

    /// Pivots until no column prices out. Outside pure Bland mode, a
    /// stretch of `stall_limit` pivots without strict objective decrease
    /// switches to Bland's rule until the objective next decreases; since
    /// Bland's rule cannot cycle, every such stretch ends.
    fn run(&mut self, cost: &[f64], phase1: bool) -> Result<Outcome, LpError> {
        let stall_limit = 20 * self.m + 200;
        let mut best = self.objective(cost);
        let mut stalled = 0usize;
        let mut bland = self.opts.pricing == PricingRule::Bland;
        self.weights.iter_mut().for_each(|w| *w = 1.0);
        self.price_all(cost);
        loop {
            if self.since_refactor >= self.refactor_every {
                self.refactor()?;
                self.price_all(cost);
            }
            let entering = match self.choose_entering(cost, phase1, bland) {
                Some(j) => j,
                None => {
                    // Confirm against freshly computed reduced costs.
                    self.refactor()?;
                    self.price_all(cost);
                    match self.choose_entering(cost, phase1, bland) {
                        Some(j) => j,
                        None => return Ok(Outcome::Optimal),
                    }
                }
            };
            if self.iterations >= self.limit {
                return Err(LpError::IterationLimit { limit: self.limit });
            }
            self.compute_column(entering);
            let Some(row) = self.choose_leaving(bland) else {
                return Ok(Outcome::Unbounded);
            };
            self.update_pricing(row, entering);
            self.pivot(row, entering);
            self.iterations += 1;

            if self.opts.pricing != PricingRule::Bland {
                let obj = self.objective(cost);
                if obj < best - 1e-12 * (1.0 + best.abs()) {
                    best = obj;
                    stalled = 0;
                    bland = false;
                } else {
                    stalled += 1;
                    if stalled >= stall_limit {
                        bland = true;
                    }
                }
            }
        }
    }

    /// Pivots zero-level artificials out of the basis where a structural
    /// column can replace them. Those that remain sit on redundant rows.
    fn drive_out_artificials(&mut self) -> Result<(), LpError> {
        let m = self.m;
        for row in 0..m {
            if self.basis[row] < self.n {
                continue;
            }
            let binv_row = self.binv[row * m..(row + 1) * m].to_vec();
            let mut best: Option<(usize, f64)> = None;
            for j in 0..self.n {
                if self.position[j] != NONBASIC {
                    continue;
                }
                let v = self.dot_col(j, &binv_row).abs();
                if v > 1e-7 && best.map_or(true, |(_, bv)| v > bv) {
                    best = Some((j, v));
                }
            }
            if let Some((j, _)) = best {
                self.compute_column(j);
                // Degenerate pivot: the artificial is at level zero.
                self.x_b[row] = 0.0;
                self.pivot(row, j);
            }
        }
        self.refactor()
    }

    /// Rebuilds `B^{-1}` by Gauss-Jordan elimination with partial pivoting
    /// and recomputes the basic solution.
    fn refactor(&mut self) -> Result<(), LpError> {
        let m = self.m;
        let mut a = vec![0.0; m * m];
        for (k, &j) in self.basis.iter().enumerate() {
            if j < self.n {
                for i in 0..m {
                    a[i * m + k] = self.cols[j * m + i];
                }
            } else {
                a[(j - self.n) * m + k] = 1.0;
            }
        }
        let mut inv = vec![0.0; m * m];
        for i in 0..m {
            inv[i * m + i] = 1.0;
        }
        for c in 0..m {
            let (p, pv) = (c..m)
                .map(|r| (r, a[r * m + c].abs()))
                .fold((c, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pv < 1e-13 {
                return Err(LpError::SingularBasis);
            }
            if p != c {
                for k in 0..m {
                    a.swap(p * m + k, c * m + k);
                    inv.swap(p * m + k, c * m + k);
                }
            }
            let d = a[c * m + c];
            let pivot_a: Vec<f64> = a[c * m + c..(c + 1) * m].iter().map(|v| v / d).collect();
            let pivot_inv: Vec<f64> = inv[c * m..(c + 1) * m].iter().map(|v| v / d).collect();
            for r in 0..m {
                if r == c {
                    continue;
                }
                let f = a[r * m + c];
                if f != 0.0 {
                    for (t, p) in a[r * m + c..(r + 1) * m].iter_mut().zip(&pivot_a) {
                        *t -= f * p;
                    }
                    for (t, p) in inv[r * m..(r + 1) * m].iter_mut().zip(&pivot_inv) {
                        *t -= f * p;
                    }
                }
            }
            a[c * m + c..(c + 1) * m].copy_from_slice(&pivot_a);
            inv[c * m..(c + 1) * m].copy_from_slice(&pivot_inv);
        }
        self.binv = inv;
        for i in 0..m {
            let v = dot(&self.binv[i * m..(i + 1) * m], &self.b);
            self.x_b[i] = if v < 0.0 && v > -self.opts.feasibility_tol { 0.0 } else { v };
        }
        self.since_refactor = 0;
        Ok(())
    }

    /// One step of iterative refinement on `B x_B = b`.
    fn refine_primal(&mut self) {
        let m = self.m;
        let mut resid = self.b.clone();
        for (k, &j) in self.basis.iter().enumerate() {
            let xk = self.x_b[k];
            if j < self.n {
                for i in 0..m {
                    resid[i] -= self.cols[j * m + i] * xk;
                }
            } else {
                resid[j - self.n] -= xk;
            }
        }
        for i in 0..m {
            self.x_b[i] += dot(&self.binv[i * m..(i + 1) * m], &resid);
        }
    }

    fn primal(&self) -> Vec<f64> {
        let mut x = vec![0.0; self.n];
        for (i, &j) in self.basis.iter().enumerate() {
            if j < self.n {
                x[j] = self.x_b[i];
            }
        }
        x
    }

    /// Duals of the original (unflipped) rows.
    fn dual(&mut self, cost: &[f64]) -> Vec<f64> {
        self.compute_duals(cost);
        self.y.iter().zip(&self.row_sign).map(|(y, s)| y * s).collect()
    }
}

/// Independently recomputed optimality evidence for an LP answer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    /// `max(||Ax - b||_inf, max_j(-x_j))`.
    pub primal_residual: f64,
    /// `max(0, -min_j (c_j - (A^T y)_j))`.
    pub dual_residual: f64,
    /// `sum_j |x_j| |c_j - (A^T y)_j|`.
    pub complementarity: f64,
    /// `|c.x - b.y|`.
    pub duality_gap: f64,
    pub pass: bool,
}

pub fn check_certificate(lp: &StandardFormLp, sol: &LpSolution, tol: &ToleranceProfile) -> CertificateReport {
    let (m, n) = (lp.rows, lp.cols);
    let mut primal = sol.x.iter().fold(0.0f64, |acc, &x| acc.max(-x));
    for r in 0..m {
        let ax: f64 = lp.row(r).iter().zip(&sol.x).map(|(a, x)| a * x).sum();
        primal = primal.max((ax - lp.rhs[r]).abs());
    }
    let mut aty = vec![0.0; n];
    for r in 0..m {
        let yr = sol.y[r];
        for (acc, a) in aty.iter_mut().zip(lp.row(r)) {
            *acc += a * yr;
        }
    }
    let mut min_reduced = f64::INFINITY;
    let mut complementarity = 0.0;
    for j in 0..n {
        let rc = lp.cost[j] - aty[j];
        min_reduced = min_reduced.min(rc);
        complementarity += sol.x[j].abs() * rc.abs();
    }
    let dual_residual = (-min_reduced).max(0.0);
    let cx: f64 = lp.cost.iter().zip(&sol.x).map(|(c, x)| c * x).sum();
    let by: f64 = lp.rhs.iter().zip(&sol.y).map(|(b, y)| b * y).sum();
    let duality_gap = (cx - by).abs();
    let pass = sol.status == LpStatus::Optimal
        && primal <= tol.feasibility
        && dual_residual <= tol.duality_gap
        && complementarity <= tol.duality_gap
        && duality_gap <= tol.duality_gap;
    CertificateReport { primal_residual: primal, dual_residual, complementarity, duality_gap, pass }
}
