//! Dense two-phase simplex solver.
//!
//! Problems are stated as minimization over a dense coefficient matrix with
//! `<=`, `=` and `>=` rows and per-variable bounds (default `[0, +inf)`).
//! Internally every problem is rewritten into equality standard form with
//! nonnegative variables, a Phase I tableau drives artificial variables out,
//! and Phase II optimizes the real objective. Pivot selection follows Bland's
//! rule (lowest-index entering column, lowest-index leaving basic variable on
//! ratio ties), which guarantees termination on degenerate problems.
//!
//! The solver is sized for problems with a few hundred rows and columns; it
//! makes no attempt at sparse factorization.

use thiserror::Error;

/// Default feasibility and pivot tolerance.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Iteration cap multiplier: the solver gives up after `50 * (rows + cols)` pivots.
pub const ITERATION_FACTOR: usize = 50;

#[derive(Debug, Error, PartialEq)]
pub enum LpError {
    #[error("constraint row {row} has {found} coefficients, expected {expected}")]
    DimensionMismatch {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("bounds vector has {found} entries, expected {expected}")]
    BoundsMismatch { expected: usize, found: usize },
    #[error("variable {var} has inconsistent bounds [{lo}, {hi}]")]
    InvalidBounds { var: usize, lo: f64, hi: f64 },
    #[error("non-finite coefficient in {0}")]
    NonFinite(&'static str),
    #[error("iteration cap of {cap} pivots exceeded")]
    IterationLimit { cap: usize },
    #[error("solution failed post-solve verification: {0}")]
    Numerical(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

/// Closed interval bound on a single variable; either side may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub lo: f64,
    pub hi: f64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            lo: 0.0,
            hi: f64::INFINITY,
        }
    }
}

/// A minimization problem `min c.x` subject to linear rows and variable bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<Bounds>,
}

impl LinearProgram {
    /// Creates a problem with the given objective and default `[0, +inf)` bounds.
    pub fn new(objective: Vec<f64>) -> Self {
        let bounds = vec![Bounds::default(); objective.len()];
        LinearProgram {
            objective,
            constraints: Vec::new(),
            bounds,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_constraint(&mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) -> &mut Self {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        self
    }

    pub fn set_bounds(&mut self, var: usize, lo: f64, hi: f64) -> &mut Self {
        self.bounds[var] = Bounds { lo, hi };
        self
    }

    fn check(&self) -> Result<(), LpError> {
        let n = self.num_vars();
        if self.objective.iter().any(|v| !v.is_finite()) {
            return Err(LpError::NonFinite("objective"));
        }
        if self.bounds.len() != n {
            return Err(LpError::BoundsMismatch {
                expected: n,
                found: self.bounds.len(),
            });
        }
        for (var, b) in self.bounds.iter().enumerate() {
            if b.lo.is_nan() || b.hi.is_nan() || b.lo > b.hi || b.lo == f64::INFINITY || b.hi == f64::NEG_INFINITY {
                return Err(LpError::InvalidBounds { var, lo: b.lo, hi: b.hi });
            }
        }
        for (row, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != n {
                return Err(LpError::DimensionMismatch {
                    row,
                    expected: n,
                    found: c.coeffs.len(),
                });
            }
            if !c.rhs.is_finite() || c.coeffs.iter().any(|v| !v.is_finite()) {
                return Err(LpError::NonFinite("constraint"));
            }
        }
        Ok(())
    }

    /// Largest violation of any row or bound at `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for c in &self.constraints {
            let lhs: f64 = c.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
            let v = match c.relation {
                Relation::Le => lhs - c.rhs,
                Relation::Ge => c.rhs - lhs,
                Relation::Eq => (lhs - c.rhs).abs(),
            };
            worst = worst.max(v);
        }
        for (b, v) in self.bounds.iter().zip(x) {
            worst = worst.max(b.lo - v).max(v - b.hi);
        }
        worst
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: Status,
    /// Primal solution; empty unless `status` is `Optimal`.
    pub x: Vec<f64>,
    /// Objective value; `+inf` when infeasible and `-inf` when unbounded.
    pub objective: f64,
    /// Number of pivots performed across both phases.
    pub iterations: usize,
}

/// How an original variable is expressed in standard-form columns.
#[derive(Debug, Clone, Copy)]
enum VarMap {
    /// x = lo + y
    Shift { col: usize, lo: f64 },
    /// x = hi - y
    Mirror { col: usize, hi: f64 },
    /// x = y+ - y-
    Split { pos: usize, neg: usize },
}

/// Dense tableau: `rows` constraint rows followed by one cost row, each of
/// `cols + 1` entries with the right-hand side stored last.
struct Tableau {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn stride(&self) -> usize {
        self.cols + 1
    }

    fn at(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.stride() + c]
    }

    fn rhs(&self, r: usize) -> f64 {
        self.at(r, self.cols)
    }

    fn cost_row(&self) -> usize {
        self.rows
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let stride = self.stride();
        let piv = self.at(pr, pc);
        let start = pr * stride;
        for v in &mut self.data[start..start + stride] {
            *v /= piv;
        }
        let pivot_row: Vec<f64> = self.data[start..start + stride].to_vec();
        for r in 0..=self.rows {
            if r == pr {
                continue;
            }
            let factor = self.data[r * stride + pc];
            if factor == 0.0 {
                continue;
            }
            let row = &mut self.data[r * stride..(r + 1) * stride];
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v -= factor * p;
            }
            row[pc] = 0.0;
        }
        self.basis[pr] = pc;
    }

    /// Loads `costs` into the cost row and prices out the current basis.
    fn set_costs(&mut self, costs: &[f64]) {
        let stride = self.stride();
        let cr = self.cost_row() * stride;
        for c in 0..=self.cols {
            self.data[cr + c] = if c < self.cols { costs[c] } else { 0.0 };
        }
        for r in 0..self.rows {
            let cb = costs[self.basis[r]];
            if cb == 0.0 {
                continue;
            }
            for c in 0..=self.cols {
                let v = self.data[r * stride + c];
                self.data[cr + c] -= cb * v;
            }
        }
    }

    /// Current objective value of the loaded cost row.
    fn value(&self) -> f64 {
        -self.at(self.cost_row(), self.cols)
    }

    fn drop_rows(&mut self, drop: &[usize]) {
        let stride = self.stride();
        let mut data = Vec::with_capacity(self.data.len());
        let mut basis = Vec::with_capacity(self.rows);
        for r in 0..=self.rows {
            if r < self.rows && drop.contains(&r) {
                continue;
            }
            data.extend_from_slice(&self.data[r * stride..(r + 1) * stride]);
            if r < self.rows {
                basis.push(self.basis[r]);
            }
        }
        self.rows = basis.len();
        self.data = data;
        self.basis = basis;
    }
}

enum Outcome {
    Optimal,
    Unbounded,
}

struct Driver {
    tol: f64,
    cap: usize,
    iterations: usize,
}

impl Driver {
    /// Runs primal simplex with Bland's rule over columns `0..allowed`.
    fn run(&mut self, t: &mut Tableau, allowed: usize) -> Result<Outcome, LpError> {
        let cr = t.cost_row();
        loop {
            let entering = (0..allowed).find(|&c| t.at(cr, c) < -self.tol);
            let Some(pc) = entering else {
                return Ok(Outcome::Optimal);
            };
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..t.rows {
                let a = t.at(r, pc);
                if a <= self.tol {
                    continue;
                }
                let ratio = t.rhs(r).max(0.0) / a;
                match leave {
                    None => leave = Some((r, ratio)),
                    Some((br, best)) => {
                        let slack = 1e-12 * (1.0 + best.abs());
                        if ratio < best - slack
                            || (ratio <= best + slack && t.basis[r] < t.basis[br])
                        {
                            leave = Some((r, ratio));
                        }
                    }
                }
            }
            let Some((pr, _)) = leave else {
                return Ok(Outcome::Unbounded);
            };
            if self.iterations >= self.cap {
                return Err(LpError::IterationLimit { cap: self.cap });
            }
            self.iterations += 1;
            t.pivot(pr, pc);
        }
    }
}

/// Solves `lp` with the two-phase dense simplex method.
///
/// `tol` is used both as the pivot threshold and as the primal feasibility
/// tolerance; reported optimal points are re-checked against the original
/// rows before being returned.
pub fn solve(lp: &LinearProgram, tol: f64) -> Result<LpSolution, LpError> {
    lp.check()?;
    let tol = if tol > 0.0 { tol } else { DEFAULT_TOLERANCE };
    let n = lp.num_vars();

    // Map original variables onto nonnegative standard-form columns.
    let mut maps = Vec::with_capacity(n);
    let mut ncols = 0usize;
    let mut bound_rows: Vec<(usize, f64)> = Vec::new();
    for b in &lp.bounds {
        let m = if b.lo.is_finite() {
            if b.hi.is_finite() {
                bound_rows.push((ncols, b.hi - b.lo));
            }
            VarMap::Shift { col: ncols, lo: b.lo }
        } else if b.hi.is_finite() {
            VarMap::Mirror { col: ncols, hi: b.hi }
        } else {
            ncols += 1;
            VarMap::Split {
                pos: ncols - 1,
                neg: ncols,
            }
        };
        ncols += 1;
        maps.push(m);
    }
    let structural = ncols;

    // Rewrite every row over the structural columns.
    let mut rows: Vec<(Vec<f64>, Relation, f64)> = Vec::new();
    for c in &lp.constraints {
        let mut coeffs = vec![0.0; structural];
        let mut rhs = c.rhs;
        for (a, m) in c.coeffs.iter().zip(&maps) {
            match *m {
                VarMap::Shift { col, lo } => {
                    coeffs[col] += a;
                    rhs -= a * lo;
                }
                VarMap::Mirror { col, hi } => {
                    coeffs[col] -= a;
                    rhs -= a * hi;
                }
                VarMap::Split { pos, neg } => {
                    coeffs[pos] += a;
                    coeffs[neg] -= a;
                }
            }
        }
        rows.push((coeffs, c.relation, rhs));
    }
    for &(col, width) in &bound_rows {
        let mut coeffs = vec![0.0; structural];
        coeffs[col] = 1.0;
        rows.push((coeffs, Relation::Le, width));
    }
    for row in &mut rows {
        if row.2 < 0.0 {
            row.0.iter_mut().for_each(|v| *v = -*v);
            row.2 = -row.2;
            row.1 = match row.1 {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
    }

    let mut costs = vec![0.0; structural];
    let mut offset = 0.0;
    for (c, m) in lp.objective.iter().zip(&maps) {
        match *m {
            VarMap::Shift { col, lo } => {
                costs[col] += c;
                offset += c * lo;
            }
            VarMap::Mirror { col, hi } => {
                costs[col] -= c;
                offset += c * hi;
            }
            VarMap::Split { pos, neg } => {
                costs[pos] += c;
                costs[neg] -= c;
            }
        }
    }

    // Column layout: structural | slack/surplus | artificial.
    let m = rows.len();
    let n_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let n_art = rows.iter().filter(|r| r.1 != Relation::Le).count();
    let art_start = structural + n_slack;
    let cols = art_start + n_art;
    let stride = cols + 1;
    let mut t = Tableau {
        rows: m,
        cols,
        data: vec![0.0; (m + 1) * stride],
        basis: vec![0; m],
    };
    let (mut next_slack, mut next_art) = (structural, art_start);
    for (r, (coeffs, rel, rhs)) in rows.iter().enumerate() {
        let base = r * stride;
        t.data[base..base + structural].copy_from_slice(coeffs);
        t.data[base + cols] = *rhs;
        match rel {
            Relation::Le => {
                t.data[base + next_slack] = 1.0;
                t.basis[r] = next_slack;
                next_slack += 1;
            }
            Relation::Ge => {
                t.data[base + next_slack] = -1.0;
                next_slack += 1;
                t.data[base + next_art] = 1.0;
                t.basis[r] = next_art;
                next_art += 1;
            }
            Relation::Eq => {
                t.data[base + next_art] = 1.0;
                t.basis[r] = next_art;
                next_art += 1;
            }
        }
    }

    let mut driver = Driver {
        tol,
        cap: ITERATION_FACTOR * (m + cols),
        iterations: 0,
    };
    let rhs_scale = 1.0 + rows.iter().map(|r| r.2).fold(0.0, f64::max);

    if n_art > 0 {
        let mut phase1 = vec![0.0; cols];
        phase1[art_start..].iter_mut().for_each(|v| *v = 1.0);
        t.set_costs(&phase1);
        driver.run(&mut t, cols)?;
        if t.value() > 10.0 * tol * rhs_scale {
            return Ok(LpSolution {
                status: Status::Infeasible,
                x: Vec::new(),
                objective: f64::INFINITY,
                iterations: driver.iterations,
            });
        }
        // Pivot remaining (degenerate) artificials out of the basis.
        let mut redundant = Vec::new();
        for r in 0..t.rows {
            if t.basis[r] < art_start {
                continue;
            }
            let mut best: Option<(usize, f64)> = None;
            for c in 0..art_start {
                let a = t.at(r, c).abs();
                if a > tol && best.is_none_or(|(_, b)| a > b) {
                    best = Some((c, a));
                }
            }
            match best {
                Some((c, _)) => t.pivot(r, c),
                None => redundant.push(r),
            }
        }
        if !redundant.is_empty() {
            t.drop_rows(&redundant);
        }
    }

    let mut phase2 = vec![0.0; cols];
    phase2[..structural].copy_from_slice(&costs);
    t.set_costs(&phase2);
    if let Outcome::Unbounded = driver.run(&mut t, art_start)? {
        return Ok(LpSolution {
            status: Status::Unbounded,
            x: Vec::new(),
            objective: f64::NEG_INFINITY,
            iterations: driver.iterations,
        });
    }

    let mut y = vec![0.0; cols];
    for r in 0..t.rows {
        y[t.basis[r]] = t.rhs(r).max(0.0);
    }
    let x: Vec<f64> = maps
        .iter()
        .map(|m| match *m {
            VarMap::Shift { col, lo } => lo + y[col],
            VarMap::Mirror { col, hi } => hi - y[col],
            VarMap::Split { pos, neg } => y[pos] - y[neg],
        })
        .collect();

    let violation = lp.max_violation(&x);
    let allowed = 1e3 * tol * rhs_scale;
    if violation > allowed {
        return Err(LpError::Numerical(format!(
            "max constraint violation {violation:e} exceeds {allowed:e}"
        )));
    }
    let objective = lp.objective_value(&x);
    debug_assert!((objective - (t.value() + offset)).abs() <= 1e-6 * (1.0 + objective.abs()));
    Ok(LpSolution {
        status: Status::Optimal,
        x,
        objective,
        iterations: driver.iterations,
    })
}
