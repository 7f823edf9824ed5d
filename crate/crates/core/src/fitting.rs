//! Least-absolute-deviation identification of a measure from scored alternatives.
//!
//! The LP has one variable per nonempty proper subset (`μ(∅) = 0` and
//! `μ(N) = 1` are substituted), a positive and a negative deviation per
//! alternative, the `n * 2^(n-1)` covering-edge monotonicity rows, and one
//! Choquet equality per alternative. Optimal solutions are not unique, so
//! fitting runs in two stages: first minimize the total deviation `z*`, then
//! among solutions with deviation `<= z* + STAGE_SLACK` minimize `Σ μ(A)`.

use capgraph_lp::{solve, LinearProgram, Relation, Status, DEFAULT_TOLERANCE as LP_TOLERANCE};

use crate::error::{Error, Result};
use crate::integrals::{choquet, choquet_terms};
use crate::lattice::{FuzzyMeasure, SetFunction, SubsetMask, Universe, DEFAULT_TOLERANCE};

/// Deviation allowance granted to the second (measure-minimizing) stage.
pub const STAGE_SLACK: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Alternative {
    pub label: Option<String>,
    pub scores: Vec<f64>,
    pub desired: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    n: usize,
    alternatives: Vec<Alternative>,
}

impl Dataset {
    pub fn new(n: usize, alternatives: Vec<Alternative>) -> Result<Self> {
        Universe::new(n)?;
        for (k, alt) in alternatives.iter().enumerate() {
            if alt.scores.len() != n {
                return Err(Error::arg(format!(
                    "alternative {} has {} scores, expected {n}",
                    k + 1,
                    alt.scores.len()
                )));
            }
            if alt.scores.iter().chain([&alt.desired]).any(|v| !v.is_finite()) {
                return Err(Error::arg(format!("alternative {} has a non-finite value", k + 1)));
            }
        }
        Ok(Dataset { n, alternatives })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alternatives(&self) -> &[Alternative] {
        &self.alternatives
    }

    pub fn len(&self) -> usize {
        self.alternatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alternatives.is_empty()
    }

    /// The first `t` alternatives.
    pub fn prefix(&self, t: usize) -> Result<Dataset> {
        if t == 0 || t > self.len() {
            return Err(Error::arg(format!("prefix length must lie in 1..={}, got {t}", self.len())));
        }
        Ok(Dataset {
            n: self.n,
            alternatives: self.alternatives[..t].to_vec(),
        })
    }
}

/// Affine map `v -> (v - offset) / scale` applied to partial scores and
/// desired evaluations alike.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalization {
    pub offset: f64,
    pub scale: f64,
}

impl Normalization {
    pub fn new(offset: f64, scale: f64) -> Result<Self> {
        if !offset.is_finite() || !scale.is_finite() || scale <= 0.0 {
            return Err(Error::arg(format!("invalid normalization offset {offset}, scale {scale}")));
        }
        Ok(Normalization { offset, scale })
    }

    pub fn identity() -> Self {
        Normalization { offset: 0.0, scale: 1.0 }
    }

    pub fn apply(&self, v: f64) -> f64 {
        (v - self.offset) / self.scale
    }

    pub fn invert(&self, v: f64) -> f64 {
        v * self.scale + self.offset
    }

    /// Normalized partial scores of one alternative, checked to lie in `[0, 1]`.
    pub fn scores(&self, alt: &Alternative) -> Result<Vec<f64>> {
        alt.scores
            .iter()
            .map(|&v| {
                let x = self.apply(v);
                match x {
                    x if (-1e-12..0.0).contains(&x) => Ok(0.0),
                    x if x > 1.0 && x <= 1.0 + 1e-12 => Ok(1.0),
                    x if (0.0..=1.0).contains(&x) => Ok(x),
                    x => Err(Error::arg(format!("score {v} normalizes to {x}, outside [0, 1]"))),
                }
            })
            .collect()
    }
}

/// One global affine map from the range of the partial scores. Data already
/// inside `[0, 1]` is left untouched.
pub fn default_normalization(ds: &Dataset) -> Result<Normalization> {
    if ds.is_empty() {
        return Err(Error::arg("dataset has no alternatives"));
    }
    let scores = ds.alternatives.iter().flat_map(|a| a.scores.iter().copied());
    let (lo, hi) = scores.fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), v| (l.min(v), h.max(v)));
    let in_unit = |v: f64| (0.0..=1.0).contains(&v);
    if in_unit(lo) && in_unit(hi) && ds.alternatives.iter().all(|a| in_unit(a.desired)) {
        return Ok(Normalization::identity());
    }
    if hi - lo <= 0.0 {
        return Err(Error::arg("partial scores have zero range; cannot normalize"));
    }
    Normalization::new(lo, hi - lo)
}

/// Extra linear restriction on measure values supplied by the decision maker,
/// e.g. `μ({1}) - μ({2}) >= 0.05`.
#[derive(Debug, Clone, PartialEq)]
pub struct PreferenceConstraint {
    pub terms: Vec<(SubsetMask, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

/// The LAD linear program together with its variable layout.
#[derive(Debug, Clone)]
pub struct LadModel {
    pub lp: LinearProgram,
    universe: Universe,
    alternatives: usize,
}

impl LadModel {
    pub fn measure_vars(&self) -> usize {
        self.universe.size() - 2
    }

    /// Column of `μ(A)` for a nonempty proper subset `A`.
    pub fn measure_var(&self, a: SubsetMask) -> Option<usize> {
        (a != SubsetMask::EMPTY && a != self.universe.full()).then(|| a.index() - 1)
    }

    /// Columns of `(d+, d-)` for alternative `k`.
    pub fn deviation_vars(&self, k: usize) -> (usize, usize) {
        let base = self.measure_vars() + 2 * k;
        (base, base + 1)
    }

    pub fn num_alternatives(&self) -> usize {
        self.alternatives
    }

    fn measure_from(&self, x: &[f64]) -> Result<FuzzyMeasure> {
        let u = self.universe;
        let sf = SetFunction::from_fn(u, |a| match self.measure_var(a) {
            Some(j) => x[j].clamp(0.0, 1.0),
            None if a.is_empty() => 0.0,
            None => 1.0,
        })?;
        FuzzyMeasure::new(sf, DEFAULT_TOLERANCE)
            .map_err(|e| Error::Internal(format!("fitted values are not a measure: {e}")))
    }
}

pub fn build_lad_model(ds: &Dataset, norm: &Normalization, preferences: &[PreferenceConstraint]) -> Result<LadModel> {
    if ds.is_empty() {
        return Err(Error::arg("dataset has no alternatives"));
    }
    let u = Universe::new(ds.n())?;
    let full = u.full();
    let nvars = u.size() - 2 + 2 * ds.len();
    let var = |a: SubsetMask| (a != SubsetMask::EMPTY && a != full).then(|| a.index() - 1);

    let mut lp = LinearProgram::new(vec![0.0; nvars]);

    // Monotonicity on covering edges: μ(A ∪ {i}) - μ(A) >= 0.
    for (a, i) in u.covering_edges() {
        let mut row = vec![0.0; nvars];
        let mut rhs = 0.0;
        match var(a.with(i)) {
            Some(j) => row[j] += 1.0,
            None => rhs -= 1.0,
        }
        if let Some(j) = var(a) {
            row[j] -= 1.0;
        }
        lp.add_constraint(row, Relation::Ge, rhs);
    }

    // Choquet equalities: C(x) - d+ + d- = y.
    for (k, alt) in ds.alternatives().iter().enumerate() {
        let x = norm.scores(alt)?;
        let mut row = vec![0.0; nvars];
        let mut rhs = norm.apply(alt.desired);
        for (a, w) in choquet_terms(&x) {
            match var(a) {
                Some(j) => row[j] += w,
                None => rhs -= w,
            }
        }
        let base = u.size() - 2 + 2 * k;
        row[base] = -1.0;
        row[base + 1] = 1.0;
        lp.add_constraint(row, Relation::Eq, rhs);
    }

    for p in preferences {
        let mut row = vec![0.0; nvars];
        let mut rhs = p.rhs;
        for &(a, c) in &p.terms {
            if a.index() >= u.size() {
                return Err(Error::arg(format!("preference term {a} outside the criteria set")));
            }
            match var(a) {
                Some(j) => row[j] += c,
                None if a.is_empty() => {}
                None => rhs -= c,
            }
        }
        lp.add_constraint(row, p.relation, rhs);
    }

    for j in 0..u.size() - 2 {
        lp.set_bounds(j, 0.0, 1.0);
    }
    Ok(LadModel {
        lp,
        universe: u,
        alternatives: ds.len(),
    })
}

/// The LAD program without the minimal-measure tie-break.
pub fn build_lad_lp(ds: &Dataset, norm: &Normalization) -> Result<LinearProgram> {
    Ok(build_lad_model(ds, norm, &[])?.lp)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub measure: FuzzyMeasure,
    /// Total absolute deviation `Σ |C(x) - y|` in normalized units.
    pub objective: f64,
    /// `C(x) - y` per alternative, normalized units.
    pub residuals: Vec<f64>,
    pub normalization: Normalization,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitTrace {
    /// Round `t` (zero-based) is fitted on alternatives `1..=t+1`.
    pub rounds: Vec<FitResult>,
}

pub fn fit(ds: &Dataset, norm: &Normalization) -> Result<FitResult> {
    fit_with_preferences(ds, norm, &[])
}

pub fn fit_with_preferences(
    ds: &Dataset,
    norm: &Normalization,
    preferences: &[PreferenceConstraint],
) -> Result<FitResult> {
    let mut model = build_lad_model(ds, norm, preferences)?;
    let m = model.measure_vars();
    let nvars = model.lp.num_vars();

    let mut deviation = vec![0.0; nvars];
    deviation[m..].iter_mut().for_each(|c| *c = 1.0);
    model.lp.objective = deviation.clone();
    let stage1 = solve(&model.lp, LP_TOLERANCE)?;
    let z_star = match stage1.status {
        Status::Optimal => stage1.objective,
        Status::Infeasible if !preferences.is_empty() => {
            return Err(Error::arg("preference constraints are infeasible"));
        }
        other => return Err(Error::Internal(format!("deviation stage returned {other:?}"))),
    };

    model.lp.add_constraint(deviation, Relation::Le, z_star + STAGE_SLACK);
    let mut total_measure = vec![0.0; nvars];
    total_measure[..m].iter_mut().for_each(|c| *c = 1.0);
    model.lp.objective = total_measure;
    let stage2 = solve(&model.lp, LP_TOLERANCE)?;
    if stage2.status != Status::Optimal {
        return Err(Error::Internal(format!("tie-break stage returned {:?}", stage2.status)));
    }

    let measure = model.measure_from(&stage2.x)?;
    let residuals = ds
        .alternatives()
        .iter()
        .map(|alt| Ok(choquet(&measure, &norm.scores(alt)?)? - norm.apply(alt.desired)))
        .collect::<Result<Vec<f64>>>()?;
    Ok(FitResult {
        objective: residuals.iter().map(|r| r.abs()).sum(),
        measure,
        residuals,
        normalization: *norm,
    })
}

/// Fits every prefix `1..=t` of the dataset in turn.
pub fn fit_incremental(ds: &Dataset, norm: &Normalization) -> Result<FitTrace> {
    if ds.is_empty() {
        return Err(Error::arg("dataset has no alternatives"));
    }
    let rounds = (1..=ds.len())
        .map(|t| fit(&ds.prefix(t)?, norm))
        .collect::<Result<Vec<_>>>()?;
    Ok(FitTrace { rounds })
}
