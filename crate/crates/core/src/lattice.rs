//! Subset bitmasks, dense set functions and validated fuzzy measures.
//!
//! Criteria are addressed by zero-based index `i` internally; bit `i` of a
//! [`SubsetMask`] is set when criterion `i + 1` belongs to the subset. All
//! user-facing labels use the one-based numbering.

use std::fmt;
use std::ops::Index;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Default tolerance for monotonicity and boundary checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Largest supported number of criteria (dense storage of `2^n` values).
pub const MAX_CRITERIA: usize = 12;

/// Largest `n` for which maximal chains are enumerated (`n!` of them).
pub const MAX_CHAIN_CRITERIA: usize = 8;

/// The finite criteria set `N = {1, ..., n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Universe {
    n: usize,
}

impl Universe {
    pub fn new(n: usize) -> Result<Self> {
        if !(2..=MAX_CRITERIA).contains(&n) {
            return Err(Error::arg(format!(
                "number of criteria must lie in 2..={MAX_CRITERIA}, got {n}"
            )));
        }
        Ok(Universe { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of subsets, `2^n`.
    pub fn size(&self) -> usize {
        1 << self.n
    }

    pub fn full(&self) -> SubsetMask {
        SubsetMask((1u32 << self.n) - 1)
    }

    /// All subsets in ascending mask order.
    pub fn subsets(&self) -> impl Iterator<Item = SubsetMask> {
        (0..self.size() as u32).map(SubsetMask)
    }

    /// Covering edges `(A, i)` with `i` not in `A`, i.e. the pairs `A -> A ∪ {i}`.
    /// There are `n * 2^(n-1)` of them.
    pub fn covering_edges(&self) -> impl Iterator<Item = (SubsetMask, usize)> {
        let n = self.n;
        self.subsets()
            .flat_map(move |a| (0..n).filter(move |&i| !a.contains(i)).map(move |i| (a, i)))
    }

    pub fn complement(&self, a: SubsetMask) -> SubsetMask {
        SubsetMask(self.full().0 & !a.0)
    }
}

/// A subset of criteria encoded as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubsetMask(pub u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn singleton(i: usize) -> Self {
        SubsetMask(1 << i)
    }

    /// Builds a mask from zero-based criterion indices.
    pub fn from_criteria<I: IntoIterator<Item = usize>>(criteria: I) -> Self {
        SubsetMask(criteria.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn with(self, i: usize) -> Self {
        SubsetMask(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> Self {
        SubsetMask(self.0 & !(1 << i))
    }

    /// Cardinality `|A|`.
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 | other.0)
    }

    pub fn intersection(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & other.0)
    }

    pub fn is_disjoint(self, other: SubsetMask) -> bool {
        self.0 & other.0 == 0
    }

    /// Zero-based criterion indices in ascending order.
    pub fn criteria(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits & (1 << i) != 0)
    }

    /// Every subset of `self`, including the empty set and `self`.
    pub fn submasks(self) -> Submasks {
        Submasks {
            full: self.0,
            next: Some(self.0),
        }
    }

    /// Label of the form `{1,3}`.
    pub fn braces(self) -> String {
        format!("{{{}}}", self.criteria().map(|i| i + 1).join(","))
    }

    /// Label in the coalition notation `c(1, 3)`; singletons print as the bare
    /// criterion and the empty set as `∅`.
    pub fn coalition(self) -> String {
        match self.len() {
            0 => "∅".to_string(),
            1 => format!("{}", self.criteria().next().unwrap_or(0) + 1),
            _ => format!("c({})", self.criteria().map(|i| i + 1).join(", ")),
        }
    }
}

/// How subsets are named in exports and drawings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LabelMode {
    /// `{1,3}`
    #[default]
    Canonical,
    /// `c(1, 3)`
    Coalition,
}

impl SubsetMask {
    pub fn label(self, mode: LabelMode) -> String {
        match mode {
            LabelMode::Canonical => self.braces(),
            LabelMode::Coalition => self.coalition(),
        }
    }
}

impl std::str::FromStr for LabelMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "canonical" | "braces" => Ok(LabelMode::Canonical),
            "paper" | "coalition" => Ok(LabelMode::Coalition),
            other => Err(Error::arg(format!("unknown label mode `{other}`"))),
        }
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.braces())
    }
}

/// Descending enumeration of the submasks of a mask.
pub struct Submasks {
    full: u32,
    next: Option<u32>,
}

impl Iterator for Submasks {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            Some((cur - 1) & self.full)
        };
        Some(SubsetMask(cur))
    }
}

/// Binomial coefficient as a float; exact for the small arguments used here.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for j in 0..k {
        acc = acc * (n - j) as u64 / (j + 1) as u64;
    }
    acc as f64
}

/// A real-valued function on the subsets of `N`, stored densely by mask.
#[derive(Debug, Clone, PartialEq)]
pub struct SetFunction {
    universe: Universe,
    values: Vec<f64>,
}

impl SetFunction {
    pub fn new(universe: Universe, values: Vec<f64>) -> Result<Self> {
        if values.len() != universe.size() {
            return Err(Error::arg(format!(
                "expected {} values for n = {}, got {}",
                universe.size(),
                universe.n(),
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::arg(format!("value at index {pos} is not finite")));
        }
        Ok(SetFunction { universe, values })
    }

    pub fn zeros(universe: Universe) -> Self {
        SetFunction {
            universe,
            values: vec![0.0; universe.size()],
        }
    }

    pub fn from_fn(universe: Universe, f: impl FnMut(SubsetMask) -> f64) -> Result<Self> {
        let values = universe.subsets().map(f).collect();
        SetFunction::new(universe, values)
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn n(&self) -> usize {
        self.universe.n()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, a: SubsetMask) -> f64 {
        self.values[a.index()]
    }

    pub fn set(&mut self, a: SubsetMask, v: f64) {
        self.values[a.index()] = v;
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Largest absolute pointwise difference to `other`.
    pub fn max_abs_diff(&self, other: &SetFunction) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Index<SubsetMask> for SetFunction {
    type Output = f64;

    fn index(&self, a: SubsetMask) -> &f64 {
        &self.values[a.index()]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryViolation {
    pub mask: SubsetMask,
    pub value: f64,
    pub expected: f64,
}

/// A covering edge `from -> from ∪ {criterion}` whose height is below `-tol`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeViolation {
    pub from: SubsetMask,
    pub criterion: usize,
    /// `μ(from) - μ(from ∪ {criterion})`, always positive.
    pub deficit: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub ok: bool,
    pub boundary_violations: Vec<BoundaryViolation>,
    pub edge_violations: Vec<EdgeViolation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return f.write_str("valid");
        }
        let mut parts = Vec::new();
        for b in &self.boundary_violations {
            parts.push(format!("μ{} = {} (expected {})", b.mask, b.value, b.expected));
        }
        for e in &self.edge_violations {
            parts.push(format!(
                "edge {} -> {} drops by {:.6}",
                e.from,
                e.from.with(e.criterion),
                e.deficit
            ));
        }
        write!(f, "{}", parts.join("; "))
    }
}

/// Checks the boundary conditions and every covering-edge height.
///
/// Monotonicity over all comparable pairs follows from nonnegative covering
/// edges by transitivity, so only the `n * 2^(n-1)` covering edges are examined.
pub fn validate(sf: &SetFunction, tol: f64) -> ValidationReport {
    let u = sf.universe();
    let mut report = ValidationReport::default();
    for (mask, expected) in [(SubsetMask::EMPTY, 0.0), (u.full(), 1.0)] {
        let value = sf.get(mask);
        if (value - expected).abs() > tol {
            report.boundary_violations.push(BoundaryViolation { mask, value, expected });
        }
    }
    for (a, i) in u.covering_edges() {
        let height = sf.get(a.with(i)) - sf.get(a);
        if height < -tol {
            report.edge_violations.push(EdgeViolation {
                from: a,
                criterion: i,
                deficit: -height,
            });
        }
    }
    report.ok = report.boundary_violations.is_empty() && report.edge_violations.is_empty();
    report
}

/// A set function satisfying the boundary and monotonicity conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyMeasure {
    inner: SetFunction,
}

impl FuzzyMeasure {
    /// Validates `sf` at `tol`; boundary values within tolerance are snapped to
    /// exactly 0 and 1.
    pub fn new(mut sf: SetFunction, tol: f64) -> Result<Self> {
        let report = validate(&sf, tol);
        if !report.ok {
            return Err(Error::Validation(report));
        }
        let full = sf.universe().full();
        sf.set(SubsetMask::EMPTY, 0.0);
        sf.set(full, 1.0);
        Ok(FuzzyMeasure { inner: sf })
    }

    pub fn from_values(n: usize, values: Vec<f64>) -> Result<Self> {
        FuzzyMeasure::new(SetFunction::new(Universe::new(n)?, values)?, DEFAULT_TOLERANCE)
    }

    /// Wraps a set function known to be monotone with exact boundaries.
    pub(crate) fn from_trusted(sf: SetFunction) -> Self {
        debug_assert!(validate(&sf, 1e-9).ok);
        FuzzyMeasure { inner: sf }
    }

    /// Wraps `sf` without any check. Operations on a non-monotone table still
    /// run, but their results carry no guarantees.
    pub fn new_unchecked(sf: SetFunction) -> Self {
        FuzzyMeasure { inner: sf }
    }

    /// `μ(A) = 0` for `A ≠ N`.
    pub fn min_measure(n: usize) -> Result<Self> {
        let u = Universe::new(n)?;
        let full = u.full();
        Ok(Self::from_trusted(SetFunction::from_fn(u, |a| if a == full { 1.0 } else { 0.0 })?))
    }

    /// `μ(A) = 1` for `A ≠ ∅`.
    pub fn max_measure(n: usize) -> Result<Self> {
        let u = Universe::new(n)?;
        Ok(Self::from_trusted(SetFunction::from_fn(u, |a| if a.is_empty() { 0.0 } else { 1.0 })?))
    }

    pub fn uniform_additive(n: usize) -> Result<Self> {
        Self::additive_from_weights(&vec![1.0 / n as f64; n])
    }

    /// Additive measure `μ(A) = Σ_{i∈A} w_i`; weights must be nonnegative and sum to 1.
    pub fn additive_from_weights(weights: &[f64]) -> Result<Self> {
        let u = Universe::new(weights.len())?;
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::arg("weights must be finite and nonnegative"));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > DEFAULT_TOLERANCE {
            return Err(Error::arg(format!("weights sum to {total}, expected 1")));
        }
        let sf = SetFunction::from_fn(u, |a| a.criteria().map(|i| weights[i]).sum())?;
        FuzzyMeasure::new(sf, DEFAULT_TOLERANCE)
    }

    pub fn universe(&self) -> Universe {
        self.inner.universe()
    }

    pub fn n(&self) -> usize {
        self.inner.n()
    }

    pub fn get(&self, a: SubsetMask) -> f64 {
        self.inner.get(a)
    }

    pub fn values(&self) -> &[f64] {
        self.inner.values()
    }

    pub fn as_set_function(&self) -> &SetFunction {
        &self.inner
    }

    pub fn into_set_function(self) -> SetFunction {
        self.inner
    }

    /// The dual measure `μ̄(A) = μ(N) - μ(N \ A)`.
    pub fn dual(&self) -> FuzzyMeasure {
        let u = self.universe();
        let values = u
            .subsets()
            .map(|a| self.get(u.full()) - self.get(u.complement(a)))
            .collect();
        FuzzyMeasure {
            inner: SetFunction { universe: u, values },
        }
    }

    /// Marginal contribution `Δ_i μ(A) = μ(A ∪ {i}) - μ(A)`; `i` must not be in `A`.
    pub fn marginal(&self, a: SubsetMask, i: usize) -> Result<f64> {
        if i >= self.n() {
            return Err(Error::arg(format!("criterion index {i} out of range")));
        }
        if a.contains(i) {
            return Err(Error::arg(format!("criterion {} already belongs to {a}", i + 1)));
        }
        Ok(self.get(a.with(i)) - self.get(a))
    }

    /// Values depend only on cardinality.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        let n = self.n();
        let mut lo = vec![f64::INFINITY; n + 1];
        let mut hi = vec![f64::NEG_INFINITY; n + 1];
        for a in self.universe().subsets() {
            let v = self.get(a);
            lo[a.len()] = lo[a.len()].min(v);
            hi[a.len()] = hi[a.len()].max(v);
        }
        lo.iter().zip(&hi).all(|(l, h)| h - l <= tol)
    }

    fn disjoint_pairs(&self) -> impl Iterator<Item = (SubsetMask, SubsetMask)> + '_ {
        let u = self.universe();
        u.subsets()
            .filter(|a| !a.is_empty())
            .flat_map(move |a| {
                u.complement(a)
                    .submasks()
                    .filter(|b| !b.is_empty())
                    .map(move |b| (a, b))
            })
    }

    pub fn is_additive(&self, tol: f64) -> bool {
        self.disjoint_pairs()
            .all(|(a, b)| (self.get(a.union(b)) - self.get(a) - self.get(b)).abs() <= tol)
    }

    pub fn is_superadditive(&self, tol: f64) -> bool {
        self.disjoint_pairs()
            .all(|(a, b)| self.get(a.union(b)) >= self.get(a) + self.get(b) - tol)
    }

    pub fn is_subadditive(&self, tol: f64) -> bool {
        self.disjoint_pairs()
            .all(|(a, b)| self.get(a.union(b)) <= self.get(a) + self.get(b) + tol)
    }

    /// Second differences `μ(A∪{i,j}) + μ(A) - μ(A∪{i}) - μ(A∪{j})` over all
    /// `A` and pairs `i < j` outside `A`.
    fn second_differences(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.n();
        self.universe().subsets().flat_map(move |a| {
            (0..n)
                .filter(move |&i| !a.contains(i))
                .tuple_combinations()
                .map(move |(i, j)| {
                    self.get(a.with(i).with(j)) + self.get(a) - self.get(a.with(i)) - self.get(a.with(j))
                })
        })
    }

    pub fn is_supermodular(&self, tol: f64) -> bool {
        self.second_differences().all(|d| d >= -tol)
    }

    pub fn is_submodular(&self, tol: f64) -> bool {
        self.second_differences().all(|d| d <= tol)
    }
}

impl Index<SubsetMask> for FuzzyMeasure {
    type Output = f64;

    fn index(&self, a: SubsetMask) -> &f64 {
        &self.inner[a]
    }
}

/// Enumerates the `n!` maximal chains `∅ ⊂ {σ(1)} ⊂ ... ⊂ N`, one per permutation.
pub fn maximal_chains(n: usize) -> Result<impl Iterator<Item = Vec<SubsetMask>>> {
    Universe::new(n)?;
    if n > MAX_CHAIN_CRITERIA {
        return Err(Error::Capacity(format!(
            "chain enumeration limited to n <= {MAX_CHAIN_CRITERIA}, got {n}"
        )));
    }
    Ok((0..n).permutations(n).map(|perm| {
        let mut chain = Vec::with_capacity(perm.len() + 1);
        let mut cur = SubsetMask::EMPTY;
        chain.push(cur);
        for i in perm {
            cur = cur.with(i);
            chain.push(cur);
        }
        chain
    }))
}
