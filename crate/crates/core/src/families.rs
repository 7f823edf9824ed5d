//! Checkers and constructors for special families of measures: k-additive,
//! k-tolerant/intolerant, k-maxitive/minitive, k-interactive and p-symmetric.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lattice::{FuzzyMeasure, SetFunction, SubsetMask, DEFAULT_TOLERANCE};
use crate::transforms::mobius;

/// Smallest `k` such that the Möbius mass vanishes (within `tol`) above cardinality `k`.
pub fn additivity_order(mu: &FuzzyMeasure, tol: f64) -> usize {
    let m = mobius(mu);
    mu.universe()
        .subsets()
        .filter(|&a| m.get(a).abs() > tol)
        .map(|a| a.len())
        .max()
        .unwrap_or(0)
        .max(1)
}

fn near(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn check_k(mu: &FuzzyMeasure, k: usize, hi: usize) -> bool {
    (1..=hi).contains(&k) && hi <= mu.n()
}

/// `μ(A) = 1` for every `|A| >= k`, and some `|B| = k - 1` has `μ(B) ≠ 1`.
pub fn is_k_tolerant(mu: &FuzzyMeasure, k: usize, tol: f64) -> bool {
    if !check_k(mu, k, mu.n()) {
        return false;
    }
    let u = mu.universe();
    u.subsets().filter(|a| a.len() >= k).all(|a| near(mu.get(a), 1.0, tol))
        && u.subsets().any(|b| b.len() == k - 1 && !near(mu.get(b), 1.0, tol))
}

/// `μ(A) = 0` for every `|A| <= n - k`, and some `|B| = n - k + 1` has `μ(B) ≠ 0`.
pub fn is_k_intolerant(mu: &FuzzyMeasure, k: usize, tol: f64) -> bool {
    let n = mu.n();
    if !check_k(mu, k, n) {
        return false;
    }
    let u = mu.universe();
    u.subsets().filter(|a| a.len() <= n - k).all(|a| near(mu.get(a), 0.0, tol))
        && u.subsets().any(|b| b.len() == n - k + 1 && !near(mu.get(b), 0.0, tol))
}

/// The unique `k` for which the measure is k-tolerant, if any.
pub fn tolerant_order(mu: &FuzzyMeasure, tol: f64) -> Option<usize> {
    (1..=mu.n()).find(|&k| is_k_tolerant(mu, k, tol))
}

pub fn intolerant_order(mu: &FuzzyMeasure, tol: f64) -> Option<usize> {
    (1..=mu.n()).find(|&k| is_k_intolerant(mu, k, tol))
}

/// `μ(A) = max_{B⊊A} μ(B)` for every `|A| >= k + 1`. By monotonicity the
/// maximum is attained on the lower covers `A \ {i}`.
pub fn is_k_maxitive(mu: &FuzzyMeasure, k: usize, tol: f64) -> bool {
    if !check_k(mu, k, mu.n()) {
        return false;
    }
    mu.universe().subsets().filter(|a| a.len() > k).all(|a| {
        let best = a.criteria().map(|i| mu.get(a.without(i))).fold(f64::NEG_INFINITY, f64::max);
        near(mu.get(a), best, tol)
    })
}

/// `μ(A) = min_{B⊋A} μ(B)` for every `|A| <= n - k - 1`; the minimum is
/// attained on the upper covers `A ∪ {i}`.
pub fn is_k_minitive(mu: &FuzzyMeasure, k: usize, tol: f64) -> bool {
    let n = mu.n();
    if !check_k(mu, k, n) {
        return false;
    }
    mu.universe().subsets().filter(|a| a.len() + k < n).all(|a| {
        let best = (0..n)
            .filter(|&i| !a.contains(i))
            .map(|i| mu.get(a.with(i)))
            .fold(f64::INFINITY, f64::min);
        near(mu.get(a), best, tol)
    })
}

/// Smallest `k` in `1..n` for which the measure is k-maxitive; `n` when no
/// smaller order qualifies (every measure is vacuously n-maxitive).
pub fn maxitive_order(mu: &FuzzyMeasure, tol: f64) -> usize {
    let n = mu.n();
    (1..n).find(|&k| is_k_maxitive(mu, k, tol)).unwrap_or(n)
}

pub fn minitive_order(mu: &FuzzyMeasure, tol: f64) -> usize {
    let n = mu.n();
    (1..n).find(|&k| is_k_minitive(mu, k, tol)).unwrap_or(n)
}

fn interactive_value(n: usize, k: usize, level: usize, big_k: f64) -> f64 {
    if level == n {
        return 1.0;
    }
    let step = (1.0 - big_k) / (n - k - 1) as f64;
    big_k + (level - k - 1) as f64 * step
}

/// Builds a k-interactive measure: values on levels `<= k` are taken from
/// `lower`, and every `A` with `|A| = a > k` gets
/// `K + (a - k - 1) / (n - k - 1) * (1 - K)`.
pub fn make_k_interactive(lower: &SetFunction, k: usize, big_k: f64) -> Result<FuzzyMeasure> {
    let u = lower.universe();
    let n = u.n();
    if !(0.0..=1.0).contains(&big_k) {
        return Err(Error::arg(format!("K must lie in [0, 1], got {big_k}")));
    }
    if k + 2 > n {
        return Err(Error::arg(format!("k must be at most n - 2 = {}, got {k}", n - 2)));
    }
    let mut values = lower.clone();
    values.set(SubsetMask::EMPTY, 0.0);
    for a in u.subsets().filter(|a| a.len() == k) {
        if lower.get(a) > big_k + DEFAULT_TOLERANCE {
            return Err(Error::InfeasibleConstruction(format!(
                "μ{a} = {} exceeds K = {big_k} at level k = {k}",
                lower.get(a)
            )));
        }
    }
    for a in u.subsets().filter(|a| a.len() > k) {
        values.set(a, interactive_value(n, k, a.len(), big_k));
    }
    FuzzyMeasure::new(values, DEFAULT_TOLERANCE).map_err(|e| match e {
        Error::Validation(report) => Error::InfeasibleConstruction(format!("lower levels are not monotone: {report}")),
        other => other,
    })
}

/// Returns the common `K` when every level above `k` follows the k-interactive
/// formula within `tol`.
pub fn is_k_interactive(mu: &FuzzyMeasure, k: usize, tol: f64) -> Option<f64> {
    let n = mu.n();
    if k + 2 > n {
        return None;
    }
    let u = mu.universe();
    let first = u.subsets().find(|a| a.len() == k + 1)?;
    let big_k = mu.get(first);
    u.subsets()
        .filter(|a| a.len() > k)
        .all(|a| near(mu.get(a), interactive_value(n, k, a.len(), big_k), tol))
        .then_some(big_k)
}

/// A partition of the criteria into disjoint blocks, used to encode subsets as
/// intersection-count vectors `b_S = (|S ∩ A_1|, ..., |S ∩ A_p|)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionEncoding {
    pub blocks: Vec<SubsetMask>,
}

impl PartitionEncoding {
    pub fn new(n: usize, blocks: Vec<SubsetMask>) -> Result<Self> {
        let mut seen = SubsetMask::EMPTY;
        for b in &blocks {
            if b.is_empty() || !b.is_disjoint(seen) {
                return Err(Error::arg("partition blocks must be nonempty and disjoint"));
            }
            seen = seen.union(*b);
        }
        if seen != SubsetMask::from_criteria(0..n) {
            return Err(Error::arg("partition blocks must cover every criterion"));
        }
        Ok(PartitionEncoding { blocks })
    }

    /// Number of blocks `p`.
    pub fn p(&self) -> usize {
        self.blocks.len()
    }

    pub fn encode(&self, s: SubsetMask) -> Vec<usize> {
        self.blocks.iter().map(|b| s.intersection(*b).len()).collect()
    }

    /// Number of distinct coefficients a measure with this basis needs,
    /// `Π (|A_i| + 1)`.
    pub fn coefficient_count(&self) -> usize {
        self.blocks.iter().map(|b| b.len() + 1).product()
    }

    /// True when `μ(S)` depends only on `b_S`, within `tol`.
    pub fn describes(&self, mu: &FuzzyMeasure, tol: f64) -> bool {
        let mut reference: HashMap<Vec<usize>, f64> = HashMap::new();
        mu.universe().subsets().all(|s| {
            let v = mu.get(s);
            let r = *reference.entry(self.encode(s)).or_insert(v);
            near(r, v, tol)
        })
    }
}

/// Criteria `i` and `j` are exchangeable when `μ(C ∪ {i}) = μ(C ∪ {j})` for
/// every `C ⊆ N \ {i, j}`.
fn exchangeable(mu: &FuzzyMeasure, i: usize, j: usize, tol: f64) -> bool {
    let u = mu.universe();
    let rest = u.complement(SubsetMask::singleton(i).with(j));
    rest.submasks().all(|c| near(mu.get(c.with(i)), mu.get(c.with(j)), tol))
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut cur = x;
    while parent[cur] != root {
        let next = parent[cur];
        parent[cur] = root;
        cur = next;
    }
    root
}

/// Coarsest partition of `N` into subsets of indifference.
///
/// Pairwise exchangeability is merged with union-find; the result is then
/// checked against the full definition. A non-transitive relation (possible
/// only through the tolerance) is reported with the offending triple.
pub fn indifference_partition(mu: &FuzzyMeasure, tol: f64) -> Result<PartitionEncoding> {
    let n = mu.n();
    let mut relation = vec![vec![false; n]; n];
    for i in 0..n {
        relation[i][i] = true;
        for j in i + 1..n {
            let e = exchangeable(mu, i, j, tol);
            relation[i][j] = e;
            relation[j][i] = e;
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if relation[i][j] && relation[j][k] && !relation[i][k] {
                    return Err(Error::Ambiguity(i + 1, j + 1, k + 1));
                }
            }
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in i + 1..n {
            if relation[i][j] {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut blocks: Vec<SubsetMask> = Vec::new();
    let mut block_of_root: HashMap<usize, usize> = HashMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        let idx = *block_of_root.entry(r).or_insert_with(|| {
            blocks.push(SubsetMask::EMPTY);
            blocks.len() - 1
        });
        blocks[idx] = blocks[idx].with(i);
    }
    let enc = PartitionEncoding::new(n, blocks)?;
    if !enc.describes(mu, tol) {
        return Err(Error::Internal(
            "exchangeability classes fail the indifference definition within tolerance".into(),
        ));
    }
    Ok(enc)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyReport {
    pub additivity_order: usize,
    pub maxitive_order: usize,
    pub minitive_order: usize,
    pub tolerant_order: Option<usize>,
    pub intolerant_order: Option<usize>,
    /// Smallest `k` in `1..=n-2` with the k-interactive structure, and its `K`.
    pub interactive: Option<(usize, f64)>,
    /// Indifference basis; absent when the relation is ambiguous within tolerance.
    pub partition: Option<PartitionEncoding>,
}

impl FamilyReport {
    pub fn symmetry_p(&self) -> Option<usize> {
        self.partition.as_ref().map(PartitionEncoding::p)
    }
}

pub fn family_report(mu: &FuzzyMeasure, tol: f64) -> FamilyReport {
    let n = mu.n();
    FamilyReport {
        additivity_order: additivity_order(mu, tol),
        maxitive_order: maxitive_order(mu, tol),
        minitive_order: minitive_order(mu, tol),
        tolerant_order: tolerant_order(mu, tol),
        intolerant_order: intolerant_order(mu, tol),
        interactive: (1..n.saturating_sub(1)).find_map(|k| is_k_interactive(mu, k, tol).map(|big_k| (k, big_k))),
        partition: indifference_partition(mu, tol).ok(),
    }
}
