//! Möbius and zeta transforms, Shapley-type importance, interaction indices
//! and scalar summaries (entropy, orness, level means).

use crate::error::{Error, Result};
use crate::lattice::{binomial, FuzzyMeasure, SetFunction, SubsetMask, DEFAULT_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndexKind {
    Mobius,
    ShapleyComprehensive,
    Nonadditivity,
    Nonmodularity,
}

impl IndexKind {
    pub const ALL: [IndexKind; 4] = [
        IndexKind::Mobius,
        IndexKind::ShapleyComprehensive,
        IndexKind::Nonadditivity,
        IndexKind::Nonmodularity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IndexKind::Mobius => "mobius",
            IndexKind::ShapleyComprehensive => "shapley",
            IndexKind::Nonadditivity => "nonadditivity",
            IndexKind::Nonmodularity => "nonmodularity",
        }
    }

    pub fn compute(self, mu: &FuzzyMeasure) -> IndexVector {
        match self {
            IndexKind::Mobius => mobius(mu),
            IndexKind::ShapleyComprehensive => shapley_comprehensive(mu),
            IndexKind::Nonadditivity => nonadditivity_index(mu),
            IndexKind::Nonmodularity => nonmodularity_index(mu),
        }
    }
}

impl std::str::FromStr for IndexKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mobius" | "möbius" | "m" => Ok(IndexKind::Mobius),
            "shapley" | "shapley_comprehensive" | "k" => Ok(IndexKind::ShapleyComprehensive),
            "nonadditivity" | "n" => Ok(IndexKind::Nonadditivity),
            "nonmodularity" | "d" => Ok(IndexKind::Nonmodularity),
            other => Err(Error::arg(format!("unknown index kind `{other}`"))),
        }
    }
}

/// A per-subset index computed from a measure.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexVector {
    pub kind: IndexKind,
    pub values: SetFunction,
}

impl IndexVector {
    pub fn get(&self, a: SubsetMask) -> f64 {
        self.values.get(a)
    }
}

/// In-place fast Möbius transform: `m(A) = Σ_{C⊆A} (-1)^{|A\C|} f(C)`.
pub fn mobius_transform(sf: &SetFunction) -> SetFunction {
    let mut out = sf.clone();
    let n = sf.n();
    for i in 0..n {
        for a in sf.universe().subsets().filter(|a| a.contains(i)) {
            let v = out.get(a) - out.get(a.without(i));
            out.set(a, v);
        }
    }
    out
}

/// Inverse of [`mobius_transform`]: `f(A) = Σ_{C⊆A} m(C)`.
pub fn zeta_transform(sf: &SetFunction) -> SetFunction {
    let mut out = sf.clone();
    let n = sf.n();
    for i in 0..n {
        for a in sf.universe().subsets().filter(|a| a.contains(i)) {
            let v = out.get(a) + out.get(a.without(i));
            out.set(a, v);
        }
    }
    out
}

pub fn mobius(mu: &FuzzyMeasure) -> IndexVector {
    IndexVector {
        kind: IndexKind::Mobius,
        values: mobius_transform(mu.as_set_function()),
    }
}

/// Rebuilds a measure from its Möbius representation; fails if the image is
/// not monotone or violates the boundary conditions.
pub fn zeta(m: &IndexVector) -> Result<FuzzyMeasure> {
    if m.kind != IndexKind::Mobius {
        return Err(Error::arg(format!(
            "zeta expects a Möbius vector, got {}",
            m.kind.name()
        )));
    }
    FuzzyMeasure::new(zeta_transform(&m.values), DEFAULT_TOLERANCE)
}

/// Comprehensive importance of every subset:
/// `k(A) = Σ_{B⊆N\A} [μ(A∪B) - μ(B)] / ((n-|A|+1) * C(n-|A|, |B|))`.
pub fn shapley_comprehensive(mu: &FuzzyMeasure) -> IndexVector {
    let u = mu.universe();
    let n = u.n();
    let values = u
        .subsets()
        .map(|a| {
            let rest = n - a.len();
            u.complement(a)
                .submasks()
                .map(|b| {
                    let w = 1.0 / ((rest + 1) as f64 * binomial(rest, b.len()));
                    w * (mu.get(a.union(b)) - mu.get(b))
                })
                .sum()
        })
        .collect();
    IndexVector {
        kind: IndexKind::ShapleyComprehensive,
        values: SetFunction::new(u, values).expect("finite by construction"),
    }
}

/// Shapley value of each criterion, `k({i})`.
pub fn shapley_values(mu: &FuzzyMeasure) -> Vec<f64> {
    let k = shapley_comprehensive(mu);
    (0..mu.n()).map(|i| k.get(SubsetMask::singleton(i))).collect()
}

/// `n(A) = μ(A) - Σ_{C⊊A} μ(C) / (2^{|A|-1} - 1)` for `|A| >= 2`, zero otherwise.
pub fn nonadditivity_index(mu: &FuzzyMeasure) -> IndexVector {
    let u = mu.universe();
    let values = u
        .subsets()
        .map(|a| {
            if a.len() < 2 {
                return 0.0;
            }
            let denom = ((1u64 << (a.len() - 1)) - 1) as f64;
            let proper = a.submasks().filter(|&c| c != a).map(|c| -mu.get(c) / denom);
            compensated_sum(std::iter::once(mu.get(a)).chain(proper))
        })
        .collect();
    IndexVector {
        kind: IndexKind::Nonadditivity,
        values: SetFunction::new(u, values).expect("finite by construction"),
    }
}

/// `d(A) = μ(A) - Σ_{i∈A} [μ({i}) + μ(A\{i})] / |A|`, with `d(∅) = 0`.
pub fn nonmodularity_index(mu: &FuzzyMeasure) -> IndexVector {
    let u = mu.universe();
    let values = u
        .subsets()
        .map(|a| {
            if a.is_empty() {
                return 0.0;
            }
            let size = a.len() as f64;
            let parts = a.criteria().flat_map(|i| {
                [
                    -mu.get(SubsetMask::singleton(i)) / size,
                    -mu.get(a.without(i)) / size,
                ]
            });
            compensated_sum(std::iter::once(mu.get(a)).chain(parts))
        })
        .collect();
    IndexVector {
        kind: IndexKind::Nonmodularity,
        values: SetFunction::new(u, values).expect("finite by construction"),
    }
}

/// Neumaier-compensated summation; the indices below subtract sums of
/// similar magnitudes and plain accumulation loses the last bits.
pub(crate) fn compensated_sum(terms: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for t in terms {
        let next = sum + t;
        if sum.abs() >= t.abs() {
            carry += (sum - next) + t;
        } else {
            carry += (t - next) + sum;
        }
        sum = next;
    }
    sum + carry
}

/// Mean of `μ(A)` over each cardinality level `s = 0..=n`.
pub fn level_means(mu: &FuzzyMeasure) -> Vec<f64> {
    let n = mu.n();
    let mut sums = vec![0.0; n + 1];
    for a in mu.universe().subsets() {
        sums[a.len()] += mu.get(a);
    }
    sums.iter()
        .enumerate()
        .map(|(s, total)| total / binomial(n, s))
        .collect()
}

/// Orness as the average of the interior level means,
/// `(1/(n-1)) Σ_{s=1}^{n-1} m_s`. This equals the normalized expected Choquet
/// integral under independent uniform inputs.
pub fn orness(mu: &FuzzyMeasure) -> f64 {
    let n = mu.n();
    let means = level_means(mu);
    means[1..n].iter().sum::<f64>() / (n - 1) as f64
}

/// Permutation-weighted entropy of the marginal contributions,
/// `H = Σ_i Σ_{A⊆N\{i}} γ_{|A|} h(Δ_i μ(A))` with
/// `γ_s = (n-s-1)! s! / n!` and `h(x) = -x ln x`.
pub fn entropy(mu: &FuzzyMeasure) -> Result<f64> {
    let n = mu.n();
    // γ_s = 1 / (n * C(n-1, s))
    let gamma: Vec<f64> = (0..n).map(|s| 1.0 / (n as f64 * binomial(n - 1, s))).collect();
    let mut h = 0.0;
    for (a, i) in mu.universe().covering_edges() {
        let delta = mu.get(a.with(i)) - mu.get(a);
        if delta < -DEFAULT_TOLERANCE {
            return Err(Error::arg(format!(
                "negative marginal contribution {delta} on edge {a} -> {}",
                a.with(i)
            )));
        }
        if delta > 0.0 {
            h -= gamma[a.len()] * delta * delta.ln();
        }
    }
    Ok(h.max(0.0))
}

/// Scalar summary of a measure.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureSummary {
    pub entropy: f64,
    pub orness: f64,
    pub level_means: Vec<f64>,
}

pub fn summarize(mu: &FuzzyMeasure) -> Result<MeasureSummary> {
    Ok(MeasureSummary {
        entropy: entropy(mu)?,
        orness: orness(mu),
        level_means: level_means(mu),
    })
}
