//! Choquet, Sugeno and pan integrals.
//!
//! Every integral has an ordered form (sort the inputs, walk the induced
//! maximal chain) and a basis form (enumerate all `2^n` subsets). The ordered
//! form is the production path; the basis forms exist as independent checks.
//! Ties in the sort are broken by criterion index; the integrals do not depend
//! on how ties are broken.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::{FuzzyMeasure, SubsetMask};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Integral {
    Choquet,
    Sugeno,
    Pan,
}

impl Integral {
    pub const ALL: [Integral; 3] = [Integral::Choquet, Integral::Sugeno, Integral::Pan];

    pub fn name(self) -> &'static str {
        match self {
            Integral::Choquet => "choquet",
            Integral::Sugeno => "sugeno",
            Integral::Pan => "pan",
        }
    }

    pub fn evaluate(self, mu: &FuzzyMeasure, x: &[f64]) -> Result<f64> {
        match self {
            Integral::Choquet => choquet(mu, x),
            Integral::Sugeno => sugeno(mu, x),
            Integral::Pan => pan(mu, x),
        }
    }
}

impl fmt::Display for Integral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Integral {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "choquet" => Ok(Integral::Choquet),
            "sugeno" => Ok(Integral::Sugeno),
            "pan" => Ok(Integral::Pan),
            other => Err(Error::arg(format!("unknown integral `{other}`"))),
        }
    }
}

fn check_input(mu: &FuzzyMeasure, x: &[f64], unit: bool) -> Result<()> {
    if x.len() != mu.n() {
        return Err(Error::arg(format!(
            "input has {} components, measure has {} criteria",
            x.len(),
            mu.n()
        )));
    }
    for (i, v) in x.iter().enumerate() {
        if !v.is_finite() || *v < 0.0 || (unit && *v > 1.0) {
            let range = if unit { "[0, 1]" } else { "[0, +inf)" };
            return Err(Error::arg(format!("component {} = {v} outside {range}", i + 1)));
        }
    }
    Ok(())
}

/// Criterion indices sorted by non-decreasing score, ties by index.
pub fn ascending_order(x: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..x.len()).collect();
    idx.sort_by(|&a, &b| x[a].partial_cmp(&x[b]).unwrap_or(Ordering::Equal).then(a.cmp(&b)));
    idx
}

/// Pairs `(x_(i), {(i), ..., (n)})` along the chain induced by `x`.
fn upper_sets(x: &[f64]) -> Vec<(f64, SubsetMask)> {
    let order = ascending_order(x);
    let mut upper = SubsetMask::from_criteria(0..x.len());
    let mut out = Vec::with_capacity(x.len());
    for &i in &order {
        out.push((x[i], upper));
        upper = upper.without(i);
    }
    out
}

/// `C(x) = Σ_i (x_(i) - x_(i-1)) μ({(i), ..., (n)})`, `x_(0) = 0`.
pub fn choquet(mu: &FuzzyMeasure, x: &[f64]) -> Result<f64> {
    check_input(mu, x, false)?;
    let mut prev = 0.0;
    let mut total = 0.0;
    for (v, upper) in upper_sets(x) {
        total += (v - prev) * mu.get(upper);
        prev = v;
    }
    Ok(total)
}

/// `C(x) = Σ_A μ(A) max(0, min_{A} x - max_{N\A} x)`; the max over an empty
/// complement is 0.
pub fn choquet_basis(mu: &FuzzyMeasure, x: &[f64]) -> Result<f64> {
    check_input(mu, x, false)?;
    let u = mu.universe();
    let mut total = 0.0;
    for a in u.subsets().filter(|a| !a.is_empty()) {
        let lo = a.criteria().map(|i| x[i]).fold(f64::INFINITY, f64::min);
        let hi = u.complement(a).criteria().map(|i| x[i]).fold(0.0, f64::max);
        total += mu.get(a) * (lo - hi).max(0.0);
    }
    Ok(total)
}

/// `S(x) = max_i min(x_(i), μ({(i), ..., (n)}))`.
pub fn sugeno(mu: &FuzzyMeasure, x: &[f64]) -> Result<f64> {
    check_input(mu, x, true)?;
    Ok(upper_sets(x)
        .into_iter()
        .map(|(v, upper)| v.min(mu.get(upper)))
        .fold(0.0, f64::max))
}

/// `S(x) = max_A min(μ(A), min_{A} x)`.
pub fn sugeno_basis(mu: &FuzzyMeasure, x: &[f64]) -> Result<f64> {
    check_input(mu, x, true)?;
    Ok(mu
        .universe()
        .subsets()
        .filter(|a| !a.is_empty())
        .map(|a| mu.get(a).min(subset_min(x, a)))
        .fold(0.0, f64::max))
}

/// `N(x) = max_i x_(i) μ({(i), ..., (n)})`.
pub fn pan(mu: &FuzzyMeasure, x: &[f64]) -> Result<f64> {
    check_input(mu, x, true)?;
    Ok(upper_sets(x)
        .into_iter()
        .map(|(v, upper)| v * mu.get(upper))
        .fold(0.0, f64::max))
}

/// `N(x) = max_A μ(A) min_{A} x`.
pub fn pan_basis(mu: &FuzzyMeasure, x: &[f64]) -> Result<f64> {
    check_input(mu, x, true)?;
    Ok(mu
        .universe()
        .subsets()
        .filter(|a| !a.is_empty())
        .map(|a| mu.get(a) * subset_min(x, a))
        .fold(0.0, f64::max))
}

fn subset_min(x: &[f64], a: SubsetMask) -> f64 {
    a.criteria().map(|i| x[i]).fold(f64::INFINITY, f64::min)
}

/// Choquet coefficients of `x` in terms of the measure values: returns the
/// pairs `(A, x_(i) - x_(i-1))` along the induced chain, skipping zero weights.
pub fn choquet_terms(x: &[f64]) -> Vec<(SubsetMask, f64)> {
    let mut prev = 0.0;
    let mut terms = Vec::new();
    for (v, upper) in upper_sets(x) {
        let w = v - prev;
        if w != 0.0 {
            terms.push((upper, w));
        }
        prev = v;
    }
    terms
}

#[cfg(test)]
mod tests {
    use super::*;

    const X: [f64; 4] = [0.2, 0.5, 0.75, 1.0];

    #[test]
    fn uniform_additive_examples() {
        let mu = FuzzyMeasure::uniform_additive(4).unwrap();
        assert!((choquet(&mu, &X).unwrap() - 0.6125).abs() < 1e-15);
        assert!((choquet_basis(&mu, &X).unwrap() - 0.6125).abs() < 1e-15);
        assert_eq!(sugeno(&mu, &X).unwrap(), 0.5);
        assert_eq!(sugeno_basis(&mu, &X).unwrap(), 0.5);
        assert_eq!(pan(&mu, &X).unwrap(), 0.375);
        assert_eq!(pan_basis(&mu, &X).unwrap(), 0.375);
    }

    #[test]
    fn extreme_measures() {
        let min = FuzzyMeasure::min_measure(4).unwrap();
        let max = FuzzyMeasure::max_measure(4).unwrap();
        for f in Integral::ALL {
            assert_eq!(f.evaluate(&min, &X).unwrap(), 0.2, "{f}");
            assert_eq!(f.evaluate(&max, &X).unwrap(), 1.0, "{f}");
        }
    }

    #[test]
    fn constant_inputs() {
        let mu = FuzzyMeasure::from_values(3, vec![0.0, 0.2, 0.5, 0.6, 0.5, 0.7, 1.0, 1.0]).unwrap();
        for f in Integral::ALL {
            assert!((f.evaluate(&mu, &[0.4; 3]).unwrap() - 0.4).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let mu = FuzzyMeasure::uniform_additive(2).unwrap();
        assert!(choquet(&mu, &[-0.1, 0.5]).is_err());
        assert!(choquet(&mu, &[3.0, 0.5]).is_ok());
        assert!(sugeno(&mu, &[1.2, 0.5]).is_err());
        assert!(pan(&mu, &[0.2]).is_err());
        assert!(pan_basis(&mu, &[f64::NAN, 0.1]).is_err());
    }

    #[test]
    fn choquet_terms_telescope() {
        let terms = choquet_terms(&[1.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(terms, vec![(SubsetMask(0b10001), 1.0)]);
        let terms = choquet_terms(&[0.3, 0.3, 0.7]);
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0].0, SubsetMask(0b111));
    }

    #[test]
    fn parse() {
        assert_eq!("Sugeno".parse::<Integral>().unwrap(), Integral::Sugeno);
        assert!("lebesgue".parse::<Integral>().is_err());
    }
}
