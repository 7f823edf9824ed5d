//! Feature matrices, average-linkage clustering, measure summaries and the
//! Monte Carlo integral comparisons.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::families::{family_report, FamilyReport};
use crate::fitting::{Dataset, Normalization};
use crate::integrals::{choquet, pan, sugeno};
use crate::io::{csv_text, format_number};
use crate::lattice::{FuzzyMeasure, LabelMode};
use crate::random::{random_batch, GeneratorConfig};
use crate::transforms::{summarize, IndexKind, MeasureSummary};

/// Column kinds for [`FeatureMatrix`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Feature {
    Value,
    Index(IndexKind),
    Entropy,
    Orness,
}

impl Feature {
    pub fn name(self) -> &'static str {
        match self {
            Feature::Value => "mu",
            Feature::Index(kind) => kind.name(),
            Feature::Entropy => "entropy",
            Feature::Orness => "orness",
        }
    }

    /// Whether the feature takes one value per subset.
    pub fn is_subset_level(self) -> bool {
        matches!(self, Feature::Value | Feature::Index(_))
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Feature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mu" | "value" => Ok(Feature::Value),
            "entropy" => Ok(Feature::Entropy),
            "orness" => Ok(Feature::Orness),
            other => other
                .parse::<IndexKind>()
                .map(Feature::Index)
                .map_err(|_| Error::arg(format!("unknown feature `{s}`"))),
        }
    }
}

/// Dense real matrix with row identifiers and named columns.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    pub row_ids: Vec<String>,
    pub columns: Vec<String>,
    pub data: Vec<Vec<f64>>,
    /// `scaled[j]` is set once column `j` has been z-standardized.
    pub scaled: Vec<bool>,
}

impl FeatureMatrix {
    pub fn new(row_ids: Vec<String>, columns: Vec<String>, data: Vec<Vec<f64>>) -> Result<Self> {
        if row_ids.len() != data.len() {
            return Err(Error::arg(format!(
                "{} row ids for {} rows",
                row_ids.len(),
                data.len()
            )));
        }
        for (r, row) in data.iter().enumerate() {
            if row.len() != columns.len() {
                return Err(Error::arg(format!(
                    "row {} has {} cells, expected {}",
                    r + 1,
                    row.len(),
                    columns.len()
                )));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::arg(format!("row {} has a non-finite cell", r + 1)));
            }
        }
        let scaled = vec![false; columns.len()];
        Ok(FeatureMatrix { row_ids, columns, data, scaled })
    }

    pub fn rows(&self) -> usize {
        self.data.len()
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.data.iter().map(|row| row[j]).collect()
    }

    /// Per-column z-scores with population standard deviation. Constant
    /// columns are left untouched and keep `scaled[j] == false`.
    pub fn standardized(&self) -> FeatureMatrix {
        let mut out = self.clone();
        let m = self.rows() as f64;
        for j in 0..self.cols() {
            let col = self.column(j);
            let mean = col.iter().sum::<f64>() / m;
            let sd = (col.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / m).sqrt();
            if sd <= f64::EPSILON * mean.abs().max(1.0) {
                continue;
            }
            for row in &mut out.data {
                row[j] = (row[j] - mean) / sd;
            }
            out.scaled[j] = true;
        }
        out
    }

    pub fn to_csv(&self, full_precision: bool) -> String {
        let mut header = vec!["id"];
        header.extend(self.columns.iter().map(String::as_str));
        csv_text(
            &header,
            self.row_ids.iter().zip(&self.data).map(|(id, row)| {
                std::iter::once(id.clone())
                    .chain(row.iter().map(|v| format_number(*v, full_precision)))
                    .collect()
            }),
        )
    }
}

/// One row per subset in mask order, one column per requested feature.
pub fn subset_features(mu: &FuzzyMeasure, features: &[Feature], labels: LabelMode) -> Result<FeatureMatrix> {
    if features.is_empty() {
        return Err(Error::arg("at least one feature is required"));
    }
    let mut columns = Vec::with_capacity(features.len());
    for f in features {
        let col = match f {
            Feature::Value => mu.values().to_vec(),
            Feature::Index(kind) => kind.compute(mu).values.into_values(),
            other => {
                return Err(Error::arg(format!("`{other}` is a measure-level feature")));
            }
        };
        columns.push(col);
    }
    let u = mu.universe();
    let data = u.subsets().map(|a| columns.iter().map(|c| c[a.index()]).collect()).collect();
    FeatureMatrix::new(
        u.subsets().map(|a| a.label(labels)).collect(),
        features.iter().map(|f| f.name().to_string()).collect(),
        data,
    )
}

/// One row per measure with entropy and orness columns.
pub fn measure_features(measures: &[FuzzyMeasure], row_ids: Vec<String>) -> Result<FeatureMatrix> {
    let data = measures
        .iter()
        .map(|mu| summarize(mu).map(|s| vec![s.entropy, s.orness]))
        .collect::<Result<Vec<_>>>()?;
    FeatureMatrix::new(row_ids, vec!["entropy".into(), "orness".into()], data)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Merge {
    /// Cluster ids: `0..m` are rows, `m + s` is the cluster formed at step `s`.
    pub left: usize,
    pub right: usize,
    pub height: f64,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dendrogram {
    pub labels: Vec<String>,
    pub merges: Vec<Merge>,
    /// Row indices in drawing order.
    pub leaf_order: Vec<usize>,
}

impl Dendrogram {
    pub fn leaves(&self) -> usize {
        self.labels.len()
    }

    /// Members of each cluster id, as row indices.
    pub fn members(&self, id: usize) -> Vec<usize> {
        let m = self.leaves();
        if id < m {
            return vec![id];
        }
        let mg = self.merges[id - m];
        let mut out = self.members(mg.left);
        out.extend(self.members(mg.right));
        out
    }

    pub fn to_csv(&self, full_precision: bool) -> String {
        csv_text(
            &["step", "left", "right", "height", "size"],
            self.merges.iter().enumerate().map(|(s, mg)| {
                vec![
                    s.to_string(),
                    mg.left.to_string(),
                    mg.right.to_string(),
                    format_number(mg.height, full_precision),
                    mg.size.to_string(),
                ]
            }),
        )
    }
}

fn row_cmp(fm: &FeatureMatrix, a: usize, b: usize) -> Ordering {
    fm.row_ids[a].cmp(&fm.row_ids[b]).then_with(|| {
        fm.data[a]
            .iter()
            .zip(&fm.data[b])
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

/// Average-linkage agglomerative clustering on Euclidean distances between
/// z-standardized rows.
///
/// Rows are first put into a canonical order (by id, then by value), and all
/// arithmetic and tie-breaking happen in that order, so permuting the input
/// rows only relabels the output. Among equally close pairs the one whose
/// clusters have the smallest canonical positions merges first.
pub fn hierarchical_cluster(fm: &FeatureMatrix) -> Result<Dendrogram> {
    let m = fm.rows();
    if m < 2 {
        return Err(Error::arg(format!("clustering needs at least 2 rows, got {m}")));
    }
    let mut canon: Vec<usize> = (0..m).collect();
    canon.sort_by(|&a, &b| row_cmp(fm, a, b));
    let sorted = FeatureMatrix {
        row_ids: canon.iter().map(|&r| fm.row_ids[r].clone()).collect(),
        columns: fm.columns.clone(),
        data: canon.iter().map(|&r| fm.data[r].clone()).collect(),
        scaled: fm.scaled.clone(),
    }
    .standardized();

    let mut dist = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let d = sorted.data[i]
                .iter()
                .zip(&sorted.data[j])
                .map(|(x, y)| (x - y).powi(2))
                .sum::<f64>()
                .sqrt();
            dist[i][j] = d;
            dist[j][i] = d;
        }
    }

    // active clusters by slot; a slot keeps the canonical minimum of its members
    let mut active: Vec<bool> = vec![true; m];
    let mut size = vec![1usize; m];
    let mut id: Vec<usize> = canon.clone();
    let mut merges = Vec::with_capacity(m - 1);
    for step in 0..m - 1 {
        let mut best: Option<(f64, usize, usize)> = None;
        for i in (0..m).filter(|&i| active[i]) {
            for j in (i + 1..m).filter(|&j| active[j]) {
                if best.is_none_or(|(d, _, _)| dist[i][j] < d) {
                    best = Some((dist[i][j], i, j));
                }
            }
        }
        let (height, i, j) = best.ok_or_else(|| Error::Internal("no active pair".into()))?;
        let (ni, nj) = (size[i] as f64, size[j] as f64);
        for k in (0..m).filter(|&k| active[k] && k != i && k != j) {
            let d = (ni * dist[k][i] + nj * dist[k][j]) / (ni + nj);
            dist[k][i] = d;
            dist[i][k] = d;
        }
        merges.push(Merge {
            left: id[i],
            right: id[j],
            height,
            size: size[i] + size[j],
        });
        active[j] = false;
        size[i] += size[j];
        id[i] = m + step;
    }

    let mut dendrogram = Dendrogram {
        labels: fm.row_ids.clone(),
        merges,
        leaf_order: Vec::with_capacity(m),
    };
    dendrogram.leaf_order = dendrogram.members(2 * m - 2);
    Ok(dendrogram)
}

/// Summary statistics together with family and lattice-property flags.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureReport {
    pub summary: MeasureSummary,
    pub family: FamilyReport,
    pub additive: bool,
    pub symmetric: bool,
    pub superadditive: bool,
    pub subadditive: bool,
    pub supermodular: bool,
    pub submodular: bool,
}

pub fn measure_summary(mu: &FuzzyMeasure, tol: f64) -> Result<MeasureReport> {
    Ok(MeasureReport {
        summary: summarize(mu)?,
        family: family_report(mu, tol),
        additive: mu.is_additive(tol),
        symmetric: mu.is_symmetric(tol),
        superadditive: mu.is_superadditive(tol),
        subadditive: mu.is_subadditive(tol),
        supermodular: mu.is_supermodular(tol),
        submodular: mu.is_submodular(tol),
    })
}

/// Median with the midpoint convention for even lengths.
pub fn median(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::arg("median of an empty sample"));
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let h = v.len() / 2;
    Ok(if v.len() % 2 == 1 { v[h] } else { (v[h - 1] + v[h]) / 2.0 })
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegralComparison {
    pub x: Vec<f64>,
    /// `(choquet, sugeno, pan)` per sampled measure.
    pub rows: Vec<[f64; 3]>,
    pub medians: [f64; 3],
    pub frac_choquet_ge_sugeno: f64,
    pub frac_sugeno_ge_pan: f64,
}

impl IntegralComparison {
    pub fn series(&self, column: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[column]).collect()
    }

    pub fn to_csv(&self, full_precision: bool) -> String {
        csv_text(
            &["sample", "choquet", "sugeno", "pan"],
            self.rows.iter().enumerate().map(|(k, r)| {
                std::iter::once(k.to_string())
                    .chain(r.iter().map(|v| format_number(*v, full_precision)))
                    .collect()
            }),
        )
    }
}

/// Evaluates all three integrals of `x` over a seeded batch of random measures.
pub fn integral_comparison(x: &[f64], config: &GeneratorConfig) -> Result<IntegralComparison> {
    if x.len() != config.n {
        return Err(Error::arg(format!(
            "input has {} components, configuration has n = {}",
            x.len(),
            config.n
        )));
    }
    let rows = random_batch(config)?
        .iter()
        .map(|mu| Ok([choquet(mu, x)?, sugeno(mu, x)?, pan(mu, x)?]))
        .collect::<Result<Vec<_>>>()?;
    let count = rows.len() as f64;
    let frac = |f: fn(&[f64; 3]) -> bool| rows.iter().filter(|r| f(r)).count() as f64 / count;
    let frac_choquet_ge_sugeno = frac(|r| r[0] >= r[1]);
    let frac_sugeno_ge_pan = frac(|r| r[1] >= r[2]);
    let col = |j: usize| median(&rows.iter().map(|r| r[j]).collect::<Vec<_>>());
    Ok(IntegralComparison {
        x: x.to_vec(),
        medians: [col(0)?, col(1)?, col(2)?],
        rows,
        frac_choquet_ge_sugeno,
        frac_sugeno_ge_pan,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChoquetProfile {
    pub labels: Vec<String>,
    /// `series[k][s]` is the Choquet value of alternative `k` under sample `s`.
    pub series: Vec<Vec<f64>>,
    pub medians: Vec<f64>,
}

impl ChoquetProfile {
    /// Long-format CSV: one row per (sample, alternative).
    pub fn to_csv(&self, full_precision: bool) -> String {
        let samples = self.series.first().map_or(0, Vec::len);
        csv_text(
            &["sample", "alternative", "choquet"],
            (0..samples).flat_map(|s| {
                self.labels.iter().zip(&self.series).map(move |(label, series)| {
                    vec![s.to_string(), label.clone(), format_number(series[s], full_precision)]
                })
            }),
        )
    }
}

/// Choquet values of every normalized alternative under each sampled measure.
pub fn alternatives_choquet_profile(
    ds: &Dataset,
    norm: &Normalization,
    config: &GeneratorConfig,
) -> Result<ChoquetProfile> {
    if ds.is_empty() {
        return Err(Error::arg("dataset has no alternatives"));
    }
    if ds.n() != config.n {
        return Err(Error::arg(format!(
            "dataset has {} criteria, configuration has n = {}",
            ds.n(),
            config.n
        )));
    }
    let inputs = ds.alternatives().iter().map(|a| norm.scores(a)).collect::<Result<Vec<_>>>()?;
    let measures = random_batch(config)?;
    let series = inputs
        .iter()
        .map(|x| measures.iter().map(|mu| choquet(mu, x)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let medians = series.iter().map(|s| median(s)).collect::<Result<Vec<_>>>()?;
    let labels = ds
        .alternatives()
        .iter()
        .enumerate()
        .map(|(k, a)| a.label.clone().unwrap_or_else(|| format!("A{}", k + 1)))
        .collect();
    Ok(ChoquetProfile { labels, series, medians })
}
