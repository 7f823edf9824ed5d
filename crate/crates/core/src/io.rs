//! Measure files (JSON), dataset files (CSV) and numeric formatting for exports.
//!
//! A measure file holds the dense value table in ascending mask order, so
//! index 5 (binary `101`) is the subset `{1,3}`:
//!
//! ```json
//! { "n": 2, "values": [0.0, 0.3, 0.5, 1.0], "name": "example" }
//! ```
//!
//! An optional `labels` array mirrors `values` with human-readable subset
//! names; it is written on request and ignored (beyond a length check) on load.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fitting::{Alternative, Dataset};
use crate::lattice::{FuzzyMeasure, LabelMode, SetFunction, Universe};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureFile {
    pub n: usize,
    pub values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl MeasureFile {
    pub fn from_set_function(sf: &SetFunction, name: Option<String>, labels: Option<LabelMode>) -> Self {
        MeasureFile {
            n: sf.n(),
            values: sf.values().to_vec(),
            name,
            labels: labels.map(|mode| sf.universe().subsets().map(|a| a.label(mode)).collect()),
        }
    }

    pub fn from_measure(mu: &FuzzyMeasure, name: Option<String>, labels: Option<LabelMode>) -> Self {
        Self::from_set_function(mu.as_set_function(), name, labels)
    }

    pub fn to_set_function(&self) -> Result<SetFunction> {
        let u = Universe::new(self.n)?;
        if let Some(labels) = &self.labels {
            if labels.len() != u.size() {
                return Err(Error::arg(format!(
                    "labels has {} entries, expected {}",
                    labels.len(),
                    u.size()
                )));
            }
        }
        SetFunction::new(u, self.values.clone())
    }

    pub fn to_measure(&self, tol: f64) -> Result<FuzzyMeasure> {
        FuzzyMeasure::new(self.to_set_function()?, tol)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("measure files always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

pub fn read_measure_file(path: &Path) -> Result<MeasureFile> {
    MeasureFile::from_json(&fs::read_to_string(path)?)
}

/// Reads and validates a measure at `tol`.
pub fn load_measure(path: &Path, tol: f64) -> Result<FuzzyMeasure> {
    read_measure_file(path)?.to_measure(tol)
}

pub fn save_measure(path: &Path, file: &MeasureFile) -> Result<()> {
    let mut text = file.to_json();
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

/// Parses a dataset: a header row, then `id, score_1, ..., score_n, desired`.
pub fn parse_dataset(text: &str) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::Parse {
            line: 1,
            field: "header".into(),
            message: e.to_string(),
        })?
        .clone();
    if headers.len() < 4 {
        return Err(Error::Parse {
            line: 1,
            field: "header".into(),
            message: format!(
                "expected an id column, at least two score columns and a desired column; found {} columns",
                headers.len()
            ),
        });
    }
    let n = headers.len() - 2;
    let mut alternatives = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line() as usize),
            field: "record".into(),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let number = |col: usize| -> Result<f64> {
            let raw = &record[col];
            raw.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| Error::Parse {
                line,
                field: headers[col].to_string(),
                message: format!("`{raw}` is not a finite number"),
            })
        };
        let scores = (1..=n).map(number).collect::<Result<Vec<_>>>()?;
        let desired = number(n + 1)?;
        let label = Some(record[0].to_string()).filter(|s| !s.is_empty());
        alternatives.push(Alternative { label, scores, desired });
    }
    Dataset::new(n, alternatives)
}

pub fn load_dataset(path: &Path) -> Result<Dataset> {
    parse_dataset(&fs::read_to_string(path)?)
}

/// Formats with six significant digits (trailing zeros trimmed), or with the
/// shortest round-trip representation when `full` is set.
pub fn format_number(v: f64, full: bool) -> String {
    if full || !v.is_finite() {
        return format!("{v}");
    }
    if v == 0.0 {
        return "0".to_string();
    }
    let magnitude = v.abs().log10().floor() as i32;
    if !(-5..6).contains(&magnitude) {
        let s = format!("{v:.5e}");
        let (mantissa, exp) = s.split_once('e').unwrap_or((&s, "0"));
        let mantissa = trim_zeros(mantissa);
        return format!("{mantissa}e{exp}");
    }
    let decimals = (5 - magnitude).max(0) as usize;
    let s = format!("{v:.decimals$}");
    let s = trim_zeros(&s);
    if s == "-0" {
        "0".to_string()
    } else {
        s
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// Builds CSV text from a header and rows of already-formatted cells.
pub fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}
