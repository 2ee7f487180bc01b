//! The UCI Cleveland heart-disease table: raw ingestion, row-deletion
//! cleaning with categorical recoding, and cutpoint discretization.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::table::DataTable;
use crate::error::{Error, Result};
use crate::variable::Variable;

/// Column names of the processed file, in file order.
pub const RAW_COLUMNS: [&str; 14] = [
    "age", "sex", "cp", "trestbps", "chol", "fbs", "restecg", "thalach", "exang", "oldpeak", "slope", "ca", "thal",
    "target",
];

pub const MISSING: &str = "?";

/// Name of the class variable after cleaning.
pub const TARGET: &str = "target";

/// Unparsed records; cells are decimal strings or [`MISSING`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawTable {
    pub rows: Vec<Vec<String>>,
}

impl RawTable {
    pub fn parse(text: &str) -> Result<Self> {
        Self::from_reader(text.as_bytes())
    }

    pub fn from_reader<R: std::io::Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .from_reader(reader);
        let mut rows = Vec::new();
        for rec in rdr.records() {
            let rec = rec?;
            let line = rec.position().map_or(rows.len() + 1, |p| p.line() as usize);
            if rec.len() != RAW_COLUMNS.len() {
                return Err(Error::MalformedRow {
                    line,
                    expected: RAW_COLUMNS.len(),
                    found: rec.len(),
                });
            }
            rows.push(rec.iter().map(|c| c.trim().to_string()).collect());
        }
        Ok(RawTable { rows })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            out.push_str(&r.join(","));
            out.push('\n');
        }
        out
    }
}

/// Load the comma-separated processed Cleveland file.
pub fn load_raw(path: impl AsRef<Path>) -> Result<RawTable> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    RawTable::from_reader(file)
}

/// One complete patient record after cleaning. Categorical fields hold
/// 0-based state indices; continuous fields keep their raw values.
#[derive(Clone, Debug, PartialEq)]
pub struct CleanRecord {
    pub age: f64,
    pub sex: usize,
    pub cp: usize,
    pub trestbps: f64,
    pub chol: f64,
    pub fbs: usize,
    pub restecg: usize,
    pub thalach: f64,
    pub exang: usize,
    pub oldpeak: f64,
    pub slope: usize,
    pub ca: usize,
    pub thal: usize,
    pub target: usize,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CleanTable {
    pub records: Vec<CleanRecord>,
}

impl CleanTable {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Re-encode with the raw codes of the processed file.
    pub fn to_raw(&self) -> RawTable {
        let f = |x: f64| format!("{x:?}");
        let code = |domain: &[i64], i: usize| format!("{:?}", domain[i] as f64);
        RawTable {
            rows: self
                .records
                .iter()
                .map(|r| {
                    vec![
                        f(r.age),
                        code(&SEX, r.sex),
                        code(&CP, r.cp),
                        f(r.trestbps),
                        f(r.chol),
                        code(&FBS, r.fbs),
                        code(&RESTECG, r.restecg),
                        f(r.thalach),
                        code(&EXANG, r.exang),
                        f(r.oldpeak),
                        code(&SLOPE, r.slope),
                        code(&CA, r.ca),
                        code(&THAL, r.thal),
                        r.target.to_string(),
                    ]
                })
                .collect(),
        }
    }
}

// Raw code domains; a code's position is its recoded state index.
const SEX: [i64; 2] = [0, 1];
const CP: [i64; 4] = [1, 2, 3, 4];
const FBS: [i64; 2] = [0, 1];
const RESTECG: [i64; 3] = [0, 1, 2];
const EXANG: [i64; 2] = [0, 1];
const SLOPE: [i64; 3] = [1, 2, 3];
const CA: [i64; 4] = [0, 1, 2, 3];
const THAL: [i64; 3] = [3, 6, 7];

/// Drop rows with a missing cell, binarize the target (any severity from
/// one to four becomes 1) and recode every categorical attribute to
/// contiguous indices in ascending order of raw code.
pub fn clean(raw: &RawTable) -> Result<CleanTable> {
    let mut records = Vec::with_capacity(raw.len());
    for (line, row) in raw.rows.iter().enumerate() {
        if row.iter().any(|c| c == MISSING) {
            continue;
        }
        let line = line + 1;
        let num = |col: usize| -> Result<f64> {
            row[col]
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::InvalidNumber {
                    line,
                    column: RAW_COLUMNS[col].to_string(),
                    value: row[col].clone(),
                })
        };
        let cat = |col: usize, domain: &[i64]| -> Result<usize> {
            let v = num(col)?;
            domain
                .iter()
                .position(|&d| d as f64 == v)
                .ok_or_else(|| Error::UnknownCategory {
                    column: RAW_COLUMNS[col].to_string(),
                    value: row[col].clone(),
                })
        };
        let target = match cat(13, &[0, 1, 2, 3, 4])? {
            0 => 0,
            _ => 1,
        };
        records.push(CleanRecord {
            age: num(0)?,
            sex: cat(1, &SEX)?,
            cp: cat(2, &CP)?,
            trestbps: num(3)?,
            chol: num(4)?,
            fbs: cat(5, &FBS)?,
            restecg: cat(6, &RESTECG)?,
            thalach: num(7)?,
            exang: cat(8, &EXANG)?,
            oldpeak: num(9)?,
            slope: cat(10, &SLOPE)?,
            ca: cat(11, &CA)?,
            thal: cat(12, &THAL)?,
            target,
        });
    }
    Ok(CleanTable { records })
}

/// What the thalach thresholds are compared against.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThalachBasis {
    /// The recorded maximum heart rate.
    #[default]
    Raw,
    /// Recorded maximum heart rate minus the age-predicted maximum
    /// `220 - age`.
    AgePredictedMax,
}

/// Per-attribute ascending thresholds. A value `v` falls in the first bin
/// `i` with `v <= thresholds[i]`, or in the last bin otherwise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutpointConfig {
    pub age: Vec<f64>,
    pub trestbps: Vec<f64>,
    pub chol: Vec<f64>,
    pub thalach: Vec<f64>,
    pub oldpeak: Vec<f64>,
    #[serde(default)]
    pub thalach_basis: ThalachBasis,
}

impl Default for CutpointConfig {
    /// Reproduces the bin frequencies of the published CPTs on the 297-row
    /// table.
    fn default() -> Self {
        CutpointConfig {
            age: vec![45.0, 64.0],
            trestbps: vec![120.0, 140.0],
            chol: vec![200.0, 240.0],
            thalach: vec![-20.0],
            oldpeak: vec![2.0],
            thalach_basis: ThalachBasis::AgePredictedMax,
        }
    }
}

impl CutpointConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let cfg: CutpointConfig = serde_json::from_str(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    fn attributes(&self) -> [(&'static str, &[f64], usize); 5] {
        [
            ("age", &self.age, 3),
            ("trestbps", &self.trestbps, 3),
            ("chol", &self.chol, 3),
            ("thalach", &self.thalach, 2),
            ("oldpeak", &self.oldpeak, 2),
        ]
    }

    pub fn validate(&self) -> Result<()> {
        for (name, th, bins) in self.attributes() {
            if th.len() + 1 != bins {
                return Err(Error::NonMonotoneCutpoints(
                    name.into(),
                    format!("{bins} bins need {} thresholds, got {}", bins - 1, th.len()),
                ));
            }
            if th.iter().any(|t| !t.is_finite()) {
                return Err(Error::NonMonotoneCutpoints(name.into(), "non-finite threshold".into()));
            }
            if th.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::NonMonotoneCutpoints(
                    name.into(),
                    format!("{th:?} is not strictly increasing"),
                ));
            }
        }
        Ok(())
    }
}

pub(crate) fn bin(value: f64, thresholds: &[f64]) -> usize {
    thresholds.iter().position(|&t| value <= t).unwrap_or(thresholds.len())
}

/// Discretized variable names, in column order.
pub const COLUMNS: [&str; 14] = [
    "ageC",
    "sex",
    "cp",
    "trestbpsC",
    "cholC",
    "fbs",
    "restecg",
    "thalachC",
    "exang",
    "oldpeakC",
    "slope",
    "ca",
    "thal",
    "target",
];

/// Variables of the discretized table. States are `0..cardinality`.
pub fn heart_schema() -> Vec<Variable> {
    const CARDINALITY: [usize; 14] = [3, 2, 4, 3, 3, 2, 3, 2, 2, 2, 3, 4, 3, 2];
    COLUMNS
        .iter()
        .zip(CARDINALITY)
        .map(|(n, c)| Variable::indexed(*n, c).expect("cardinality >= 2"))
        .collect()
}

/// Bin the five continuous attributes; the result is fully categorical and
/// keeps row order.
pub fn discretize(table: &CleanTable, cfg: &CutpointConfig) -> Result<DataTable> {
    cfg.validate()?;
    let rows = table
        .records
        .iter()
        .map(|r| {
            let heart_rate = match cfg.thalach_basis {
                ThalachBasis::Raw => r.thalach,
                ThalachBasis::AgePredictedMax => r.thalach - (220.0 - r.age),
            };
            vec![
                bin(r.age, &cfg.age),
                r.sex,
                r.cp,
                bin(r.trestbps, &cfg.trestbps),
                bin(r.chol, &cfg.chol),
                r.fbs,
                r.restecg,
                bin(heart_rate, &cfg.thalach),
                r.exang,
                bin(r.oldpeak, &cfg.oldpeak),
                r.slope,
                r.ca,
                r.thal,
                r.target,
            ]
        })
        .collect();
    DataTable::new(heart_schema(), rows)
}
