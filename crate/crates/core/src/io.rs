//! The fuzzy-set file format.
//!
//! A UTF-8 JSON document, one level record per line:
//!
//! ```text
//! {
//!   "format_version": "1",
//!   "space": "real-line",
//!   "levels": [
//!     {"alpha": 0.0, "intervals": [[0.0, 2.0]]},
//!     {"alpha": 1.0, "intervals": [[0.0, 0.0]]}
//!   ]
//! }
//! ```
//!
//! Alphas increase strictly from `0.0` to `1.0`; each record's intervals
//! form a valid [`IntervalUnion`] and records are nested. Levels need not be
//! uniform: loading resamples onto a uniform grid by taking, for each grid
//! level, the record with the smallest stored alpha at or above it.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cutset::{IntervalUnion, SetError};
use crate::fuzzy::{FuzzyError, FuzzySet, LevelGrid};

pub const FORMAT_VERSION: &str = "1";
pub const SPACE: &str = "real-line";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValidationProblem {
    #[error("unsupported format_version {0:?}")]
    Version(String),
    #[error("unsupported space {0:?}")]
    Space(String),
    #[error("no level records")]
    NoLevels,
    #[error("bad alpha: {0}")]
    BadAlpha(String),
    #[error("bad intervals: {0}")]
    BadIntervals(SetError),
    #[error("not contained in the previous level's cut")]
    NestingViolation,
}

#[derive(Debug, Error)]
pub enum FileError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid level record {}: {problem}", record.map_or("(header)".to_string(), |r| r.to_string()))]
    Validation {
        /// Index into `levels`, or `None` for header fields.
        record: Option<usize>,
        problem: ValidationProblem,
    },
    #[error(transparent)]
    Grid(#[from] FuzzyError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub alpha: f64,
    pub intervals: Vec<[f64; 2]>,
}

/// The raw document, before validation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzySetFile {
    pub format_version: String,
    pub space: String,
    pub levels: Vec<LevelRecord>,
}

/// A validated document: strictly increasing alphas with nested cuts.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelTable {
    alphas: Vec<f64>,
    cuts: Vec<IntervalUnion>,
}

fn invalid(record: Option<usize>, problem: ValidationProblem) -> FileError {
    FileError::Validation { record, problem }
}

impl FuzzySetFile {
    pub fn parse(text: &str) -> Result<Self, FileError> {
        serde_json::from_str(text).map_err(|e| FileError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn from_fuzzy_set(u: &FuzzySet) -> Self {
        let grid = u.grid();
        Self {
            format_version: FORMAT_VERSION.into(),
            space: SPACE.into(),
            levels: u
                .cuts()
                .iter()
                .enumerate()
                .map(|(k, cut)| LevelRecord {
                    alpha: grid.level(k),
                    intervals: cut.intervals().iter().map(|&(a, b)| [a, b]).collect(),
                })
                .collect(),
        }
    }

    pub fn validate(&self) -> Result<LevelTable, FileError> {
        if self.format_version != FORMAT_VERSION {
            return Err(invalid(
                None,
                ValidationProblem::Version(self.format_version.clone()),
            ));
        }
        if self.space != SPACE {
            return Err(invalid(None, ValidationProblem::Space(self.space.clone())));
        }
        if self.levels.is_empty() {
            return Err(invalid(None, ValidationProblem::NoLevels));
        }
        let last = self.levels.len() - 1;
        let mut alphas = Vec::with_capacity(self.levels.len());
        let mut cuts: Vec<IntervalUnion> = Vec::with_capacity(self.levels.len());
        for (i, rec) in self.levels.iter().enumerate() {
            let bad_alpha = |why: String| invalid(Some(i), ValidationProblem::BadAlpha(why));
            if i == 0 && rec.alpha != 0.0 {
                return Err(bad_alpha(format!(
                    "first alpha must be 0.0, got {}",
                    rec.alpha
                )));
            }
            if i == last && rec.alpha != 1.0 {
                return Err(bad_alpha(format!(
                    "last alpha must be 1.0, got {}",
                    rec.alpha
                )));
            }
            if let Some(&prev) = alphas.last() {
                if rec.alpha <= prev {
                    return Err(bad_alpha(format!(
                        "{} does not exceed previous {prev}",
                        rec.alpha
                    )));
                }
            }
            let raw: Vec<(f64, f64)> = rec.intervals.iter().map(|&[a, b]| (a, b)).collect();
            let cut = IntervalUnion::new(&raw)
                .map_err(|e| invalid(Some(i), ValidationProblem::BadIntervals(e)))?;
            if cuts.last().is_some_and(|prev| !cut.is_subset_of(prev)) {
                return Err(invalid(Some(i), ValidationProblem::NestingViolation));
            }
            alphas.push(rec.alpha);
            cuts.push(cut);
        }
        Ok(LevelTable { alphas, cuts })
    }

    /// Canonical text: fixed key order, one level per line, shortest
    /// round-trip float formatting.
    pub fn render(&self) -> String {
        let num = |x: f64| serde_json::to_string(&x).expect("finite floats serialize");
        let mut out = String::new();
        out.push_str("{\n");
        let _ = writeln!(
            out,
            "  \"format_version\": {},",
            serde_json::Value::from(self.format_version.as_str())
        );
        let _ = writeln!(
            out,
            "  \"space\": {},",
            serde_json::Value::from(self.space.as_str())
        );
        out.push_str("  \"levels\": [\n");
        for (i, rec) in self.levels.iter().enumerate() {
            let intervals: Vec<String> = rec
                .intervals
                .iter()
                .map(|[a, b]| format!("[{}, {}]", num(*a), num(*b)))
                .collect();
            let sep = if i + 1 == self.levels.len() { "" } else { "," };
            let _ = writeln!(
                out,
                "    {{\"alpha\": {}, \"intervals\": [{}]}}{sep}",
                num(rec.alpha),
                intervals.join(", ")
            );
        }
        out.push_str("  ]\n}\n");
        out
    }
}

impl LevelTable {
    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    /// Resamples onto the uniform grid with `resolution` cells.
    pub fn to_fuzzy_set(&self, resolution: usize) -> Result<FuzzySet, FuzzyError> {
        let grid = LevelGrid::new(resolution)?;
        let cuts = grid
            .levels()
            .map(|alpha| self.cuts[self.alphas.partition_point(|&a| a < alpha)].clone())
            .collect();
        FuzzySet::new(grid, cuts)
    }

    /// The stored levels as a fuzzy set, if they already form a uniform grid.
    pub fn native(&self) -> Option<FuzzySet> {
        let grid = LevelGrid::new(self.alphas.len().checked_sub(1)?).ok()?;
        if grid.levels().zip(&self.alphas).all(|(a, &b)| a == b) {
            FuzzySet::new(grid, self.cuts.clone()).ok()
        } else {
            None
        }
    }
}

pub fn read(path: &Path) -> Result<LevelTable, FileError> {
    let text = fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    FuzzySetFile::parse(&text)?.validate()
}

/// Reads `path` and resamples it onto a grid with `resolution` cells.
pub fn load(path: &Path, resolution: usize) -> Result<FuzzySet, FileError> {
    Ok(read(path)?.to_fuzzy_set(resolution)?)
}

pub fn save(u: &FuzzySet, path: &Path) -> Result<(), FileError> {
    fs::write(path, FuzzySetFile::from_fuzzy_set(u).render()).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })
}
