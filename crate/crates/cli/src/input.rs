//! Point-set ingestion: a JSON document or plain rows of numbers.

use std::fs;
use std::path::Path;

use fpp_core::{NormSpec, PointSet, Vector};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub dim: usize,
    pub norm: String,
    pub points: Vec<Vec<f64>>,
    #[serde(default)]
    pub base: Option<Vec<f64>>,
    #[serde(default)]
    pub delta: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct Problem {
    pub set: PointSet,
    pub base: Vector,
    pub delta: Option<f64>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

/// Parses numbers separated by commas and/or whitespace.
pub fn parse_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| usage(format!("not a number: {t:?}")))
        })
        .collect()
}

pub fn load(path: &Path, norm_override: Option<NormSpec>) -> Result<Problem, CliError> {
    parse(&read(path)?, norm_override)
}

pub fn parse(text: &str, norm_override: Option<NormSpec>) -> Result<Problem, CliError> {
    if text.trim_start().starts_with('{') {
        let doc: InputDocument = serde_json::from_str(text)
            .map_err(|e| usage(format!("invalid input document: {e}")))?;
        from_document(doc, norm_override)
    } else {
        from_rows(text, norm_override.unwrap_or(NormSpec::L2))
    }
}

fn from_document(doc: InputDocument, norm_override: Option<NormSpec>) -> Result<Problem, CliError> {
    let norm = match norm_override {
        Some(n) => n,
        None => doc
            .norm
            .parse::<NormSpec>()
            .map_err(|e| usage(e.to_string()))?,
    };
    if doc.points.is_empty() {
        return Err(usage("points list is empty"));
    }
    if let Some((i, p)) = doc
        .points
        .iter()
        .enumerate()
        .find(|(_, p)| p.len() != doc.dim)
    {
        return Err(usage(format!(
            "point {i} has length {}, expected dim = {}",
            p.len(),
            doc.dim
        )));
    }
    if let Some(d) = doc.delta {
        if !(d.is_finite() && d > 0.0) {
            return Err(usage(format!("delta must be positive, got {d}")));
        }
    }
    let base = match doc.base {
        Some(b) if b.len() != doc.dim => {
            return Err(usage(format!(
                "base has length {}, expected dim = {}",
                b.len(),
                doc.dim
            )))
        }
        Some(b) => Vector::new(b).map_err(|e| usage(e.to_string()))?,
        None => Vector::zeros(doc.dim),
    };
    let set = PointSet::from_rows(doc.points, norm).map_err(|e| usage(e.to_string()))?;
    Ok(Problem {
        set,
        base,
        delta: doc.delta,
    })
}

fn from_rows(text: &str, norm: NormSpec) -> Result<Problem, CliError> {
    let rows = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_list)
        .collect::<Result<Vec<_>, _>>()?;
    if rows.is_empty() {
        return Err(usage("points list is empty"));
    }
    let dim = rows[0].len();
    let set = PointSet::from_rows(rows, norm).map_err(|e| usage(e.to_string()))?;
    Ok(Problem {
        set,
        base: Vector::zeros(dim),
        delta: None,
    })
}
