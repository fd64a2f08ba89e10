//! CSV emission with a JSON sidecar per series.
//!
//! Values are serialized with 17 significant digits so a re-parse recovers
//! the in-memory doubles exactly; the sidecar carries the parameter echo and
//! run provenance that a bare CSV cannot.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::harness::SweepSeries;

/// Reproducibility metadata attached to every emitted series.
#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
}

impl Provenance {
    pub fn new() -> Self {
        Provenance {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed: None,
            n: None,
        }
    }
}

impl Default for Provenance {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Serialize)]
struct SeriesDocument<'a> {
    #[serde(flatten)]
    series: &'a SweepSeries,
    provenance: &'a Provenance,
}

/// 17-significant-digit decimal form; round-trips any finite f64.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn file_stem(label: &str) -> String {
    label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || matches!(c, '.' | '-' | '_') { c } else { '_' })
        .collect()
}

/// Writes one `<label>.csv` and one `<label>.json` per series under `dir`,
/// creating it if needed. Returns the paths written.
pub fn write_series(
    dir: &Path,
    series: &[SweepSeries],
    provenance: &Provenance,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::with_capacity(series.len() * 2);
    for s in series {
        let stem = file_stem(&s.label);
        let (x_name, y_name) = s.kind.columns();

        let csv_path = dir.join(format!("{stem}.csv"));
        let mut csv = fs::File::create(&csv_path)?;
        writeln!(csv, "{x_name},{y_name}")?;
        for &(x, y) in &s.points {
            writeln!(csv, "{},{}", format_float(x), format_float(y))?;
        }
        written.push(csv_path);

        let json_path = dir.join(format!("{stem}.json"));
        let doc = SeriesDocument { series: s, provenance };
        fs::write(&json_path, serde_json::to_string_pretty(&doc)?)?;
        written.push(json_path);
    }
    Ok(written)
}

/// Reads back a series CSV written by [`write_series`].
pub fn parse_series_csv(path: &Path) -> Result<Vec<(f64, f64)>> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    lines
        .next()
        .ok_or_else(|| Error::domain(format!("{}: empty file", path.display())))?;
    lines
        .map(|line| {
            let (x, y) = line
                .split_once(',')
                .ok_or_else(|| Error::domain(format!("{}: bad row `{line}`", path.display())))?;
            let parse = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| Error::domain(format!("{}: bad number `{s}`", path.display())))
            };
            Ok((parse(x)?, parse(y)?))
        })
        .collect()
}
