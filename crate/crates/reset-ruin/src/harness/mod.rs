//! Verification harness: bisection recovery of critical weights, the
//! reference verification tables, figure-data sweeps and their CSV/JSON
//! emission.

pub mod bisect;
pub mod output;
pub mod sweeps;
pub mod tables;

pub use bisect::{bisect_critical_weight, bisect_critical_weight_with, BisectionObjective};
pub use output::{parse_series_csv, write_series, Provenance};
pub use sweeps::{profile_q_vs_z, sweep_c_vs_gamma, universality_cstar_vs_p};
pub use tables::{table1_report, table2_report, Table2Report, Table2Row};

use serde::Serialize;

use crate::error::{Error, Result};

/// One row of the closed-form verification table.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationRow {
    pub a: usize,
    pub p: f64,
    pub sites: Vec<usize>,
    /// Critical weight of the pair's lower site, from the closed form.
    pub pi_star_theory: f64,
    /// Bisection recovery of the same weight; absent for the degenerate row.
    pub pi_star_bisected: Option<f64>,
    pub c_star_theory: f64,
    /// Coupling constant measured through the solver at the bisected weight
    /// (at the theoretical weight for the degenerate row).
    pub c_star_measured: f64,
    /// `|c_star_measured - c_star_theory|`; the bisection-protocol error
    /// `|pi_star_bisected - pi_star_theory|` is reported separately.
    pub abs_error: f64,
    pub pi_abs_error: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    pub degenerate: bool,
}

/// What a sweep series plots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SweepKind {
    #[serde(rename = "C_vs_gamma")]
    CVsGamma,
    #[serde(rename = "q_vs_z")]
    QVsZ,
    #[serde(rename = "Cstar_vs_p")]
    CstarVsP,
}

impl SweepKind {
    /// CSV header for this kind of series.
    pub fn columns(&self) -> (&'static str, &'static str) {
        match self {
            SweepKind::CVsGamma => ("gamma", "C"),
            SweepKind::QVsZ => ("z", "q"),
            SweepKind::CstarVsP => ("p", "C_star"),
        }
    }
}

/// One data series destined for a CSV file plus a JSON sidecar.
#[derive(Debug, Clone, Serialize)]
pub struct SweepSeries {
    pub kind: SweepKind,
    /// Series label, used as the file stem.
    pub label: String,
    /// Echo of the inputs that produced the series.
    pub parameters: serde_json::Value,
    pub points: Vec<(f64, f64)>,
}

impl SweepSeries {
    /// Validates that points are sorted by x with finite values.
    pub fn new(
        kind: SweepKind,
        label: String,
        parameters: serde_json::Value,
        points: Vec<(f64, f64)>,
    ) -> Result<Self> {
        for pair in points.windows(2) {
            if pair[1].0 <= pair[0].0 {
                return Err(Error::domain(format!(
                    "series {label}: x values not strictly increasing"
                )));
            }
        }
        if points.iter().any(|&(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::domain(format!("series {label}: non-finite point")));
        }
        Ok(SweepSeries { kind, label, parameters, points })
    }
}

/// Parses a `LO:STEP:HI` grid specification into an inclusive grid.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::domain(format!("grid `{spec}` is not LO:STEP:HI")));
    }
    let parse = |s: &str| -> Result<f64> {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Error::domain(format!("`{s}` is not a number in grid `{spec}`")))
    };
    let (lo, step, hi) = (parse(parts[0])?, parse(parts[1])?, parse(parts[2])?);
    if step.is_nan() || step <= 0.0 || hi < lo {
        return Err(Error::domain(format!("grid `{spec}` is empty or runs backwards")));
    }
    let mut grid = Vec::new();
    let mut k = 0u32;
    loop {
        let x = lo + step * k as f64;
        if x > hi + step * 0.5 {
            break;
        }
        grid.push(x.min(hi));
        k += 1;
    }
    Ok(grid)
}

/// Parses `"1,9;2,8"` into site pairs.
pub fn parse_pairs(spec: &str) -> Result<Vec<(usize, usize)>> {
    spec.split(';')
        .map(|chunk| {
            let mut it = chunk.split(',');
            let parse = |s: Option<&str>| -> Result<usize> {
                s.map(str::trim)
                    .filter(|s| !s.is_empty())
                    .ok_or_else(|| Error::domain(format!("bad pair in `{spec}`")))?
                    .parse::<usize>()
                    .map_err(|_| Error::domain(format!("bad pair in `{spec}`")))
            };
            let z1 = parse(it.next())?;
            let z2 = parse(it.next())?;
            if it.next().is_some() {
                return Err(Error::domain(format!("pair with more than two sites in `{spec}`")));
            }
            Ok((z1, z2))
        })
        .collect()
}
