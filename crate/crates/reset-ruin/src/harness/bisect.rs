//! Bisection recovery of the critical weight on a two-site symmetric pair.
//!
//! The coupling constant is monotone in gamma on either side of the critical
//! weight and flat exactly there, so the end-to-end difference
//! `C(pi1, 0.95) - C(pi1, 0.05)` is sign-definite on each side of `pi1*` and
//! crosses zero at it. That difference carries the largest
//! signal-to-rounding ratio and is the default objective; a central
//! finite-difference derivative at gamma = 0.5 is available for comparison.

use crate::critical::check_symmetry;
use crate::error::{Error, Result};
use crate::renewal::solve_discounted;
use crate::walk::{ResetSpec, WalkSpec};

/// Lower gamma endpoint of the end-to-end objective.
pub const BISECT_GAMMA_LO: f64 = 0.05;
/// Upper gamma endpoint of the end-to-end objective.
pub const BISECT_GAMMA_HI: f64 = 0.95;
/// Half-width of the central difference used by the derivative objective.
const DERIVATIVE_STEP: f64 = 1e-3;
/// Margin keeping the bisection bracket inside the open weight interval.
const BRACKET_MARGIN: f64 = 1e-9;

/// Objective whose root is the critical weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BisectionObjective {
    /// `C(0.95) - C(0.05)`.
    #[default]
    GammaSpan,
    /// Central difference of `C` at gamma = 0.5.
    DerivativeAtHalf,
}

/// Recovers the critical weight of the pair's lower site with the default
/// objective. Bracket width at return is at most `tol`.
pub fn bisect_critical_weight(walk: &WalkSpec, sites: &[usize], tol: f64) -> Result<f64> {
    bisect_critical_weight_with(walk, sites, tol, BisectionObjective::GammaSpan)
}

/// Same as [`bisect_critical_weight`] with an explicit objective.
pub fn bisect_critical_weight_with(
    walk: &WalkSpec,
    sites: &[usize],
    tol: f64,
    objective: BisectionObjective,
) -> Result<f64> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::domain(format!("tolerance {tol} must be positive")));
    }
    let partition = check_symmetry(walk, sites).ok_or_else(|| {
        Error::Symmetry(format!("bisection needs a symmetric pair, got {sites:?}"))
    })?;
    if partition.pairs.len() != 1 || partition.neutral.is_some() {
        return Err(Error::Symmetry(format!(
            "bisection needs exactly one mirror pair, got {sites:?}"
        )));
    }
    if walk.is_unbiased() {
        return Err(Error::Degenerate(
            "p = 1/2: the critical weight is 1/2 exactly by symmetry and the \
             gamma dependence carries no usable signal"
                .into(),
        ));
    }
    let (low_site, high_site) = partition.pairs[0];

    let coupling_at = |pi1: f64, gamma: f64| -> Result<f64> {
        let reset = ResetSpec::new(walk, &[low_site, high_site], &[pi1, 1.0 - pi1])?;
        Ok(solve_discounted(walk, gamma)?.coupling(&reset).c)
    };
    let objective_fn = |pi1: f64| -> Result<f64> {
        match objective {
            BisectionObjective::GammaSpan => {
                Ok(coupling_at(pi1, BISECT_GAMMA_HI)? - coupling_at(pi1, BISECT_GAMMA_LO)?)
            }
            BisectionObjective::DerivativeAtHalf => {
                let hi = coupling_at(pi1, 0.5 + DERIVATIVE_STEP)?;
                let lo = coupling_at(pi1, 0.5 - DERIVATIVE_STEP)?;
                Ok((hi - lo) / (2.0 * DERIVATIVE_STEP))
            }
        }
    };
    bisect_root(objective_fn, BRACKET_MARGIN, 1.0 - BRACKET_MARGIN, tol)
}

/// Plain bisection on `[lo, hi]`; the objective must change sign.
fn bisect_root(
    objective: impl Fn(f64) -> Result<f64>,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<f64> {
    let mut lo = lo;
    let mut hi = hi;
    let f_lo = objective(lo)?;
    let f_hi = objective(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoSignChange { lo, hi });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = objective(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_hi.signum() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
