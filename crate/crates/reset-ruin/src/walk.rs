//! Domain types for the absorbed walk and its reset distribution, plus the
//! classical (no-resetting) ruin probability used as the invariant reference.

use serde::Serialize;

use crate::error::{Error, Result};

/// Tolerance on `|sum(weights) - 1|` accepted by [`ResetSpec::new`]. Callers
/// typically pass decimal approximations of rationals such as 4/13, so the
/// weights are renormalized to sum to one after validation.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Half-width of the interval around 1/2 treated as the unbiased walk.
/// The rational ruin formula is 0/0 at p = 1/2, so a dedicated branch is used.
pub const UNBIASED_TOL: f64 = 1e-12;

/// A biased nearest-neighbour walk on `{0, ..., a}` with absorbing ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WalkSpec {
    a: usize,
    p: f64,
    q: f64,
}

impl WalkSpec {
    /// Validates the domain size and up-step probability.
    pub fn new(a: usize, p: f64) -> Result<Self> {
        if a < 2 {
            return Err(Error::domain(format!("domain size a = {a} must be >= 2")));
        }
        if !p.is_finite() || p <= 0.0 || p >= 1.0 {
            return Err(Error::domain(format!(
                "up-step probability p = {p} must lie strictly inside (0, 1)"
            )));
        }
        Ok(WalkSpec { a, p, q: 1.0 - p })
    }

    /// Domain size: the walk lives on sites `0..=a`.
    pub fn a(&self) -> usize {
        self.a
    }

    /// Up-step probability.
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Down-step probability, exactly `1 - p`.
    pub fn q(&self) -> f64 {
        self.q
    }

    /// True when `p` is within [`UNBIASED_TOL`] of 1/2.
    pub fn is_unbiased(&self) -> bool {
        (self.p - 0.5).abs() < UNBIASED_TOL
    }

    /// `ln(q/p)`, the log bias ratio shared by the closed-form expressions.
    pub fn log_ratio(&self) -> f64 {
        self.q.ln() - self.p.ln()
    }

    /// Interior sites `1..=a-1`.
    pub fn interior(&self) -> impl Iterator<Item = usize> {
        1..self.a
    }
}

/// A probability distribution over interior reset sites.
///
/// Sites are stored sorted; weights are renormalized to sum to one exactly
/// after the `1e-12` validation so downstream averages see a true
/// distribution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResetSpec {
    sites: Vec<usize>,
    weights: Vec<f64>,
    #[serde(skip)]
    cumulative: Vec<f64>,
}

impl ResetSpec {
    /// Validates sites (distinct, interior) and weights (non-negative,
    /// summing to one within [`WEIGHT_SUM_TOL`]).
    pub fn new(walk: &WalkSpec, sites: &[usize], weights: &[f64]) -> Result<Self> {
        if sites.is_empty() {
            return Err(Error::domain("at least one reset site is required"));
        }
        if sites.len() != weights.len() {
            return Err(Error::domain(format!(
                "{} sites but {} weights",
                sites.len(),
                weights.len()
            )));
        }
        let mut paired: Vec<(usize, f64)> =
            sites.iter().copied().zip(weights.iter().copied()).collect();
        paired.sort_by_key(|&(z, _)| z);
        for window in paired.windows(2) {
            if window[0].0 == window[1].0 {
                return Err(Error::domain(format!("duplicate reset site {}", window[0].0)));
            }
        }
        for &(z, w) in &paired {
            if z == 0 || z >= walk.a() {
                return Err(Error::domain(format!(
                    "reset site {z} is not interior to (0, {})",
                    walk.a()
                )));
            }
            if !w.is_finite() || w < 0.0 {
                return Err(Error::domain(format!("weight {w} at site {z} is negative")));
            }
        }
        let sum: f64 = paired.iter().map(|&(_, w)| w).sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::domain(format!(
                "weights sum to {sum}, off from 1 by more than {WEIGHT_SUM_TOL:e}"
            )));
        }
        let sites: Vec<usize> = paired.iter().map(|&(z, _)| z).collect();
        let weights: Vec<f64> = paired.iter().map(|&(_, w)| w / sum).collect();
        let mut cumulative = Vec::with_capacity(weights.len());
        let mut acc = 0.0;
        for &w in &weights {
            acc += w;
            cumulative.push(acc);
        }
        Ok(ResetSpec { sites, weights, cumulative })
    }

    /// Point mass at a single interior site.
    pub fn delta(walk: &WalkSpec, site: usize) -> Result<Self> {
        Self::new(walk, &[site], &[1.0])
    }

    pub fn sites(&self) -> &[usize] {
        &self.sites
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    /// Draws a reset site from a uniform variate in `[0, 1)`.
    pub(crate) fn site_for_uniform(&self, u: f64) -> usize {
        for (i, &c) in self.cumulative.iter().enumerate() {
            if u < c {
                return self.sites[i];
            }
        }
        *self.sites.last().expect("non-empty by construction")
    }

    /// Weighted average of `values[z]` over the reset sites.
    pub(crate) fn average(&self, values: &[f64]) -> f64 {
        self.sites
            .iter()
            .zip(&self.weights)
            .map(|(&z, &w)| w * values[z])
            .sum()
    }
}

/// Classical ruin probability without resetting, starting from `z`.
///
/// `z` is real-valued so the half-integer midpoint `a/2` of odd domains can
/// be evaluated by analytic continuation; every other operation in the crate
/// takes integer positions.
pub fn classical_ruin(walk: &WalkSpec, z: f64) -> Result<f64> {
    let a = walk.a() as f64;
    if !z.is_finite() || z < 0.0 || z > a {
        return Err(Error::domain(format!("position z = {z} outside [0, {a}]")));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if z == a {
        return Ok(0.0);
    }
    if walk.is_unbiased() {
        return Ok(1.0 - z / a);
    }
    let r = walk.q() / walk.p();
    Ok((r.powf(z) - r.powf(a)) / (1.0 - r.powf(a)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn walk_construction() {
        let w = WalkSpec::new(10, 0.6).unwrap();
        assert_eq!(w.a(), 10);
        assert_eq!(w.p(), 0.6);
        assert_eq!(w.q(), 1.0 - 0.6);
        assert!(WalkSpec::new(1, 0.6).is_err());
        assert!(WalkSpec::new(10, 1.0).is_err());
        assert!(WalkSpec::new(10, 0.0).is_err());
        assert!(WalkSpec::new(10, f64::NAN).is_err());
    }

    #[test]
    fn reset_validation() {
        let w = WalkSpec::new(10, 0.6).unwrap();
        let r = ResetSpec::new(&w, &[3, 7], &[4.0 / 13.0, 9.0 / 13.0]).unwrap();
        assert_eq!(r.sites(), &[3, 7]);
        assert!((r.weights().iter().sum::<f64>() - 1.0).abs() < 1e-15);

        assert!(ResetSpec::new(&w, &[0, 7], &[0.5, 0.5]).is_err());
        assert!(ResetSpec::new(&w, &[3, 10], &[0.5, 0.5]).is_err());
        assert!(ResetSpec::new(&w, &[3, 3], &[0.5, 0.5]).is_err());
        assert!(ResetSpec::new(&w, &[3, 7], &[0.5, 0.4]).is_err());
        assert!(ResetSpec::new(&w, &[3, 7], &[-0.1, 1.1]).is_err());
        assert!(ResetSpec::new(&w, &[], &[]).is_err());
    }

    #[test]
    fn reset_sorts_sites() {
        let w = WalkSpec::new(10, 0.6).unwrap();
        let r = ResetSpec::new(&w, &[7, 3], &[0.25, 0.75]).unwrap();
        assert_eq!(r.sites(), &[3, 7]);
        assert_eq!(r.weights(), &[0.75, 0.25]);
    }

    #[test]
    fn classical_table_values() {
        let w = WalkSpec::new(10, 0.6).unwrap();
        let v = classical_ruin(&w, 5.0).unwrap();
        assert!((v - 0.1163636364).abs() <= 1e-9);
        assert!((v - 32.0 / 275.0).abs() <= 1e-15);

        let w = WalkSpec::new(10, 0.5).unwrap();
        assert_eq!(classical_ruin(&w, 5.0).unwrap(), 0.5);

        let w = WalkSpec::new(9, 0.7).unwrap();
        assert!((classical_ruin(&w, 4.5).unwrap() - 0.0216081357).abs() <= 1e-9);
    }

    #[test]
    fn classical_boundaries_exact() {
        for &(a, p) in &[(2usize, 0.3), (10, 0.6), (33, 0.5), (64, 0.9)] {
            let w = WalkSpec::new(a, p).unwrap();
            assert_eq!(classical_ruin(&w, 0.0).unwrap(), 1.0);
            assert_eq!(classical_ruin(&w, a as f64).unwrap(), 0.0);
        }
    }

    #[test]
    fn classical_rejects_outside_domain() {
        let w = WalkSpec::new(10, 0.6).unwrap();
        assert!(classical_ruin(&w, -0.1).is_err());
        assert!(classical_ruin(&w, 10.1).is_err());
        assert!(classical_ruin(&w, f64::NAN).is_err());
    }

    #[test]
    fn classical_branch_consistency_near_half() {
        let eps = 1e-8;
        for z in [1.0, 3.0, 5.0, 9.0] {
            let above = classical_ruin(&WalkSpec::new(10, 0.5 + eps).unwrap(), z).unwrap();
            let below = classical_ruin(&WalkSpec::new(10, 0.5 - eps).unwrap(), z).unwrap();
            let at = classical_ruin(&WalkSpec::new(10, 0.5).unwrap(), z).unwrap();
            assert!((above - at).abs() <= 1e-6, "z={z} above diff {}", (above - at).abs());
            assert!((below - at).abs() <= 1e-6, "z={z} below diff {}", (below - at).abs());
        }
    }

    #[test]
    fn classical_midpoint_factorization() {
        for &(a, p) in &[(10usize, 0.6), (9, 0.7), (12, 0.3), (8, 0.45)] {
            let w = WalkSpec::new(a, p).unwrap();
            let r = w.q() / w.p();
            let half = a as f64 / 2.0;
            let expected = r.powf(half) / (1.0 + r.powf(half));
            let got = classical_ruin(&w, half).unwrap();
            assert!((got - expected).abs() <= 1e-14, "a={a} p={p}: {got} vs {expected}");
        }
    }

    #[test]
    fn classical_strictly_decreasing() {
        // On this scale consecutive values stay resolvable in f64.
        for a in [2usize, 9, 10, 32] {
            for &p in &[0.3, 0.4, 0.5, 0.6, 0.7] {
                let w = WalkSpec::new(a, p).unwrap();
                let mut prev = classical_ruin(&w, 0.0).unwrap();
                for k in 1..=2 * a {
                    let z = k as f64 / 2.0;
                    let cur = classical_ruin(&w, z).unwrap();
                    assert!(cur < prev, "a={a} p={p} z={z}: {cur} !< {prev}");
                    prev = cur;
                }
            }
        }
    }
}
