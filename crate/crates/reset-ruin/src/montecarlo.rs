//! Direct simulation of the reset dynamics with reproducible parallelism.
//!
//! Each step first draws the reset indicator (probability `gamma`); on a
//! reset the walker relocates to a draw from the reset distribution, with no
//! absorption check since reset sites are interior. Otherwise the walker
//! steps by one and terminates on hitting either boundary.
//!
//! Per-trajectory randomness comes from a dedicated ChaCha stream keyed by
//! `(site index, trajectory index)`, so an estimate is a pure function of
//! `(inputs, seed)` no matter how the work is scheduled: ruin counts are
//! integers and integer addition commutes exactly.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::walk::{ResetSpec, WalkSpec};

/// Default per-trajectory step budget. Hitting it raises
/// [`Error::IterationCap`] rather than silently truncating, since truncation
/// would bias the ruin frequencies.
pub const DEFAULT_STEP_CAP: u64 = 100_000_000;

/// Which boundary absorbed the trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Absorption {
    /// Absorbed at site 0.
    Ruin,
    /// Absorbed at site `a`.
    Escape,
}

/// Outcome of one simulated trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrajectoryOutcome {
    pub absorbed_at: Absorption,
    /// Total steps until absorption (reset steps included).
    pub steps: u64,
    /// Reset events before absorption.
    pub resets: u64,
}

/// Simulates one trajectory from `z0` with the default step cap.
pub fn simulate_trajectory(
    walk: &WalkSpec,
    reset: &ResetSpec,
    gamma: f64,
    z0: usize,
    rng: &mut impl Rng,
) -> Result<TrajectoryOutcome> {
    simulate_trajectory_capped(walk, reset, gamma, z0, DEFAULT_STEP_CAP, rng)
}

/// Simulates one trajectory from `z0`, failing after `cap` steps.
pub fn simulate_trajectory_capped(
    walk: &WalkSpec,
    reset: &ResetSpec,
    gamma: f64,
    z0: usize,
    cap: u64,
    rng: &mut impl Rng,
) -> Result<TrajectoryOutcome> {
    if z0 == 0 || z0 >= walk.a() {
        return Err(Error::domain(format!(
            "start position z0 = {z0} outside 1..={}",
            walk.a() - 1
        )));
    }
    if !gamma.is_finite() || gamma <= 0.0 || gamma >= 1.0 {
        return Err(Error::domain(format!("gamma = {gamma} outside (0, 1)")));
    }
    let a = walk.a();
    let p = walk.p();
    let mut x = z0;
    let mut steps: u64 = 0;
    let mut resets: u64 = 0;
    loop {
        steps += 1;
        if steps > cap {
            return Err(Error::IterationCap { cap });
        }
        if rng.random_bool(gamma) {
            x = reset.site_for_uniform(rng.random::<f64>());
            resets += 1;
        } else if rng.random_bool(p) {
            x += 1;
            if x == a {
                return Ok(TrajectoryOutcome { absorbed_at: Absorption::Escape, steps, resets });
            }
        } else {
            x -= 1;
            if x == 0 {
                return Ok(TrajectoryOutcome { absorbed_at: Absorption::Ruin, steps, resets });
            }
        }
    }
}

/// Statistically qualified Monte Carlo estimate of the coupling constant.
#[derive(Debug, Clone, Serialize)]
pub struct McEstimate {
    /// Empirical ruin frequency per reset site.
    pub q_hat: BTreeMap<usize, f64>,
    /// Reset-weighted ruin frequency, the coupling estimate.
    pub c_hat: f64,
    /// Trajectories per site.
    pub n: u64,
    pub seed: u64,
    /// Binomial standard error: from the supplied reference value when one
    /// was given, else the plug-in estimate.
    pub stderr: f64,
}

const TRAJECTORY_BITS: u32 = 48;

fn stream_id(site_index: usize, trajectory: u64) -> u64 {
    ((site_index as u64) << TRAJECTORY_BITS) | trajectory
}

/// Runs `n` trajectories of the full reset dynamics from every reset site
/// and aggregates the reset-weighted ruin frequency.
///
/// Deterministic for fixed `(inputs, seed)` regardless of the rayon worker
/// count. When `c_star_ref` is provided the standard error uses it,
/// otherwise the plug-in value is used.
pub fn estimate(
    walk: &WalkSpec,
    reset: &ResetSpec,
    gamma: f64,
    n: u64,
    seed: u64,
    c_star_ref: Option<f64>,
) -> Result<McEstimate> {
    if n == 0 {
        return Err(Error::domain("at least one trajectory per site is required"));
    }
    if n >= 1 << TRAJECTORY_BITS {
        return Err(Error::Range(format!("n = {n} exceeds the stream layout limit")));
    }
    if reset.len() >= 1 << (64 - TRAJECTORY_BITS) {
        return Err(Error::Range("too many reset sites for the stream layout".into()));
    }
    let base = ChaCha8Rng::seed_from_u64(seed);

    let mut q_hat = BTreeMap::new();
    let mut c_hat = 0.0;
    for (i, (&z0, &weight)) in reset.sites().iter().zip(reset.weights()).enumerate() {
        let ruins: u64 = (0..n)
            .into_par_iter()
            .map(|t| {
                let mut rng = base.clone();
                rng.set_stream(stream_id(i, t));
                simulate_trajectory(walk, reset, gamma, z0, &mut rng)
                    .map(|out| (out.absorbed_at == Absorption::Ruin) as u64)
            })
            .try_reduce(|| 0, |acc, x| Ok(acc + x))?;
        let freq = ruins as f64 / n as f64;
        q_hat.insert(z0, freq);
        c_hat += weight * freq;
    }

    let c_for_err = c_star_ref.unwrap_or(c_hat);
    let stderr = (c_for_err * (1.0 - c_for_err) / n as f64).sqrt();
    Ok(McEstimate { q_hat, c_hat, n, seed, stderr })
}

/// Pearson statistic `sum ((c_hat_k - c*_k) / sigma_k)^2` over estimates
/// paired with their reference values.
pub fn chi_square(entries: &[(McEstimate, f64)]) -> Result<f64> {
    if entries.is_empty() {
        return Err(Error::domain("chi-square needs at least one entry"));
    }
    let mut total = 0.0;
    for (est, c_ref) in entries {
        if est.stderr.is_nan() || est.stderr <= 0.0 {
            return Err(Error::domain(format!(
                "estimate with seed {} has non-positive stderr",
                est.seed
            )));
        }
        let z = (est.c_hat - c_ref) / est.stderr;
        total += z * z;
    }
    Ok(total)
}
