//! Discounted first-cycle probabilities and the renewal closed form.
//!
//! `u(z)` is the probability of ruin before the first reset and `s(z)` the
//! probability of any absorption before the first reset, both geometrically
//! discounted by the reset rate. They satisfy, at every interior site,
//!
//! ```text
//! x(z) = (1 - gamma) * (p * x(z+1) + q * x(z-1))
//! ```
//!
//! with `u(0) = s(0) = s(a) = 1`, `u(a) = 0`. The ruin probability of the
//! full reset dynamics then collapses to
//!
//! ```text
//! q_z = u(z) + (1 - s(z)) * C,      C = u_bar / s_bar,
//! ```
//!
//! where the bars are averages over the reset distribution. The production
//! solver is direct tridiagonal elimination; the system is strictly
//! diagonally dominant (`(1-gamma)(p+q) < 1`), so no pivoting is needed. The
//! fixed-point iteration is kept as an independent oracle for it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::walk::{ResetSpec, WalkSpec};

/// Solutions of the discounted first-cycle system on `0..=a`.
#[derive(Debug, Clone)]
pub struct DiscountedSolutions {
    gamma: f64,
    u: Vec<f64>,
    s: Vec<f64>,
}

impl DiscountedSolutions {
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Ruin-before-reset values, indexed by site `0..=a`.
    pub fn u(&self) -> &[f64] {
        &self.u
    }

    /// Absorption-before-reset values, indexed by site `0..=a`.
    pub fn s(&self) -> &[f64] {
        &self.s
    }

    /// Coupling constant and its numerator/denominator for a reset
    /// distribution, evaluated on this solution.
    pub fn coupling(&self, reset: &ResetSpec) -> CouplingBreakdown {
        let u_bar = reset.average(&self.u);
        let s_bar = reset.average(&self.s);
        assert!(s_bar > 0.0, "s_bar must be positive for interior reset sites");
        CouplingBreakdown { u_bar, s_bar, c: u_bar / s_bar }
    }

    /// Ruin probability of the full reset dynamics from site `z`.
    pub fn ruin(&self, reset: &ResetSpec, z: usize) -> Result<f64> {
        let a = self.u.len() - 1;
        if z > a {
            return Err(Error::domain(format!("position z = {z} outside 0..={a}")));
        }
        let c = self.coupling(reset).c;
        Ok(self.u[z] + (1.0 - self.s[z]) * c)
    }

    /// Escape probability, built from `v(z) = s(z) - u(z)` by the same
    /// renewal algebra. Complementary to [`Self::ruin`].
    pub fn escape(&self, reset: &ResetSpec, z: usize) -> Result<f64> {
        let a = self.u.len() - 1;
        if z > a {
            return Err(Error::domain(format!("position z = {z} outside 0..={a}")));
        }
        let v: Vec<f64> = self.s.iter().zip(&self.u).map(|(s, u)| s - u).collect();
        let v_bar = reset.average(&v);
        let s_bar = reset.average(&self.s);
        Ok(v[z] + (1.0 - self.s[z]) * (v_bar / s_bar))
    }
}

/// Coupling constant `C = u_bar / s_bar` with its two ingredients.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CouplingBreakdown {
    pub u_bar: f64,
    pub s_bar: f64,
    pub c: f64,
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !gamma.is_finite() || gamma <= 0.0 || gamma >= 1.0 {
        return Err(Error::domain(format!(
            "resetting rate gamma = {gamma} must lie strictly inside (0, 1)"
        )));
    }
    Ok(())
}

/// Solves the discounted system by tridiagonal elimination.
pub fn solve_discounted(walk: &WalkSpec, gamma: f64) -> Result<DiscountedSolutions> {
    check_gamma(gamma)?;
    let a = walk.a();
    let b = 1.0 - gamma;
    let (p, q) = (walk.p(), walk.q());
    let n = a - 1;

    // Interior unknowns x(1..a-1): x(z) - b*p*x(z+1) - b*q*x(z-1) = rhs(z),
    // boundary terms folded into the right-hand side.
    let sub = -b * q;
    let sup = -b * p;

    let thomas = |rhs: &mut [f64]| {
        let mut c_prime = vec![0.0; n];
        c_prime[0] = sup;
        rhs[0] /= 1.0;
        for i in 1..n {
            let denom = 1.0 - sub * c_prime[i - 1];
            c_prime[i] = sup / denom;
            rhs[i] = (rhs[i] - sub * rhs[i - 1]) / denom;
        }
        for i in (0..n - 1).rev() {
            rhs[i] -= c_prime[i] * rhs[i + 1];
        }
    };

    let mut u_int = vec![0.0; n];
    u_int[0] = b * q; // from u(0) = 1
    thomas(&mut u_int);

    let mut s_int = vec![0.0; n];
    s_int[0] = b * q; // from s(0) = 1
    s_int[n - 1] += b * p; // from s(a) = 1
    thomas(&mut s_int);

    let mut u = Vec::with_capacity(a + 1);
    u.push(1.0);
    u.extend_from_slice(&u_int);
    u.push(0.0);
    let mut s = Vec::with_capacity(a + 1);
    s.push(1.0);
    s.extend_from_slice(&s_int);
    s.push(1.0);
    Ok(DiscountedSolutions { gamma, u, s })
}

/// Jacobi fixed-point iteration of the two recurrences, from zero interior
/// initial data with the boundaries held fixed. Stops once the largest
/// interior update drops below `tol`. Serves as the independent oracle for
/// [`solve_discounted`].
pub fn solve_discounted_iterative(
    walk: &WalkSpec,
    gamma: f64,
    tol: f64,
    max_iter: usize,
) -> Result<DiscountedSolutions> {
    check_gamma(gamma)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::domain(format!("tolerance {tol} must be positive")));
    }
    if max_iter == 0 {
        return Err(Error::domain("max_iter must be at least 1"));
    }
    let a = walk.a();
    let b = 1.0 - gamma;
    let (p, q) = (walk.p(), walk.q());

    let mut u = vec![0.0; a + 1];
    let mut s = vec![0.0; a + 1];
    u[0] = 1.0;
    s[0] = 1.0;
    s[a] = 1.0;
    let mut next_u = u.clone();
    let mut next_s = s.clone();

    let mut last_update = f64::INFINITY;
    for _ in 0..max_iter {
        let mut update: f64 = 0.0;
        for z in 1..a {
            next_u[z] = b * (p * u[z + 1] + q * u[z - 1]);
            next_s[z] = b * (p * s[z + 1] + q * s[z - 1]);
            update = update.max((next_u[z] - u[z]).abs()).max((next_s[z] - s[z]).abs());
        }
        std::mem::swap(&mut u, &mut next_u);
        std::mem::swap(&mut s, &mut next_s);
        if update < tol {
            return Ok(DiscountedSolutions { gamma, u, s });
        }
        last_update = update;
    }
    Err(Error::Convergence { iterations: max_iter, last_update })
}

/// Coupling constant `C(pi, gamma) = u_bar / s_bar`.
pub fn coupling_constant(
    walk: &WalkSpec,
    reset: &ResetSpec,
    gamma: f64,
) -> Result<CouplingBreakdown> {
    Ok(solve_discounted(walk, gamma)?.coupling(reset))
}

/// Ruin probability `q_z = u(z) + (1 - s(z)) C` of the reset dynamics.
pub fn ruin_probability(
    walk: &WalkSpec,
    reset: &ResetSpec,
    gamma: f64,
    z: usize,
) -> Result<f64> {
    solve_discounted(walk, gamma)?.ruin(reset, z)
}

/// Escape probability, complementary to [`ruin_probability`].
pub fn escape_probability(
    walk: &WalkSpec,
    reset: &ResetSpec,
    gamma: f64,
    z: usize,
) -> Result<f64> {
    solve_discounted(walk, gamma)?.escape(reset, z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn walk(a: usize, p: f64) -> WalkSpec {
        WalkSpec::new(a, p).unwrap()
    }

    #[test]
    fn single_interior_site_is_closed_form() {
        // For a = 2 one non-reset step absorbs: u(1) = (1-g) q, s(1) = 1-g.
        for &p in &[0.3, 0.5, 0.7] {
            for &g in &[0.1, 0.5, 0.9] {
                let sol = solve_discounted(&walk(2, p), g).unwrap();
                assert!((sol.u()[1] - (1.0 - g) * (1.0 - p)).abs() <= 1e-15);
                assert!((sol.s()[1] - (1.0 - g)).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn boundary_values_are_pinned() {
        let sol = solve_discounted(&walk(10, 0.6), 0.37).unwrap();
        assert_eq!(sol.u()[0], 1.0);
        assert_eq!(sol.u()[10], 0.0);
        assert_eq!(sol.s()[0], 1.0);
        assert_eq!(sol.s()[10], 1.0);
    }

    #[test]
    fn small_gamma_recovers_classical() {
        let w = walk(10, 0.6);
        let sol = solve_discounted(&w, 1e-8).unwrap();
        let classical = crate::walk::classical_ruin(&w, 5.0).unwrap();
        assert!((sol.u()[5] - classical).abs() <= 1e-6);
    }

    #[test]
    fn direct_solver_matches_frozen_oracle_values() {
        // Fixed-point oracle at tol 1e-12 for (a=10, p=0.6, gamma=0.5).
        let sol = solve_discounted(&walk(10, 0.6), 0.5).unwrap();
        assert!((sol.u()[3] - 9.759_233_530_062_98e-3).abs() <= 1e-12);
        assert!((sol.s()[3] - 1.010_687_842_338_561e-2).abs() <= 1e-12);
        assert!((sol.u()[5] - 4.456_824_512_534_822e-4).abs() <= 1e-12);
        assert!((sol.s()[5] - 3.830_083_565_459_609e-3).abs() <= 1e-12);
    }

    #[test]
    fn iterative_converges_quickly() {
        let sol = solve_discounted_iterative(&walk(10, 0.6), 0.2, 1e-12, 10_000).unwrap();
        assert!(sol.u()[5] > 0.0);
    }

    #[test]
    fn iterative_single_interior_site() {
        let sol = solve_discounted_iterative(&walk(2, 0.7), 0.3, 1e-12, 10).unwrap();
        assert!((sol.u()[1] - 0.21).abs() <= 1e-15);
        assert!((sol.s()[1] - 0.7).abs() <= 1e-15);
    }

    #[test]
    fn iterative_reports_non_convergence() {
        let err = solve_discounted_iterative(&walk(10, 0.6), 0.05, 1e-12, 3).unwrap_err();
        match err {
            Error::Convergence { iterations, last_update } => {
                assert_eq!(iterations, 3);
                assert!(last_update >= 1e-12);
            }
            other => panic!("expected Convergence, got {other:?}"),
        }
    }

    #[test]
    fn solvers_agree_on_named_case() {
        let w = walk(12, 0.7);
        let direct = solve_discounted(&w, 0.5).unwrap();
        let iterative = solve_discounted_iterative(&w, 0.5, 1e-12, 10_000).unwrap();
        for z in 0..=12 {
            assert!((direct.u()[z] - iterative.u()[z]).abs() <= 1e-10);
            assert!((direct.s()[z] - iterative.s()[z]).abs() <= 1e-10);
        }
    }

    #[test]
    fn gamma_domain_is_open() {
        let w = walk(10, 0.6);
        assert!(solve_discounted(&w, 0.0).is_err());
        assert!(solve_discounted(&w, 1.0).is_err());
        assert!(solve_discounted(&w, -0.2).is_err());
        assert!(solve_discounted(&w, f64::NAN).is_err());
        assert!(solve_discounted_iterative(&w, 0.5, 0.0, 10).is_err());
        assert!(solve_discounted_iterative(&w, 0.5, 1e-12, 0).is_err());
    }

    #[test]
    fn critical_coupling_is_flat_at_four_decimals() {
        let w = walk(10, 0.6);
        let reset = ResetSpec::new(&w, &[3, 7], &[4.0 / 13.0, 9.0 / 13.0]).unwrap();
        for k in 1..20 {
            let g = 0.05 * k as f64;
            let c = coupling_constant(&w, &reset, g).unwrap().c;
            assert!((c - 0.1164).abs() < 5e-5, "gamma={g}: C={c}");
        }
    }

    #[test]
    fn off_critical_coupling_frozen_value() {
        let w = walk(10, 0.6);
        let reset = ResetSpec::new(&w, &[3, 7], &[0.10, 0.90]).unwrap();
        let c = coupling_constant(&w, &reset, 0.05).unwrap().c;
        assert!((c - 5.293_534_659_332_947e-2).abs() <= 1e-12);
        assert!((c - 0.05294).abs() <= 5e-6);
    }

    #[test]
    fn single_site_reset_reduces_to_ratio() {
        let w = walk(10, 0.6);
        let reset = ResetSpec::delta(&w, 5).unwrap();
        let sol = solve_discounted(&w, 0.5).unwrap();
        let c = sol.coupling(&reset).c;
        assert!((c - sol.u()[5] / sol.s()[5]).abs() <= 1e-15);
        assert!((c - 1.163_636_363_636_364e-1).abs() <= 1e-12);
    }

    #[test]
    fn ruin_profile_frozen_point() {
        let w = walk(10, 0.6);
        let reset = ResetSpec::new(&w, &[3, 7], &[4.0 / 13.0, 9.0 / 13.0]).unwrap();
        let q1 = ruin_probability(&w, &reset, 0.2, 1).unwrap();
        assert!((q1 - 4.644_466_103_808_085e-1).abs() <= 1e-12);
        assert!((q1 - 0.4644).abs() <= 5e-5);
        let cb = coupling_constant(&w, &reset, 0.2).unwrap();
        assert!((cb.u_bar - 1.995_951_979_698_004e-2).abs() <= 1e-12);
        assert!((cb.s_bar - 1.715_271_232_552_97e-1).abs() <= 1e-12);
    }

    #[test]
    fn ruin_boundaries() {
        let w = walk(10, 0.6);
        let reset = ResetSpec::new(&w, &[3, 7], &[0.4, 0.6]).unwrap();
        assert_eq!(ruin_probability(&w, &reset, 0.3, 0).unwrap(), 1.0);
        assert_eq!(ruin_probability(&w, &reset, 0.3, 10).unwrap(), 0.0);
        assert_eq!(escape_probability(&w, &reset, 0.3, 0).unwrap(), 0.0);
        assert!(ruin_probability(&w, &reset, 0.3, 11).is_err());
    }

    #[test]
    fn complementarity_on_a_grid() {
        let w = walk(10, 0.6);
        let reset = ResetSpec::new(&w, &[3, 7], &[0.25, 0.75]).unwrap();
        for k in 1..20 {
            let g = 0.05 * k as f64;
            let sol = solve_discounted(&w, g).unwrap();
            for z in 0..=10 {
                let total = sol.ruin(&reset, z).unwrap() + sol.escape(&reset, z).unwrap();
                assert!((total - 1.0).abs() <= 1e-12, "gamma={g} z={z}: {total}");
            }
        }
    }

    #[test]
    fn symmetric_midpoint_escape_is_half() {
        let w = walk(10, 0.5);
        let reset = ResetSpec::new(&w, &[3, 7], &[0.5, 0.5]).unwrap();
        let e = escape_probability(&w, &reset, 0.4, 5).unwrap();
        assert!((e - 0.5).abs() <= 1e-12);
    }

    #[test]
    fn separatrix_monotonicity() {
        // Below the critical weight C decreases in gamma, above it increases.
        let w = walk(10, 0.6);
        let grid: Vec<f64> = (1..20).map(|k| 0.05 * k as f64).collect();
        for &(pi1, below) in &[(0.10, true), (0.20, true), (0.45, false), (0.65, false)] {
            let reset = ResetSpec::new(&w, &[3, 7], &[pi1, 1.0 - pi1]).unwrap();
            let cs: Vec<f64> = grid
                .iter()
                .map(|&g| coupling_constant(&w, &reset, g).unwrap().c)
                .collect();
            for pair in cs.windows(2) {
                if below {
                    assert!(pair[1] < pair[0], "pi1={pi1}: not strictly decreasing");
                } else {
                    assert!(pair[1] > pair[0], "pi1={pi1}: not strictly increasing");
                }
            }
        }
    }
}
