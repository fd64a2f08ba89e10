//! Independent oracles for the two solver routes and the spectral tables:
//! fixed-point iteration against direct elimination, numerical
//! eigendecomposition against the closed-form eigenvalues, and brute-force
//! discounted path enumeration against the mode sums.

use reset_ruin::renewal::{solve_discounted, solve_discounted_iterative};
use reset_ruin::spectral::{decompose, spectral_s, spectral_u};
use reset_ruin::WalkSpec;

fn gamma_grid() -> Vec<f64> {
    (1..20).map(|k| 0.05 * k as f64).collect()
}

#[test]
fn iterative_and_direct_solvers_agree_elementwise() {
    let mut worst: f64 = 0.0;
    for a in 2..=64 {
        for pk in 1..=9 {
            let walk = WalkSpec::new(a, pk as f64 / 10.0).unwrap();
            for &gamma in &gamma_grid() {
                let direct = solve_discounted(&walk, gamma).unwrap();
                let iterative =
                    solve_discounted_iterative(&walk, gamma, 1e-12, 10_000).unwrap();
                for z in 0..=a {
                    worst = worst
                        .max((direct.u()[z] - iterative.u()[z]).abs())
                        .max((direct.s()[z] - iterative.s()[z]).abs());
                }
            }
        }
    }
    assert!(worst <= 1e-10, "max solver disagreement {worst:.3e}");
}

#[test]
fn recurrence_residuals_stay_at_machine_scale() {
    let mut worst: f64 = 0.0;
    for a in 2..=64 {
        for pk in 1..=9 {
            let p = pk as f64 / 10.0;
            let walk = WalkSpec::new(a, p).unwrap();
            let q = walk.q();
            for &gamma in &gamma_grid() {
                let b = 1.0 - gamma;
                let sol = solve_discounted(&walk, gamma).unwrap();
                for z in 1..a {
                    let ru = sol.u()[z] - b * (p * sol.u()[z + 1] + q * sol.u()[z - 1]);
                    let rs = sol.s()[z] - b * (p * sol.s()[z + 1] + q * sol.s()[z - 1]);
                    worst = worst.max(ru.abs()).max(rs.abs());
                }
            }
        }
    }
    assert!(worst <= 1e-13, "max recurrence residual {worst:.3e}");
}

#[test]
fn closed_form_eigenvalues_match_numerical_spectrum() {
    // The symmetrized interior operator is tridiagonal with zero diagonal
    // and off-diagonal sqrt(pq); diagonalize it numerically and compare.
    let mut worst: f64 = 0.0;
    for a in 2..=32 {
        for &p in &[0.3, 0.5, 0.7] {
            let walk = WalkSpec::new(a, p).unwrap();
            let decomp = decompose(&walk).unwrap();
            let off = (walk.p() * walk.q()).sqrt();
            let n = a - 1;
            let matrix = nalgebra::DMatrix::<f64>::from_fn(n, n, |r, c| {
                if r.abs_diff(c) == 1 {
                    off
                } else {
                    0.0
                }
            });
            let mut numerical: Vec<f64> =
                matrix.symmetric_eigen().eigenvalues.iter().copied().collect();
            numerical.sort_by(|x, y| y.partial_cmp(x).unwrap());
            for (nu, &lambda_num) in numerical.iter().enumerate() {
                worst = worst.max((decomp.lambdas()[nu] - lambda_num).abs());
            }
        }
    }
    assert!(worst <= 1e-12, "max eigenvalue deviation {worst:.3e}");
}

/// Discounted first-passage series truncated at `kmax` steps, accumulated by
/// propagating the interior occupation measure. Independent of both solver
/// routes.
fn brute_force_discounted(
    walk: &WalkSpec,
    gamma: f64,
    z0: usize,
    kmax: usize,
) -> (f64, f64) {
    let a = walk.a();
    let (p, q) = (walk.p(), walk.q());
    let b = 1.0 - gamma;
    let mut occupation = vec![0.0; a + 1];
    occupation[z0] = 1.0;
    let mut ruin = 0.0;
    let mut absorbed = 0.0;
    let mut discount = 1.0;
    for _ in 1..=kmax {
        discount *= b;
        ruin += discount * occupation[1] * q;
        absorbed += discount * (occupation[1] * q + occupation[a - 1] * p);
        let mut next = vec![0.0; a + 1];
        for x in 1..a {
            if occupation[x] != 0.0 {
                if x < a - 1 {
                    next[x + 1] += occupation[x] * p;
                }
                if x >= 2 {
                    next[x - 1] += occupation[x] * q;
                }
            }
        }
        occupation = next;
    }
    (ruin, absorbed)
}

#[test]
fn mode_sums_match_path_enumeration() {
    // Truncation at 60 steps leaves a tail below 1e-13 for gamma >= 0.4.
    for &(a, p) in &[(4usize, 0.7), (5, 0.6)] {
        let walk = WalkSpec::new(a, p).unwrap();
        let decomp = decompose(&walk).unwrap();
        for &gamma in &[0.4, 0.5, 0.7] {
            for z in 1..a {
                let (u_ref, s_ref) = brute_force_discounted(&walk, gamma, z, 60);
                let u = spectral_u(&decomp, z, gamma).unwrap();
                let s = spectral_s(&decomp, z, gamma).unwrap();
                assert!(
                    (u - u_ref).abs() <= 1e-12,
                    "u: a={a} p={p} gamma={gamma} z={z}: {u} vs {u_ref}"
                );
                assert!(
                    (s - s_ref).abs() <= 1e-12,
                    "s: a={a} p={p} gamma={gamma} z={z}: {s} vs {s_ref}"
                );
            }
        }
    }
}

#[test]
fn direct_solver_matches_path_enumeration() {
    let walk = WalkSpec::new(4, 0.7).unwrap();
    for &gamma in &[0.5, 0.7] {
        let sol = solve_discounted(&walk, gamma).unwrap();
        for z in 1..4 {
            let (u_ref, s_ref) = brute_force_discounted(&walk, gamma, z, 60);
            assert!((sol.u()[z] - u_ref).abs() <= 1e-12);
            assert!((sol.s()[z] - s_ref).abs() <= 1e-12);
        }
    }
}
