//! Evaluate the closed-form spectral tables and cross-check them against
//! the tridiagonal solver.
//!
//! ```bash
//! cargo run --example spectral_cross_check
//! ```

use reset_ruin::renewal::solve_discounted;
use reset_ruin::spectral::{decompose, duality_residual, rank_check, spectral_s, spectral_u};
use reset_ruin::WalkSpec;

fn main() -> reset_ruin::Result<()> {
    let walk = WalkSpec::new(10, 0.6)?;
    let decomp = decompose(&walk)?;

    println!("eigenvalues lambda_nu = 2 sqrt(pq) cos(pi nu / a):");
    for (i, lambda) in decomp.lambdas().iter().enumerate() {
        print!("  nu={:<2} {lambda:>10.6}", i + 1);
        if (i + 1) % 3 == 0 {
            println!();
        }
    }
    println!("\n");

    let gamma = 0.5;
    let sol = solve_discounted(&walk, gamma)?;
    println!("mode-sum reconstruction vs direct solve at gamma = {gamma}:");
    println!("{:>3} {:>22} {:>12}", "z", "spectral u(z)", "|diff|");
    let mut worst: f64 = 0.0;
    for z in walk.interior() {
        let u = spectral_u(&decomp, z, gamma)?;
        let s = spectral_s(&decomp, z, gamma)?;
        let du = (u - sol.u()[z]).abs();
        let ds = (s - sol.s()[z]).abs();
        worst = worst.max(du).max(ds);
        println!("{z:>3} {u:>22.16} {du:>12.2e}");
    }
    println!("worst deviation over u and s: {worst:.2e}\n");

    println!("channel identity B_nu(z) = (p/q)^(a-z) A_nu(a-z):");
    for z in walk.interior() {
        println!("  z={z}: residual {:.2e}", duality_residual(&decomp, z));
    }

    println!();
    println!(
        "coefficient columns are independent for any distinct sites: rank_check({{3,7}}) = {}",
        rank_check(&decomp, &[3, 7])?
    );
    let all: Vec<usize> = walk.interior().collect();
    println!("rank_check(all nine interior sites) = {}", rank_check(&decomp, &all)?);
    Ok(())
}
