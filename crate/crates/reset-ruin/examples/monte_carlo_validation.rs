//! Validate the closed-form invariant value by direct simulation.
//!
//! ```bash
//! cargo run --release --example monte_carlo_validation
//! ```

use reset_ruin::critical::critical_family;
use reset_ruin::montecarlo::estimate;
use reset_ruin::WalkSpec;

fn main() -> reset_ruin::Result<()> {
    let n = 200_000;
    let seed = 42;
    println!("{n} trajectories per reset site, seed {seed}, gamma = 0.5\n");
    println!(
        "{:>3} {:>5} {:<10} {:>13} {:>13} {:>9} {:>8}",
        "a", "p", "sites", "C*", "C_hat", "|dev|", "sigmas"
    );
    for (a, p, sites) in [
        (10, 0.5, vec![3, 7]),
        (10, 0.6, vec![3, 7]),
        (10, 0.7, vec![3, 7]),
        (9, 0.7, vec![3, 6]),
        (12, 0.6, vec![4, 8]),
    ] {
        let walk = WalkSpec::new(a, p)?;
        let family = critical_family(&walk, &sites)?;
        let reset = family.materialize(0.0)?;
        let est = estimate(&walk, &reset, 0.5, n, seed, Some(family.c_star()))?;
        let dev = (est.c_hat - family.c_star()).abs();
        println!(
            "{a:>3} {p:>5} {:<10} {:>13.10} {:>13.10} {:>9.2e} {:>8.2}",
            format!("{sites:?}"),
            family.c_star(),
            est.c_hat,
            dev,
            dev / est.stderr
        );
    }
    println!("\neach row should sit within a few binomial standard errors of C*.");
    Ok(())
}
