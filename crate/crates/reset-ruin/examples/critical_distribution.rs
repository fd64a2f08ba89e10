//! Construct the critical reset distribution and watch the coupling
//! constant stop depending on the resetting rate.
//!
//! ```bash
//! cargo run --example critical_distribution
//! ```

use reset_ruin::critical::critical_family;
use reset_ruin::renewal::coupling_constant;
use reset_ruin::{ResetSpec, WalkSpec};

fn main() -> reset_ruin::Result<()> {
    let walk = WalkSpec::new(10, 0.6)?;
    let family = critical_family(&walk, &[3, 7])?;
    let critical = family.materialize(0.0)?;

    println!(
        "critical distribution on {{3, 7}}: pi* = ({:.10}, {:.10})   (4/13, 9/13)",
        critical.weights()[0],
        critical.weights()[1]
    );
    println!("invariant value C* = {:.10}\n", family.c_star());

    // A heavier weight on site 3 and a lighter one bracket the critical
    // value; only the critical column is flat.
    let below = ResetSpec::new(&walk, &[3, 7], &[0.10, 0.90])?;
    let above = ResetSpec::new(&walk, &[3, 7], &[0.65, 0.35])?;
    println!(
        "{:>6} {:>14} {:>14} {:>14}",
        "gamma", "pi1 = 0.10", "pi1 = 4/13", "pi1 = 0.65"
    );
    for k in 1..20 {
        let gamma = 0.05 * k as f64;
        println!(
            "{gamma:>6.2} {:>14.10} {:>14.10} {:>14.10}",
            coupling_constant(&walk, &below, gamma)?.c,
            coupling_constant(&walk, &critical, gamma)?.c,
            coupling_constant(&walk, &above, gamma)?.c,
        );
    }
    println!("\nbelow the critical weight C decreases with gamma, above it increases;");
    println!("the critical distribution sits on the separatrix.");
    Ok(())
}
