//! Recover the critical weight by bisection and compare with the closed
//! form.
//!
//! ```bash
//! cargo run --example bisection
//! ```

use reset_ruin::critical::critical_family;
use reset_ruin::harness::bisect::{
    bisect_critical_weight, bisect_critical_weight_with, BisectionObjective,
};
use reset_ruin::renewal::coupling_constant;
use reset_ruin::{ResetSpec, WalkSpec};

fn main() -> reset_ruin::Result<()> {
    for (a, p, sites) in [(10, 0.6, [3usize, 7usize]), (10, 0.7, [3, 7]), (9, 0.7, [3, 6])] {
        let walk = WalkSpec::new(a, p)?;
        let theory = critical_family(&walk, &sites)?.materialize(0.0)?.weights()[0];
        let span = bisect_critical_weight(&walk, &sites, 1e-10)?;
        let derivative = bisect_critical_weight_with(
            &walk,
            &sites,
            1e-10,
            BisectionObjective::DerivativeAtHalf,
        )?;
        let reset = ResetSpec::new(&walk, &sites, &[span, 1.0 - span])?;
        let measured = coupling_constant(&walk, &reset, 0.5)?.c;

        println!("a = {a}, p = {p}, sites {sites:?}:");
        println!("  closed form        pi1* = {theory:.12}");
        println!("  span objective     pi1  = {span:.12}  (|dpi| = {:.2e})", (span - theory).abs());
        println!(
            "  derivative at 1/2  pi1  = {derivative:.12}  (|dpi| = {:.2e})",
            (derivative - theory).abs()
        );
        println!("  C at bisected weight = {measured:.12}\n");
    }

    // The unbiased walk carries no gamma signal to bisect on.
    let unbiased = WalkSpec::new(10, 0.5)?;
    match bisect_critical_weight(&unbiased, &[3, 7], 1e-10) {
        Err(err) => println!("p = 1/2 -> {err}"),
        Ok(_) => unreachable!("p = 1/2 must be degenerate"),
    }
    Ok(())
}
