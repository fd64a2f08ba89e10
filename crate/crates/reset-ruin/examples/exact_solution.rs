//! Solve the discounted first-cycle system and assemble ruin probabilities.
//!
//! ```bash
//! cargo run --example exact_solution
//! ```

use reset_ruin::renewal::solve_discounted;
use reset_ruin::{ResetSpec, WalkSpec};

fn main() -> reset_ruin::Result<()> {
    let walk = WalkSpec::new(10, 0.6)?;
    let reset = ResetSpec::new(&walk, &[3, 7], &[0.25, 0.75])?;
    let gamma = 0.4;

    let sol = solve_discounted(&walk, gamma)?;
    println!("discounted first-cycle probabilities at gamma = {gamma}:");
    println!("{:>3} {:>12} {:>12}", "z", "u(z)", "s(z)");
    for z in 0..=walk.a() {
        println!("{z:>3} {:>12.8} {:>12.8}", sol.u()[z], sol.s()[z]);
    }

    let coupling = sol.coupling(&reset);
    println!();
    println!(
        "coupling constant: C = u_bar / s_bar = {:.8} / {:.8} = {:.8}",
        coupling.u_bar, coupling.s_bar, coupling.c
    );

    println!();
    println!("ruin probability q_z = u(z) + (1 - s(z)) C, and its complement:");
    println!("{:>3} {:>12} {:>12} {:>22}", "z", "q_z", "e_z", "q_z + e_z");
    for z in 0..=walk.a() {
        let q = sol.ruin(&reset, z)?;
        let e = sol.escape(&reset, z)?;
        println!("{z:>3} {q:>12.8} {e:>12.8} {:>22.16}", q + e);
    }
    Ok(())
}
