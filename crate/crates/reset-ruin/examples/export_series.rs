//! Emit the three sweep families as CSV files with JSON sidecars.
//!
//! ```bash
//! cargo run --example export_series -- [OUT_DIR]
//! ```

use std::path::PathBuf;

use reset_ruin::harness::output::{write_series, Provenance};
use reset_ruin::harness::parse_grid;
use reset_ruin::harness::sweeps::{profile_q_vs_z, sweep_c_vs_gamma, universality_cstar_vs_p};
use reset_ruin::{ResetSpec, WalkSpec};

fn main() -> reset_ruin::Result<()> {
    let out: PathBuf =
        std::env::args().nth(1).map(Into::into).unwrap_or_else(|| "series_out".into());
    let walk = WalkSpec::new(10, 0.6)?;
    let gamma_grid = parse_grid("0.05:0.05:0.95")?;

    // Coupling constant vs gamma for weights bracketing the critical 4/13.
    let sweeps = sweep_c_vs_gamma(
        &walk,
        &[3, 7],
        &[0.10, 0.20, 4.0 / 13.0, 0.45, 0.65],
        &gamma_grid,
    )?;

    // Ruin profiles under the critical distribution; gamma 0 is served by
    // the documented proxy rate and recorded in the sidecar.
    let reset = ResetSpec::new(&walk, &[3, 7], &[4.0 / 13.0, 9.0 / 13.0])?;
    let profiles = profile_q_vs_z(&walk, &reset, &[0.0, 0.2, 0.4, 0.6, 0.8])?;

    // Invariant value vs bias for four symmetric pairs.
    let universal = universality_cstar_vs_p(
        10,
        &parse_grid("0.1:0.05:0.9")?,
        &[(1, 9), (2, 8), (3, 7), (4, 6)],
    )?;

    let mut written = Vec::new();
    written.extend(write_series(&out.join("coupling_vs_gamma"), &sweeps, &Provenance::new())?);
    written.extend(write_series(&out.join("ruin_profile"), &profiles, &Provenance::new())?);
    written.extend(write_series(&out.join("universality"), &universal, &Provenance::new())?);

    println!("wrote {} files under {}:", written.len(), out.display());
    for path in written {
        println!("  {}", path.display());
    }
    Ok(())
}
