//! Run the abstract duality detector on several site sets and print the
//! certificates it finds.
//!
//! ```bash
//! cargo run --example duality_detection
//! ```

use reset_ruin::critical::{check_symmetry, detect_duality_for_walk, DEFAULT_DUALITY_TOL};
use reset_ruin::spectral::decompose;
use reset_ruin::WalkSpec;

fn main() -> reset_ruin::Result<()> {
    let walk = WalkSpec::new(10, 0.6)?;
    let decomp = decompose(&walk)?;

    for sites in [vec![3, 7], vec![3, 6], vec![3, 5, 7], vec![2, 5, 8], vec![5], vec![1, 4, 6, 9]]
    {
        println!("sites {sites:?}:");
        match detect_duality_for_walk(&decomp, &sites, DEFAULT_DUALITY_TOL)? {
            Some(cert) => {
                println!("  duality found: pairs {:?}, neutral {:?}", cert.pairing(), cert.neutral_sites());
                for (&z, &kappa) in cert.kappa() {
                    println!("    kappa({z}) = {kappa:.10}");
                }
                println!(
                    "  K = {:.10}  (pair products equal: {}, neutral weights sqrt(K): {})",
                    cert.k(),
                    cert.h3_ok(),
                    cert.h4_ok()
                );
            }
            None => println!("  no duality: no reset-neutral distribution with full support exists"),
        }
        // The geometric fast path agrees with the detector.
        let symmetric = check_symmetry(&walk, &sites).is_some();
        println!("  mirror-symmetric site set: {symmetric}\n");
    }
    Ok(())
}
