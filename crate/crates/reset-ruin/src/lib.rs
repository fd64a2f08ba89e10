//! Ruin probabilities for biased random walks under multi-site geometric
//! resetting.
//!
//! A walker on `{0, ..., a}` steps up with probability `p` and down with
//! probability `q = 1 - p`, is absorbed at either end, and at each step is
//! first relocated with probability `gamma` to a random interior site drawn
//! from a reset distribution `pi`. This crate computes the ruin probability
//! of that process three independent ways and studies when it stops
//! depending on `gamma`:
//!
//! - [`renewal`] solves the discounted first-cycle system exactly and
//!   assembles `q_z = u(z) + (1 - s(z)) C` with the coupling constant
//!   `C = u_bar / s_bar`, the single scalar through which `pi` enters.
//! - [`spectral`] evaluates the same quantities from closed-form
//!   eigenvalues and coefficient tables of the bias-symmetrized transition
//!   operator, and exposes the channel identity between the ruin and escape
//!   coefficient tables.
//! - [`montecarlo`] simulates the full dynamics with reproducible parallel
//!   streams.
//!
//! The structural payoff lives in [`critical`]: a site set admits a
//! *critical* reset family, with `C` independent of `gamma`, exactly when
//! its coefficient tables admit a mode-independent channel duality, which
//! for this walk means the sites mirror onto themselves under `z -> a - z`.
//! The invariant value is the classical midpoint ruin probability,
//! regardless of which symmetric sites are used or how often resets occur.
//! [`harness`] packages verification tables, bisection recovery and
//! figure-data sweeps behind the `reset-ruin` command-line tool.
//!
//! ```
//! use reset_ruin::{critical, renewal, WalkSpec};
//!
//! let walk = WalkSpec::new(10, 0.6)?;
//! let family = critical::critical_family(&walk, &[3, 7])?;
//! let reset = family.materialize(0.0)?;
//! // 4/13 of the reset mass goes to site 3.
//! assert!((reset.weights()[0] - 4.0 / 13.0).abs() < 1e-12);
//!
//! // The coupling constant no longer depends on the resetting rate.
//! for gamma in [0.1, 0.5, 0.9] {
//!     let c = renewal::coupling_constant(&walk, &reset, gamma)?.c;
//!     assert!((c - family.c_star()).abs() < 1e-12);
//! }
//! # Ok::<(), reset_ruin::Error>(())
//! ```

pub mod critical;
pub mod error;
pub mod harness;
pub mod montecarlo;
pub mod renewal;
pub mod spectral;
pub mod walk;

pub use error::{Error, Result};
pub use walk::{classical_ruin, ResetSpec, WalkSpec};
