//! Closed-form spectral machinery for the absorbed walk.
//!
//! Conjugating the interior transition operator by the weight
//! `h(x) = (q/p)^{x/2}` yields a symmetric tridiagonal operator with
//! off-diagonal entries `sqrt(pq)`, whose eigenpairs are known in closed
//! form: eigenvalues `lambda_nu = 2 sqrt(pq) cos(pi nu / a)` and orthonormal
//! eigenfunctions `psi_nu(x) = sqrt(2/a) sin(pi nu x / a)`. The discounted
//! first-cycle probabilities decompose over these modes with coefficient
//! tables `A_nu(z)` (ruin channel) and `B_nu(z)` (escape channel):
//!
//! ```text
//! A_nu(z) = (2/a) (q/p)^{z/2}     sin(pi nu z / a)     sin(pi nu / a)
//! B_nu(z) = (2/a) (p/q)^{(a-z)/2} sin(pi nu (a-z) / a) sin(pi nu / a)
//! ```
//!
//! The two channels are linked mode by mode through the involution
//! `z -> a - z`: `B_nu(z) = (p/q)^{a-z} A_nu(a-z)`. Everything here is
//! evaluated from closed forms; no matrix is ever diagonalized outside of
//! test oracles.

use crate::error::{Error, Result};
use crate::walk::WalkSpec;

/// Largest domain size tabulated by [`decompose`]. Beyond this the bias
/// weights `(q/p)^{x/2}` start to threaten double range for extreme `p`,
/// so larger domains are rejected instead of silently overflowing.
pub const MAX_SPECTRAL_DOMAIN: usize = 64;

/// Coefficient values indexed `[mode][column]`.
pub type CoefficientRows = Vec<Vec<f64>>;

/// `sin(pi k / a)` with the argument reduced in integer arithmetic first,
/// so multiples of `a` map to exactly zero and reflections are exact.
fn sin_pi_ratio(k: usize, a: usize) -> f64 {
    let mut m = k % (2 * a);
    let mut sign = 1.0;
    if m >= a {
        sign = -1.0;
        m -= a;
    }
    if m == 0 {
        return 0.0;
    }
    if 2 * m > a {
        m = a - m;
    }
    sign * (std::f64::consts::PI * m as f64 / a as f64).sin()
}

/// `cos(pi k / a)` with the same integer reduction; `k/a = 1/2` maps to
/// exactly zero.
fn cos_pi_ratio(k: usize, a: usize) -> f64 {
    let mut m = k % (2 * a);
    if m > a {
        m = 2 * a - m;
    }
    if 2 * m == a {
        return 0.0;
    }
    if 2 * m > a {
        -(std::f64::consts::PI * (a - m) as f64 / a as f64).cos()
    } else {
        (std::f64::consts::PI * m as f64 / a as f64).cos()
    }
}

/// Neumaier-compensated sum; the reconstruction series cancels heavily for
/// strongly biased walks, so plain summation would waste digits.
fn compensated_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Eigenvalues, eigenfunctions, bias weights and the two coefficient tables
/// of a walk, all tabulated from closed forms.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    walk: WalkSpec,
    lambdas: Vec<f64>,
    a_coeffs: Vec<Vec<f64>>, // [nu-1][z-1]
    b_coeffs: Vec<Vec<f64>>, // [nu-1][z-1]
    doob: Vec<f64>,          // h(x), x = 1..a-1
    psi: Vec<Vec<f64>>,      // [nu-1][x-1]
    log_ratio: f64,          // ln(q/p)
}

/// Tabulates the spectral decomposition of `walk`.
pub fn decompose(walk: &WalkSpec) -> Result<SpectralDecomposition> {
    let a = walk.a();
    if a > MAX_SPECTRAL_DOMAIN {
        return Err(Error::Range(format!(
            "domain size {a} exceeds the spectral limit of {MAX_SPECTRAL_DOMAIN}"
        )));
    }
    let log_ratio = walk.log_ratio();
    let two_sqrt_pq = 2.0 * (walk.p() * walk.q()).sqrt();
    let norm = (2.0 / a as f64).sqrt();

    let lambdas: Vec<f64> = (1..a).map(|nu| two_sqrt_pq * cos_pi_ratio(nu, a)).collect();
    let doob: Vec<f64> = (1..a).map(|x| (0.5 * x as f64 * log_ratio).exp()).collect();
    let psi: Vec<Vec<f64>> = (1..a)
        .map(|nu| (1..a).map(|x| norm * sin_pi_ratio(nu * x, a)).collect())
        .collect();

    let a_coeffs: Vec<Vec<f64>> = (1..a)
        .map(|nu| {
            let edge = sin_pi_ratio(nu, a);
            (1..a)
                .map(|z| (2.0 / a as f64) * doob[z - 1] * sin_pi_ratio(nu * z, a) * edge)
                .collect()
        })
        .collect();

    // B is tabulated through the channel identity B_nu(z) = kappa(z) A_nu(a-z)
    // with kappa(z) = (p/q)^{a-z}; this equals the closed form above exactly
    // in real arithmetic and keeps the identity exact in floats as well.
    let decomp = SpectralDecomposition {
        walk: *walk,
        lambdas,
        a_coeffs,
        b_coeffs: Vec::new(),
        doob,
        psi,
        log_ratio,
    };
    let b_coeffs: Vec<Vec<f64>> = (1..a)
        .map(|nu| {
            (1..a)
                .map(|z| decomp.pair_weight(z) * decomp.a_coef(nu, a - z))
                .collect()
        })
        .collect();
    Ok(SpectralDecomposition { b_coeffs, ..decomp })
}

impl SpectralDecomposition {
    pub fn walk(&self) -> &WalkSpec {
        &self.walk
    }

    /// Number of modes, `a - 1`.
    pub fn modes(&self) -> usize {
        self.lambdas.len()
    }

    /// Eigenvalues ordered by mode index `nu = 1..a-1`; strictly decreasing.
    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    /// Eigenvalue of mode `nu` (1-based).
    pub fn lambda(&self, nu: usize) -> f64 {
        assert!((1..self.walk.a()).contains(&nu), "mode nu = {nu} out of range");
        self.lambdas[nu - 1]
    }

    /// Ruin-channel coefficient `A_nu(z)`, both indices 1-based.
    pub fn a_coef(&self, nu: usize, z: usize) -> f64 {
        self.a_coeffs[nu - 1][z - 1]
    }

    /// Escape-channel coefficient `B_nu(z)`, both indices 1-based.
    pub fn b_coef(&self, nu: usize, z: usize) -> f64 {
        self.b_coeffs[nu - 1][z - 1]
    }

    /// Bias weight `h(x) = (q/p)^{x/2}` at interior site `x`.
    pub fn doob_weight(&self, x: usize) -> f64 {
        self.doob[x - 1]
    }

    /// Orthonormal eigenfunction value `psi_nu(x)`.
    pub fn psi(&self, nu: usize, x: usize) -> f64 {
        self.psi[nu - 1][x - 1]
    }

    /// Channel-coupling weight `kappa(z) = (p/q)^{a-z}` of the involution
    /// `z -> a - z`.
    pub fn pair_weight(&self, z: usize) -> f64 {
        let a = self.walk.a();
        (-((a - z) as f64) * self.log_ratio).exp()
    }

    /// Coefficient columns for a list of sites, rows indexed by mode. The
    /// output feeds the abstract duality detector.
    pub fn site_columns(&self, sites: &[usize]) -> Result<(CoefficientRows, CoefficientRows)> {
        for &z in sites {
            if z == 0 || z >= self.walk.a() {
                return Err(Error::domain(format!("site {z} is not interior")));
            }
        }
        let a_cols = (1..self.walk.a())
            .map(|nu| sites.iter().map(|&z| self.a_coef(nu, z)).collect())
            .collect();
        let b_cols = (1..self.walk.a())
            .map(|nu| sites.iter().map(|&z| self.b_coef(nu, z)).collect())
            .collect();
        Ok((a_cols, b_cols))
    }
}

/// Spectral transfer function `f_nu(gamma) = lambda_nu (1-gamma) / (1 -
/// lambda_nu (1-gamma))`. The denominator stays positive on the whole open
/// gamma interval because `|lambda_nu| < 1`.
pub fn transfer(decomp: &SpectralDecomposition, nu: usize, gamma: f64) -> Result<f64> {
    if nu == 0 || nu >= decomp.walk.a() {
        return Err(Error::domain(format!(
            "mode nu = {nu} outside 1..={}",
            decomp.walk.a() - 1
        )));
    }
    if !gamma.is_finite() || gamma <= 0.0 || gamma >= 1.0 {
        return Err(Error::domain(format!("gamma = {gamma} outside (0, 1)")));
    }
    let lb = decomp.lambda(nu) * (1.0 - gamma);
    Ok(lb / (1.0 - lb))
}

/// Per-mode weight of the reconstruction series:
/// `sqrt(pq) (1-gamma) / (1 - lambda_nu (1-gamma))`.
///
/// This equals `transfer(nu, gamma) * sqrt(pq) / lambda_nu` wherever
/// `lambda_nu != 0` and continues it through the zero eigenvalue of even
/// domains; under this normalization the coefficient tables reproduce the
/// tridiagonal solutions to machine precision (see the cross-method tests).
fn mode_weight(decomp: &SpectralDecomposition, nu: usize, gamma: f64) -> f64 {
    let walk = &decomp.walk;
    let b = 1.0 - gamma;
    (walk.p() * walk.q()).sqrt() * b / (1.0 - decomp.lambda(nu) * b)
}

fn check_site_gamma(decomp: &SpectralDecomposition, z: usize, gamma: f64) -> Result<()> {
    if z == 0 || z >= decomp.walk.a() {
        return Err(Error::domain(format!(
            "site z = {z} outside 1..={}",
            decomp.walk.a() - 1
        )));
    }
    if !gamma.is_finite() || gamma <= 0.0 || gamma >= 1.0 {
        return Err(Error::domain(format!("gamma = {gamma} outside (0, 1)")));
    }
    Ok(())
}

/// Mode-sum reconstruction of the discounted ruin probability `u(z)`.
pub fn spectral_u(decomp: &SpectralDecomposition, z: usize, gamma: f64) -> Result<f64> {
    check_site_gamma(decomp, z, gamma)?;
    Ok(compensated_sum(
        (1..decomp.walk.a()).map(|nu| decomp.a_coef(nu, z) * mode_weight(decomp, nu, gamma)),
    ))
}

/// Mode-sum reconstruction of the discounted absorption probability `s(z)`.
pub fn spectral_s(decomp: &SpectralDecomposition, z: usize, gamma: f64) -> Result<f64> {
    check_site_gamma(decomp, z, gamma)?;
    Ok(compensated_sum((1..decomp.walk.a()).map(|nu| {
        (decomp.a_coef(nu, z) + decomp.b_coef(nu, z)) * mode_weight(decomp, nu, gamma)
    })))
}

/// Largest deviation over modes of `B_nu(z)` from `kappa(z) A_nu(a-z)`.
///
/// The identity is exact, so any nonzero return is floating-point noise in
/// the tables.
pub fn duality_residual(decomp: &SpectralDecomposition, z: usize) -> f64 {
    let a = decomp.walk.a();
    assert!(z >= 1 && z < a, "site z = {z} outside the interior");
    let kappa = decomp.pair_weight(z);
    (1..a)
        .map(|nu| (decomp.b_coef(nu, z) - kappa * decomp.a_coef(nu, a - z)).abs())
        .fold(0.0, f64::max)
}

/// Numerical-rank test of the coefficient matrix `[A_nu(z_i)]` restricted to
/// `sites`: true when the columns are linearly independent. Singular values
/// below `max_sv * |sites| * 1e-12` count as zero.
pub fn rank_check(decomp: &SpectralDecomposition, sites: &[usize]) -> Result<bool> {
    let a = decomp.walk.a();
    if sites.is_empty() || sites.len() > a - 1 {
        return Err(Error::domain(format!(
            "site count {} must be in 1..={}",
            sites.len(),
            a - 1
        )));
    }
    let mut seen = std::collections::BTreeSet::new();
    for &z in sites {
        if z == 0 || z >= a {
            return Err(Error::domain(format!("site {z} is not interior")));
        }
        if !seen.insert(z) {
            return Err(Error::domain(format!("duplicate site {z}")));
        }
    }
    let matrix = nalgebra::DMatrix::from_fn(a - 1, sites.len(), |row, col| {
        decomp.a_coef(row + 1, sites[col])
    });
    let sv = matrix.singular_values();
    let max_sv = sv.iter().cloned().fold(0.0, f64::max);
    let threshold = max_sv * sites.len() as f64 * 1e-12;
    let rank = sv.iter().filter(|&&s| s > threshold).count();
    Ok(rank == sites.len())
}
