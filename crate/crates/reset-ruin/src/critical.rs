//! Detection of channel duality on reset-site sets and construction of the
//! critical (reset-neutral) distributions it implies.
//!
//! A site set admits a duality when an involution `sigma` on the sites and
//! positive mode-independent weights `kappa(z)` satisfy
//! `B_nu(z) = kappa(z) A_nu(sigma(z))` for every mode. When additionally all
//! pair products `kappa(z) kappa(sigma(z))` share a common value `K` and
//! every fixed point has `kappa = sqrt(K)`, there is a family of reset
//! distributions whose coupling constant is independent of the resetting
//! rate, pinned at `C* = 1 / (1 + sqrt(K))`. For the biased walk the duality
//! is exactly the mirror symmetry `z + z' = a`, `K = (p/q)^a`, and `C*`
//! equals the classical ruin probability from the midpoint.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::renewal::solve_discounted;
use crate::spectral::SpectralDecomposition;
use crate::walk::{ResetSpec, WalkSpec};

/// Default relative-spread tolerance for the ratio constancy test in
/// [`detect_duality`]. The identity is exact in real arithmetic; the
/// tolerance only absorbs floating-point noise.
pub const DEFAULT_DUALITY_TOL: f64 = 1e-9;

/// Relative tolerance for the pair-product and fixed-point consistency
/// checks recorded in the certificate.
const CONSISTENCY_REL_TOL: f64 = 1e-10;

/// Evidence that a site set admits a channel duality.
#[derive(Debug, Clone)]
pub struct DualityCertificate {
    pairing: Vec<(usize, usize)>,
    kappa: BTreeMap<usize, f64>,
    k: f64,
    neutral_sites: Vec<usize>,
    h3_ok: bool,
    h4_ok: bool,
}

impl DualityCertificate {
    /// Proper pairs `(z, sigma(z))` with `z < sigma(z)`.
    pub fn pairing(&self) -> &[(usize, usize)] {
        &self.pairing
    }

    /// Coupling weight `kappa(z)` per site.
    pub fn kappa(&self) -> &BTreeMap<usize, f64> {
        &self.kappa
    }

    /// Common pair product `K` (averaged over pairs; squared fixed-point
    /// weight when the set has no proper pair).
    pub fn k(&self) -> f64 {
        self.k
    }

    /// Fixed points of the involution.
    pub fn neutral_sites(&self) -> &[usize] {
        &self.neutral_sites
    }

    /// True when every pair product agrees with `K` to relative 1e-10.
    pub fn h3_ok(&self) -> bool {
        self.h3_ok
    }

    /// True when every fixed point has `kappa = sqrt(K)` to relative 1e-10.
    pub fn h4_ok(&self) -> bool {
        self.h4_ok
    }

    /// Partner of `z` under the involution, if `z` is one of the sites.
    pub fn sigma(&self, z: usize) -> Option<usize> {
        if self.neutral_sites.contains(&z) {
            return Some(z);
        }
        self.pairing.iter().find_map(|&(x, y)| {
            if x == z {
                Some(y)
            } else if y == z {
                Some(x)
            } else {
                None
            }
        })
    }
}

/// Searches coefficient matrices for a channel duality on `sites`.
///
/// `a_coeffs` and `b_coeffs` are indexed `[mode][site]` with columns aligned
/// to `sites`. For each site the candidate partners are scanned; a partner
/// is accepted when the ratios `B_nu(z) / A_nu(z')` are positive and
/// constant (relative spread at most `tol`) over every mode whose
/// denominator exceeds `tol * max|A|`. Modes below that threshold are not
/// constrained. A certificate is returned only when the accepted partners
/// form a full involution.
///
/// The matrices are arbitrary, so the engine applies beyond the walk's own
/// tables. An empty result then means no reset distribution with full
/// support on `sites` can hold the coupling constant rate-independent,
/// provided each escape-channel row is proportional to a single ruin-channel
/// column (true for the walk tables by construction); that structural
/// premise is documented here rather than enforced on caller-supplied
/// matrices.
pub fn detect_duality(
    a_coeffs: &[Vec<f64>],
    b_coeffs: &[Vec<f64>],
    sites: &[usize],
    tol: f64,
) -> Result<Option<DualityCertificate>> {
    let modes = a_coeffs.len();
    if modes == 0 || b_coeffs.len() != modes {
        return Err(Error::domain(format!(
            "coefficient matrices have {} and {} mode rows",
            modes,
            b_coeffs.len()
        )));
    }
    let m = sites.len();
    if m == 0 {
        return Err(Error::domain("empty site list"));
    }
    for (name, mat) in [("A", a_coeffs), ("B", b_coeffs)] {
        if let Some(row) = mat.iter().find(|row| row.len() != m) {
            return Err(Error::domain(format!(
                "{name} row has {} columns for {m} sites",
                row.len()
            )));
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    if !sites.iter().all(|&z| seen.insert(z)) {
        return Err(Error::domain("duplicate sites"));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::domain(format!("tolerance {tol} must be positive")));
    }

    let a_norm = a_coeffs
        .iter()
        .flat_map(|row| row.iter().map(|v| v.abs()))
        .fold(0.0, f64::max);
    if a_norm == 0.0 {
        return Ok(None);
    }

    let mut partner = BTreeMap::new();
    let mut kappa = BTreeMap::new();
    'outer: for (i, &z) in sites.iter().enumerate() {
        for (j, &zp) in sites.iter().enumerate() {
            let ratios: Vec<f64> = (0..modes)
                .filter(|&nu| a_coeffs[nu][j].abs() > tol * a_norm)
                .map(|nu| b_coeffs[nu][i] / a_coeffs[nu][j])
                .collect();
            if ratios.is_empty() {
                continue;
            }
            let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
            if mean <= 0.0 {
                continue;
            }
            let spread = ratios.iter().cloned().fold(f64::MIN, f64::max)
                - ratios.iter().cloned().fold(f64::MAX, f64::min);
            if spread / mean <= tol {
                partner.insert(z, zp);
                kappa.insert(z, mean);
                continue 'outer;
            }
        }
        return Ok(None);
    }

    // Accepted partners must close into an involution.
    if !sites.iter().all(|&z| partner[&partner[&z]] == z) {
        return Ok(None);
    }

    let mut pairing: Vec<(usize, usize)> = sites
        .iter()
        .filter(|&&z| partner[&z] > z)
        .map(|&z| (z, partner[&z]))
        .collect();
    pairing.sort_unstable();
    let neutral_sites: Vec<usize> =
        sites.iter().copied().filter(|&z| partner[&z] == z).collect();

    let products: Vec<f64> = pairing.iter().map(|&(x, y)| kappa[&x] * kappa[&y]).collect();
    let (k, h3_ok) = if products.is_empty() {
        (kappa[&neutral_sites[0]].powi(2), true)
    } else {
        let k = products.iter().sum::<f64>() / products.len() as f64;
        let spread = products.iter().cloned().fold(f64::MIN, f64::max)
            - products.iter().cloned().fold(f64::MAX, f64::min);
        (k, spread.abs() <= CONSISTENCY_REL_TOL * k.abs())
    };
    let h4_ok = neutral_sites
        .iter()
        .all(|z0| (kappa[z0] - k.sqrt()).abs() <= CONSISTENCY_REL_TOL * k.sqrt());

    Ok(Some(DualityCertificate { pairing, kappa, k, neutral_sites: {
        let mut n = neutral_sites;
        n.sort_unstable();
        n
    }, h3_ok, h4_ok }))
}

/// Runs [`detect_duality`] on the walk's own coefficient tables.
pub fn detect_duality_for_walk(
    decomp: &SpectralDecomposition,
    sites: &[usize],
    tol: f64,
) -> Result<Option<DualityCertificate>> {
    let (a_cols, b_cols) = decomp.site_columns(sites)?;
    detect_duality(&a_cols, &b_cols, sites, tol)
}

/// Partition of a symmetric site set into mirror pairs plus at most one
/// midpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricPartition {
    pub pairs: Vec<(usize, usize)>,
    pub neutral: Option<usize>,
}

/// Arithmetic test for closure of `sites` under `z -> a - z`.
///
/// Sites must be distinct and interior. Returns the mirror pairs (lower site
/// first) and the midpoint when present; `None` when the set is not closed.
/// This is the fast path equivalent to [`detect_duality`] on the walk's
/// coefficient tables.
pub fn check_symmetry(walk: &WalkSpec, sites: &[usize]) -> Option<SymmetricPartition> {
    let a = walk.a();
    let set: std::collections::BTreeSet<usize> = sites.iter().copied().collect();
    assert_eq!(set.len(), sites.len(), "sites must be distinct");
    assert!(
        set.iter().all(|&z| z >= 1 && z < a),
        "sites must be interior to (0, {a})"
    );
    let mut pairs = Vec::new();
    let mut neutral = None;
    for &z in &set {
        if 2 * z == a {
            neutral = Some(z);
        } else if !set.contains(&(a - z)) {
            return None;
        } else if z < a - z {
            pairs.push((z, a - z));
        }
    }
    Some(SymmetricPartition { pairs, neutral })
}

/// The rate-independent coupling value `C* = (q/p)^{a/2} / (1 + (q/p)^{a/2})`
/// shared by every symmetric configuration of the walk. Equals the classical
/// ruin probability from the midpoint (continued analytically for odd `a`).
pub fn invariant_constant(walk: &WalkSpec) -> f64 {
    let t = (walk.q() / walk.p()).powf(walk.a() as f64 / 2.0);
    t / (1.0 + t)
}

/// The family of critical reset distributions on a symmetric site set.
///
/// The duality fixes only the weight ratio inside each mirror pair and
/// leaves the midpoint weight free; how mass splits across multiple pairs
/// is a further gauge freedom. [`CriticalFamily::materialize`] uses the
/// convention of equal mass per pair, and
/// [`CriticalFamily::materialize_with_pair_masses`] accepts an explicit
/// split.
#[derive(Debug, Clone)]
pub struct CriticalFamily {
    walk: WalkSpec,
    sites: Vec<usize>,
    pairs: Vec<(usize, usize)>,
    ratios: Vec<f64>,
    neutral_site: Option<usize>,
    c_star: f64,
}

impl CriticalFamily {
    pub fn walk(&self) -> &WalkSpec {
        &self.walk
    }

    pub fn sites(&self) -> &[usize] {
        &self.sites
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Weight ratios `pi(z) / pi(a - z)` aligned with [`Self::pairs`], the
    /// lower site of each pair being the named member.
    pub fn pair_ratios(&self) -> &[f64] {
        &self.ratios
    }

    pub fn neutral_site(&self) -> Option<usize> {
        self.neutral_site
    }

    /// The invariant coupling value attained by every member.
    pub fn c_star(&self) -> f64 {
        self.c_star
    }

    /// Builds a member with mass `1 - neutral_weight` split equally across
    /// the pairs and `neutral_weight` on the midpoint.
    pub fn materialize(&self, neutral_weight: f64) -> Result<ResetSpec> {
        let masses =
            vec![(1.0 - neutral_weight) / self.pairs.len() as f64; self.pairs.len()];
        self.materialize_with_pair_masses(&masses, neutral_weight)
    }

    /// Builds a member with an explicit mass per pair. The masses plus the
    /// neutral weight must sum to one.
    pub fn materialize_with_pair_masses(
        &self,
        pair_masses: &[f64],
        neutral_weight: f64,
    ) -> Result<ResetSpec> {
        if !(0.0..1.0).contains(&neutral_weight) {
            return Err(Error::domain(format!(
                "neutral weight {neutral_weight} outside [0, 1)"
            )));
        }
        if neutral_weight > 0.0 && self.neutral_site.is_none() {
            return Err(Error::domain(
                "positive neutral weight but the configuration has no midpoint site",
            ));
        }
        if pair_masses.len() != self.pairs.len() {
            return Err(Error::domain(format!(
                "{} pair masses for {} pairs",
                pair_masses.len(),
                self.pairs.len()
            )));
        }
        if pair_masses.iter().any(|&m| m.is_nan() || m < 0.0) {
            return Err(Error::domain("pair masses must be non-negative"));
        }
        let total: f64 = pair_masses.iter().sum::<f64>() + neutral_weight;
        if (total - 1.0).abs() > crate::walk::WEIGHT_SUM_TOL {
            return Err(Error::domain(format!(
                "pair masses plus neutral weight sum to {total}, not 1"
            )));
        }

        let mut sites = Vec::new();
        let mut weights = Vec::new();
        for ((&(low, high), &ratio), &mass) in
            self.pairs.iter().zip(&self.ratios).zip(pair_masses)
        {
            sites.push(low);
            weights.push(mass * ratio / (1.0 + ratio));
            sites.push(high);
            weights.push(mass / (1.0 + ratio));
        }
        if let Some(z0) = self.neutral_site {
            sites.push(z0);
            weights.push(neutral_weight);
        }
        ResetSpec::new(&self.walk, &sites, &weights)
    }
}

/// Constructs the critical family on a symmetric site set.
///
/// The pair ratios come from the general duality form
/// `sqrt(kappa(z') / kappa(z))` with `kappa(z) = (p/q)^{a-z}`, which for the
/// walk reduces to `(q/p)^{a/2 - z}`.
pub fn critical_family(walk: &WalkSpec, sites: &[usize]) -> Result<CriticalFamily> {
    let partition = check_symmetry(walk, sites).ok_or_else(|| {
        Error::Symmetry(format!(
            "sites {sites:?} are not closed under z -> {} - z",
            walk.a()
        ))
    })?;
    let a = walk.a();
    let log_ratio = walk.log_ratio(); // ln(q/p)
    let kappa = |z: usize| (-((a - z) as f64) * log_ratio).exp(); // (p/q)^(a-z)
    let ratios: Vec<f64> = partition
        .pairs
        .iter()
        .map(|&(low, high)| (kappa(high) / kappa(low)).sqrt())
        .collect();
    let mut sorted_sites = sites.to_vec();
    sorted_sites.sort_unstable();
    Ok(CriticalFamily {
        walk: *walk,
        sites: sorted_sites,
        pairs: partition.pairs,
        ratios,
        neutral_site: partition.neutral,
        c_star: invariant_constant(walk),
    })
}

/// Value-based flatness proxy: `max - min` of the coupling constant over a
/// gamma grid. Vanishes (to rounding) exactly on critical distributions.
pub fn flatness_score(walk: &WalkSpec, reset: &ResetSpec, gamma_grid: &[f64]) -> Result<f64> {
    if gamma_grid.len() < 2 {
        return Err(Error::domain("flatness needs at least two grid points"));
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &gamma in gamma_grid {
        let c = solve_discounted(walk, gamma)?.coupling(reset).c;
        lo = lo.min(c);
        hi = hi.max(c);
    }
    Ok(hi - lo)
}
