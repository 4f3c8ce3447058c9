//! Overlap geometry of dilated windows (dimension 1).
//!
//! For a loss exponent `delta`, window `k` is dilated by
//! `<k>^{delta/(1-alpha)^2}`; the set of windows whose supports meet the
//! dilated support drives both the cardinality asymptotics and the distance
//! bound that the boundedness proof machinery rests on.

use crate::coverings::{AlphaLattice, LatticeIndex, PartitionFamily, WindowProfile};
use crate::error::{Error, Result};
use crate::fit::log_log_tail_slope;

/// Support interval of window `l` on the frequency axis (open).
fn support_interval(lattice: &AlphaLattice, profile: &WindowProfile, l: i64) -> (f64, f64) {
    let warp = lattice.warp();
    let lo = warp.radial(l as f64 - profile.r2);
    let hi = warp.radial(l as f64 + profile.r2);
    (lo, hi)
}

/// The dilation factor `<k>^{delta/(1-alpha)^2}`.
pub fn dilation_factor(k: &LatticeIndex, delta: f64, alpha: f64) -> f64 {
    k.bracket().powf(delta / ((1.0 - alpha) * (1.0 - alpha)))
}

/// Membership and geometry stats of one dilated-overlap set.
#[derive(Debug, Clone)]
pub struct DilationOverlap {
    pub k: LatticeIndex,
    pub delta: f64,
    pub members: Vec<LatticeIndex>,
    /// Range of `<l> / <k>^{1 + delta/(1-alpha)}` over members.
    pub bracket_ratio_min: f64,
    pub bracket_ratio_max: f64,
    /// `max_l |c_k - <k>^{-d} c_l| / rho_k`.
    pub distance_max: f64,
}

impl DilationOverlap {
    pub fn count(&self) -> usize {
        self.members.len()
    }
}

/// Computes the overlap set by interval arithmetic on the warp map.
///
/// Requires the dilated support to stay inside the region covered by the
/// truncated lattice, so no member is missed.
pub fn dilation_overlap_set(
    k: LatticeIndex,
    delta: f64,
    lattice: &AlphaLattice,
    profile: &WindowProfile,
) -> Result<DilationOverlap> {
    if lattice.dim() != 1 {
        return Err(Error::Config("dilation overlap sets are 1d".into()));
    }
    if delta < 0.0 {
        return Err(Error::Config(format!("delta must be nonnegative, got {delta}")));
    }
    let alpha = lattice.alpha();
    let warp = lattice.warp();
    let t = dilation_factor(&k, delta, alpha);
    let (lo_k, hi_k) = support_interval(lattice, profile, k.coords(1)[0]);
    let (dlo, dhi) = (t * lo_k, t * hi_k);

    let covered = warp.radial(lattice.first_excluded_norm() - profile.r2);
    if dlo.abs().max(dhi.abs()) > covered {
        return Err(Error::Precondition(format!(
            "dilated window of k={} reaches |xi| = {:.3} beyond the covered region {covered:.3}; \
             enlarge xi_max",
            k.label(1),
            dlo.abs().max(dhi.abs())
        )));
    }

    let mut members = Vec::new();
    for l in lattice.indices() {
        let (lo_l, hi_l) = support_interval(lattice, profile, l.coords(1)[0]);
        if lo_l < dhi && dlo < hi_l {
            members.push(*l);
        }
    }
    Ok(stats_for(k, delta, lattice, members))
}

fn stats_for(
    k: LatticeIndex,
    delta: f64,
    lattice: &AlphaLattice,
    members: Vec<LatticeIndex>,
) -> DilationOverlap {
    let alpha = lattice.alpha();
    let t = dilation_factor(&k, delta, alpha);
    let bracket_scale = k.bracket().powf(1.0 + delta / (1.0 - alpha));
    let c_k = lattice.center(&k)[0];
    let rho_k = lattice.radius(&k);
    let mut rmin = f64::INFINITY;
    let mut rmax = 0.0_f64;
    let mut dist = 0.0_f64;
    for l in &members {
        let ratio = l.bracket() / bracket_scale;
        rmin = rmin.min(ratio);
        rmax = rmax.max(ratio);
        let c_l = lattice.center(l)[0];
        dist = dist.max((c_k - c_l / t).abs() / rho_k);
    }
    DilationOverlap {
        k,
        delta,
        members,
        bracket_ratio_min: rmin,
        bracket_ratio_max: rmax,
        distance_max: dist,
    }
}

/// Brute-force oracle for the same set: dense deterministic sampling of each
/// candidate support, testing the pointwise membership predicate through the
/// inverse warp instead of interval arithmetic.
pub fn brute_force_overlap_set(
    k: LatticeIndex,
    delta: f64,
    lattice: &AlphaLattice,
    profile: &WindowProfile,
    samples_per_window: usize,
) -> Result<Vec<LatticeIndex>> {
    if lattice.dim() != 1 {
        return Err(Error::Config("dilation overlap sets are 1d".into()));
    }
    let alpha = lattice.alpha();
    let warp = lattice.warp();
    let t = dilation_factor(&k, delta, alpha);
    let kf = k.coords(1)[0] as f64;
    let r2 = profile.r2;
    let mut members = Vec::new();
    for l in lattice.indices() {
        let lf = l.coords(1)[0] as f64;
        let mut hit = false;
        // Uniform interior samples plus a geometric ladder against both
        // support edges, to catch thin overlap slivers.
        let mut kappas: Vec<f64> = (1..samples_per_window)
            .map(|i| lf - r2 + 2.0 * r2 * i as f64 / samples_per_window as f64)
            .collect();
        for e in 1..40 {
            let off = r2 * (1.0 - (0.5_f64).powi(e));
            kappas.push(lf - off);
            kappas.push(lf + off);
        }
        for kappa in kappas {
            if (kappa - lf).abs() >= r2 {
                continue;
            }
            let xi = warp.radial(kappa);
            let pulled = warp.radial_inv(xi / t);
            if (pulled - kf).abs() < r2 {
                hit = true;
                break;
            }
        }
        if hit {
            members.push(*l);
        }
    }
    Ok(members)
}

/// Overlap neighbors of `k` within the truncated lattice: every `l` whose
/// window support meets the support of window `k`.
pub fn overlap_neighbors(k: &LatticeIndex, fam: &PartitionFamily) -> Vec<LatticeIndex> {
    let n = fam.dim();
    let r2 = fam.profile().r2;
    let kc = k.coords(n);
    fam.lattice()
        .indices()
        .iter()
        .filter(|l| {
            let lc = l.coords(n);
            let mut d2 = 0.0;
            for a in 0..n {
                let d = (kc[a] - lc[a]) as f64;
                d2 += d * d;
            }
            d2.sqrt() < 2.0 * r2
        })
        .copied()
        .collect()
}

/// Log-log slope of the overlap-set cardinality against `<k>`, fitted over
/// probe indices.
pub fn overlap_count_slope(
    delta: f64,
    lattice: &AlphaLattice,
    profile: &WindowProfile,
    probe_ks: &[i64],
) -> Result<Option<f64>> {
    let mut pairs = Vec::new();
    for &k in probe_ks {
        let idx = LatticeIndex::new1(k);
        let set = dilation_overlap_set(idx, delta, lattice, profile)?;
        pairs.push((idx.bracket(), set.count() as f64));
    }
    Ok(log_log_tail_slope(&pairs))
}
