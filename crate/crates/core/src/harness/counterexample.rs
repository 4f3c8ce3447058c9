//! The separating example: a train of fixed-width bumps planted at the
//! covering centers. Its windowed FL^1 norms stay uniformly bounded, yet its
//! derivative never decays, so it fails the pointwise Mikhlin-type check.
//! Both verdicts belong to one report.

use rustfft::num_complex::Complex64;

use crate::coverings::{FrequencyWarp, PartitionFamily, WindowProfile};
use crate::error::{Error, Result};
use crate::fl1::{Fl1Options, FrequencyFn};
use crate::spaces::{mikhlin_check, symbol_class_norm, MikhlinReport, ScalarSymbol};

use super::probes::DoublingCheck;

/// Parameters of the planted bump.
#[derive(Debug, Clone, Copy, serde::Serialize, serde::Deserialize)]
pub struct BumpTrainSpec {
    pub amplitude: f64,
    /// Full support radius of each bump, in frequency units.
    pub width: f64,
}

impl Default for BumpTrainSpec {
    fn default() -> Self {
        BumpTrainSpec { amplitude: 1.0, width: 0.3 }
    }
}

/// The bump-train symbol `H(xi) = sum_k h(xi - c_k)` over all covering
/// centers (dimension 1); evaluation visits only nearby centers.
#[derive(Debug, Clone)]
pub struct BumpTrain {
    warp: FrequencyWarp,
    bump: WindowProfile,
    amplitude: f64,
    width: f64,
}

impl BumpTrain {
    pub fn new(alpha: f64, spec: &BumpTrainSpec) -> Result<Self> {
        let warp = FrequencyWarp::new(alpha)?;
        if spec.width <= 0.0 || spec.amplitude == 0.0 {
            return Err(Error::Config("bump train needs positive width and amplitude".into()));
        }
        // Smooth bump with plateau at half the support radius; its
        // derivatives of all orders are nonzero somewhere.
        let bump = WindowProfile::new(0.5, 1.0, Default::default())?;
        Ok(BumpTrain { warp, bump, amplitude: spec.amplitude, width: spec.width })
    }

    /// Smallest gap between adjacent covering centers near the origin (gaps
    /// grow outward).
    pub fn min_center_gap(&self) -> f64 {
        self.warp.radial(1.0) - self.warp.radial(0.0)
    }

    fn h(&self, u: f64) -> f64 {
        self.amplitude * self.bump.bump(u.abs() / self.width)
    }

    fn h_deriv(&self, u: f64) -> f64 {
        let sign = if u < 0.0 { -1.0 } else { 1.0 };
        self.amplitude * self.bump.bump_deriv(u.abs() / self.width) / self.width * sign
    }

    /// Maximum of `|h'|` and the offset where it is attained.
    pub fn deriv_peak(&self) -> (f64, f64) {
        let mut best = (0.0, 0.0);
        let m = 4096;
        for i in 0..=m {
            let u = self.width * i as f64 / m as f64;
            let d = self.h_deriv(u).abs();
            if d > best.0 {
                best = (d, u);
            }
        }
        best
    }

    fn nearby_centers(&self, xi: f64) -> impl Iterator<Item = f64> + '_ {
        let kappa = self.warp.radial_inv(xi);
        let k0 = kappa.round() as i64;
        (k0 - 2..=k0 + 2).map(|k| self.warp.radial(k as f64))
    }

    pub fn value(&self, xi: f64) -> f64 {
        self.nearby_centers(xi).map(|c| self.h(xi - c)).sum()
    }

    pub fn deriv_value(&self, xi: f64) -> f64 {
        self.nearby_centers(xi).map(|c| self.h_deriv(xi - c)).sum()
    }

    pub fn center(&self, k: i64) -> f64 {
        self.warp.radial(k as f64)
    }
}

impl FrequencyFn for BumpTrain {
    fn eval(&self, xi: &[f64]) -> Complex64 {
        Complex64::new(self.value(xi[0]), 0.0)
    }
}

impl ScalarSymbol for BumpTrain {
    fn value(&self, xi: f64) -> f64 {
        BumpTrain::value(self, xi)
    }
    fn deriv(&self, xi: f64) -> f64 {
        self.deriv_value(xi)
    }
}

/// Joint verdict: membership on the windowed-class side, failure on the
/// pointwise side.
#[derive(Debug, Clone)]
pub struct ClassSeparationReport {
    pub fm_sup_base: f64,
    pub fm_sup_doubled: f64,
    pub fm_check: DoublingCheck,
    pub fm_all_converged: bool,
    /// Per-window weighted FL^1 values on the base lattice.
    pub fm_profile: Vec<(String, f64)>,
    pub mikhlin: MikhlinReport,
    /// `min_k max |H'| near center k`, relative to `max |h'|`: 1 means the
    /// derivative does not decay along the centers.
    pub deriv_floor: f64,
    /// Both verdicts at once: bounded on the windowed side, growing on the
    /// pointwise side.
    pub separated: bool,
}

/// Runs the full separation report on a base family and its truncation
/// doubling.
pub fn class_separation_report(
    spec: &BumpTrainSpec,
    fam_base: &PartitionFamily,
    fam_doubled: &PartitionFamily,
    fl1_opts: &Fl1Options,
    fm_growth_tol: f64,
) -> Result<ClassSeparationReport> {
    if fam_base.dim() != 1 {
        return Err(Error::Config("the separation example is 1d".into()));
    }
    let alpha = fam_base.alpha();
    let train = BumpTrain::new(alpha, spec)?;
    let min_gap = train.min_center_gap();
    if spec.width >= 0.5 * min_gap {
        return Err(Error::Precondition(format!(
            "bump width {} collides with the minimal center gap {min_gap:.4}; need width < {:.4}",
            spec.width,
            0.5 * min_gap
        )));
    }

    let base = symbol_class_norm(&train, 0.0, fam_base, fl1_opts)?;
    let doubled = symbol_class_norm(&train, 0.0, fam_doubled, fl1_opts)?;
    let fm_check = DoublingCheck::new(base.sup, doubled.sup, fm_growth_tol);

    // Pointwise side: sample at the derivative peak next to every center.
    // The pointwise functionals are analytic, so the sweep extends well past
    // the rendered truncation to expose the tail.
    let (h_peak, u_peak) = train.deriv_peak();
    let k_reach = fam_base
        .lattice()
        .indices()
        .iter()
        .map(|k| k.coords(1)[0].abs())
        .max()
        .unwrap_or(0)
        .max(24);
    let mut points = Vec::new();
    let mut deriv_floor = f64::INFINITY;
    for k in -k_reach..=k_reach {
        let c = train.center(k);
        for xi in [c - u_peak, c + u_peak] {
            points.push(xi);
            let local = train.deriv_value(xi).abs();
            deriv_floor = deriv_floor.min(local / h_peak);
        }
    }
    points.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mikhlin = mikhlin_check(&train, 0.0, &points);

    let separated = fm_check.pass && !mikhlin.member;
    Ok(ClassSeparationReport {
        fm_sup_base: base.sup,
        fm_sup_doubled: doubled.sup,
        fm_check,
        fm_all_converged: base.all_converged && doubled.all_converged,
        fm_profile: base
            .entries
            .iter()
            .map(|e| (e.index.label(1), e.weighted))
            .collect(),
        mikhlin,
        deriv_floor,
        separated,
    })
}
