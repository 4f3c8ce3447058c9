//! Construction of the smooth partition of unity subordinate to an
//! alpha-covering.
//!
//! Windows are exact translates in warped index coordinates: window `k` is
//! `B(|Phi^{-1}(xi) - k|)` normalized by the sum over all integer translates,
//! where `B` is the profile bump and `Phi` the covering warp. At `alpha = 0`
//! this is literally `g((xi - k)/1)` normalized; for `alpha > 0` the warp
//! supplies the `<k>^{alpha/(1-alpha)}`-scaled geometry, and support balls
//! cover for every alpha with one fixed profile, which a fixed profile in raw
//! frequency coordinates cannot achieve (consecutive center gaps grow like
//! `(1 + alpha/(1-alpha))` times the scale).

use rayon::prelude::*;
use rustfft::num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fl1::FrequencyFn;
use crate::grid::{Grid, SampledFunction, Side};

use super::lattice::{AlphaLattice, LatticeIndex};
use super::profile::WindowProfile;
use super::warp::FrequencyWarp;

/// Distance from a warped coordinate to a lattice index.
fn dist_to_index(kappa: &[f64], k: &LatticeIndex, n: usize) -> f64 {
    let kc = k.coords(n);
    let mut s = 0.0;
    for (a, b) in kappa.iter().zip(kc) {
        let d = a - *b as f64;
        s += d * d;
    }
    s.sqrt()
}

/// Sum of profile bumps over all integer translates near `kappa`.
fn translate_sum(kappa: &[f64], profile: &WindowProfile, n: usize) -> f64 {
    let r2 = profile.r2;
    let mut total = 0.0;
    match n {
        1 => {
            let lo = (kappa[0] - r2).ceil() as i64;
            let hi = (kappa[0] + r2).floor() as i64;
            for l in lo..=hi {
                total += profile.bump(kappa[0] - l as f64);
            }
        }
        _ => {
            let lo0 = (kappa[0] - r2).ceil() as i64;
            let hi0 = (kappa[0] + r2).floor() as i64;
            let lo1 = (kappa[1] - r2).ceil() as i64;
            let hi1 = (kappa[1] + r2).floor() as i64;
            for l0 in lo0..=hi0 {
                for l1 in lo1..=hi1 {
                    let d0 = kappa[0] - l0 as f64;
                    let d1 = kappa[1] - l1 as f64;
                    total += profile.bump((d0 * d0 + d1 * d1).sqrt());
                }
            }
        }
    }
    total
}

/// Value of the normalized window `k` at a frequency point.
pub fn window_value(
    warp: &FrequencyWarp,
    profile: &WindowProfile,
    k: &LatticeIndex,
    n: usize,
    xi: &[f64],
) -> f64 {
    let kappa = warp.to_index(xi);
    let d = dist_to_index(&kappa[..n], k, n);
    if d >= profile.r2 {
        return 0.0;
    }
    let w = profile.bump(d);
    if w == 0.0 {
        return 0.0;
    }
    let denom = translate_sum(&kappa[..n], profile, n);
    w / denom
}

/// Analytic evaluator of one window; cheap to copy and safe to share.
#[derive(Debug, Clone, Copy)]
pub struct WindowEval {
    warp: FrequencyWarp,
    profile: WindowProfile,
    k: LatticeIndex,
    n: usize,
}

impl WindowEval {
    pub fn value(&self, xi: &[f64]) -> f64 {
        window_value(&self.warp, &self.profile, &self.k, self.n, xi)
    }

    pub fn index(&self) -> LatticeIndex {
        self.k
    }
}

impl FrequencyFn for WindowEval {
    fn eval(&self, xi: &[f64]) -> Complex64 {
        Complex64::new(self.value(xi), 0.0)
    }
}

/// Samples of one window on the shared grid: a dense patch over the support
/// bounding box. Everything outside the patch is zero.
#[derive(Debug, Clone)]
pub struct SparseWindow {
    start: [usize; 2],
    shape: [usize; 2],
    values: Vec<f64>,
    support_radius: f64,
}

impl SparseWindow {
    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    /// Per-axis start index of the patch in the shared grid.
    pub fn start(&self) -> [usize; 2] {
        self.start
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn shape(&self) -> [usize; 2] {
        self.shape
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Visits `(flat_grid_index, window_value)` over the patch, row-major.
    pub fn for_each_indexed(&self, grid: &Grid, mut f: impl FnMut(usize, f64)) {
        let n_axis = grid.samples_per_axis();
        match grid.dim() {
            1 => {
                for (r, v) in self.values.iter().enumerate() {
                    f(self.start[0] + r, *v);
                }
            }
            _ => {
                for r in 0..self.shape[0] {
                    for c in 0..self.shape[1] {
                        let flat = (self.start[0] + r) * n_axis + self.start[1] + c;
                        f(flat, self.values[r * self.shape[1] + c]);
                    }
                }
            }
        }
    }

    /// Pointwise product of the window with a spectrum on the same grid.
    pub fn multiply_spectrum(&self, spectrum: &SampledFunction) -> SampledFunction {
        let mut out = SampledFunction::zeros(*spectrum.grid());
        let src = spectrum.values();
        let dst = out.values_mut();
        self.for_each_indexed(spectrum.grid(), |flat, v| {
            if v != 0.0 {
                dst[flat] = src[flat] * v;
            }
        });
        out
    }
}

/// A certified-constructible partition of unity over a truncated lattice.
#[derive(Debug, Clone)]
pub struct PartitionFamily {
    lattice: AlphaLattice,
    profile: WindowProfile,
    grid: Grid,
    windows: Vec<SparseWindow>,
    covered_radius: f64,
    support_radius_c: f64,
    plateau_c1: f64,
    max_overlap: usize,
}

impl PartitionFamily {
    /// The frequency extent needed to hold every window support.
    pub fn required_extent(lattice: &AlphaLattice, profile: &WindowProfile) -> f64 {
        let n = lattice.dim();
        let mut needed = 0.0_f64;
        for k in lattice.indices() {
            let s = support_radius(lattice.warp(), profile, k, n);
            let c = lattice.center(k);
            for a in 0..n {
                needed = needed.max(c[a].abs() + s);
            }
        }
        needed
    }

    /// A frequency grid of the given period just large enough for the
    /// family (power-of-two samples).
    pub fn auto_grid(lattice: &AlphaLattice, profile: &WindowProfile, period: f64) -> Result<Grid> {
        let needed = Self::required_extent(lattice, profile);
        let samples =
            ((((needed * period) + 2.0) * 2.0).ceil() as usize).next_power_of_two().max(4);
        Grid::new(lattice.dim(), samples, period, Side::Frequency)
    }

    /// Builds and renders the family on a shared frequency grid.
    pub fn build(lattice: AlphaLattice, grid: Grid, profile: WindowProfile) -> Result<Self> {
        let n = lattice.dim();
        if grid.side() != Side::Frequency {
            return Err(Error::Config("partition grid must be frequency-side".into()));
        }
        if grid.dim() != n {
            return Err(Error::Config(format!(
                "grid dimension {} does not match lattice dimension {n}",
                grid.dim()
            )));
        }
        if !profile.covers_unit_lattice(n) {
            // The deepest holes of the unit lattice sit at half-integer
            // corners; name the worst frequency there.
            let hole = [0.5; 2];
            let worst = lattice.warp().to_freq(&hole[..n]);
            return Err(Error::CoveringGap { worst_xi: worst[..n].to_vec() });
        }

        let support_radii: Vec<f64> = lattice
            .indices()
            .iter()
            .map(|k| support_radius(lattice.warp(), &profile, k, n))
            .collect();

        // Every support must sit strictly inside the representable band.
        let mut extent_needed = 0.0_f64;
        for (k, s) in lattice.indices().iter().zip(&support_radii) {
            let c = lattice.center(k);
            for a in 0..n {
                extent_needed = extent_needed.max(c[a].abs() + s);
            }
        }
        let usable = (grid.samples_per_axis() as f64 / 2.0 - 1.0) * grid.dxi();
        if extent_needed > usable {
            let required =
                (((extent_needed * grid.period() + 2.0) * 2.0).ceil() as usize).next_power_of_two();
            return Err(Error::Config(format!(
                "grid extent {usable:.3} cannot hold the outermost window (needs {extent_needed:.3}); \
                 at L = {} use N >= {required}",
                grid.period()
            )));
        }

        let windows: Vec<SparseWindow> = lattice
            .indices()
            .par_iter()
            .zip(&support_radii)
            .map(|(k, s)| render_window(&lattice, &profile, &grid, k, *s))
            .collect::<Result<_>>()?;

        let kappa_cov = lattice.first_excluded_norm() - profile.r2;
        let covered_radius = if kappa_cov > 0.0 { lattice.warp().radial(kappa_cov) } else { 0.0 };
        let support_radius_c = lattice
            .indices()
            .iter()
            .zip(&support_radii)
            .map(|(k, s)| s / lattice.radius(k))
            .fold(0.0, f64::max);
        let plateau_c1 = plateau_constant(&lattice, &profile, n);
        let max_overlap = max_overlap_count(&profile, n);

        Ok(PartitionFamily {
            lattice,
            profile,
            grid,
            windows,
            covered_radius,
            support_radius_c,
            plateau_c1,
            max_overlap,
        })
    }

    pub fn lattice(&self) -> &AlphaLattice {
        &self.lattice
    }

    pub fn profile(&self) -> &WindowProfile {
        &self.profile
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn alpha(&self) -> f64 {
        self.lattice.alpha()
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn len(&self) -> usize {
        self.windows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.windows.is_empty()
    }

    pub fn windows(&self) -> &[SparseWindow] {
        &self.windows
    }

    pub fn window(&self, pos: usize) -> &SparseWindow {
        &self.windows[pos]
    }

    pub fn window_eval(&self, pos: usize) -> WindowEval {
        WindowEval {
            warp: *self.lattice.warp(),
            profile: self.profile,
            k: self.lattice.indices()[pos],
            n: self.lattice.dim(),
        }
    }

    pub fn position(&self, k: &LatticeIndex) -> Option<usize> {
        self.lattice.indices().binary_search(k).ok()
    }

    /// Radius of the frequency ball on which the truncated family provably
    /// sums to one.
    pub fn covered_radius(&self) -> f64 {
        self.covered_radius
    }

    /// The uniform rescaled-support constant: every window, pulled back to
    /// unit scale around its center, is supported in a ball of this radius.
    pub fn support_radius_c(&self) -> f64 {
        self.support_radius_c
    }

    /// The realized plateau constant: every window equals 1 on
    /// `B(center, plateau_c1 * radius)`.
    pub fn plateau_c1(&self) -> f64 {
        self.plateau_c1
    }

    /// Maximum number of windows meeting at any frequency.
    pub fn max_overlap(&self) -> usize {
        self.max_overlap
    }

    /// Sum of all window samples on the shared grid, accumulated in index
    /// order.
    pub fn sum_of_windows(&self) -> Vec<f64> {
        let mut acc = vec![0.0; self.grid.len()];
        for w in &self.windows {
            w.for_each_indexed(&self.grid, |flat, v| acc[flat] += v);
        }
        acc
    }
}

/// Upper bound on `max |Phi(kappa) - Phi(k)|` over `|kappa - k| <= r2`.
fn support_radius(
    warp: &FrequencyWarp,
    profile: &WindowProfile,
    k: &LatticeIndex,
    n: usize,
) -> f64 {
    let r2 = profile.r2;
    match n {
        1 => {
            let kf = k.coords(1)[0] as f64;
            let c = warp.radial(kf);
            (warp.radial(kf + r2) - c).abs().max((warp.radial(kf - r2) - c).abs())
        }
        _ => {
            let kf = [k.coords(2)[0] as f64, k.coords(2)[1] as f64];
            let c = warp.to_freq(&kf);
            let mut best = 0.0_f64;
            let m = 256;
            for i in 0..m {
                let th = 2.0 * std::f64::consts::PI * i as f64 / m as f64;
                let p = [kf[0] + r2 * th.cos(), kf[1] + r2 * th.sin()];
                let img = warp.to_freq(&p);
                let d0 = img[0] - c[0];
                let d1 = img[1] - c[1];
                best = best.max((d0 * d0 + d1 * d1).sqrt());
            }
            best * (1.0 + 1e-9) + 1e-9
        }
    }
}

fn render_window(
    lattice: &AlphaLattice,
    profile: &WindowProfile,
    grid: &Grid,
    k: &LatticeIndex,
    s: f64,
) -> Result<SparseWindow> {
    let n = lattice.dim();
    let n_axis = grid.samples_per_axis();
    let half = (n_axis / 2) as i64;
    let period = grid.period();
    let c = lattice.center(k);
    let mut start = [0usize; 2];
    let mut shape = [1usize; 2];
    for a in 0..n {
        let m_lo = ((c[a] - s) * period - 1e-9).ceil() as i64;
        let m_hi = ((c[a] + s) * period + 1e-9).floor() as i64;
        let m_lo = m_lo.max(-half);
        let m_hi = m_hi.min(half - 1);
        if m_hi - m_lo < 1 {
            return Err(Error::Config(format!(
                "window {} spans fewer than 2 grid samples; refine the grid",
                k.label(n)
            )));
        }
        start[a] = (m_lo + half) as usize;
        shape[a] = (m_hi - m_lo + 1) as usize;
    }
    let warp = lattice.warp();
    let mut values = Vec::with_capacity(shape[0] * shape[1]);
    match n {
        1 => {
            for r in 0..shape[0] {
                let xi = [grid.axis_coord(start[0] + r)];
                values.push(window_value(warp, profile, k, n, &xi));
            }
        }
        _ => {
            for r in 0..shape[0] {
                for cc in 0..shape[1] {
                    let xi = [grid.axis_coord(start[0] + r), grid.axis_coord(start[1] + cc)];
                    values.push(window_value(warp, profile, k, n, &xi));
                }
            }
        }
    }
    Ok(SparseWindow { start, shape, values, support_radius: s })
}

/// Largest `C1` with `eta_k = 1` on `B(center, C1 * radius)` for every `k`.
fn plateau_constant(lattice: &AlphaLattice, profile: &WindowProfile, n: usize) -> f64 {
    let p = profile.r1.min(1.0 - profile.r2);
    if p <= 0.0 {
        return 0.0;
    }
    let warp = lattice.warp();
    let mut best = f64::INFINITY;
    for k in lattice.indices() {
        let mut local = f64::INFINITY;
        match n {
            1 => {
                let kf = k.coords(1)[0] as f64;
                let c = warp.radial(kf);
                for sgn in [-1.0, 1.0] {
                    local = local.min((warp.radial(kf + sgn * p) - c).abs());
                }
            }
            _ => {
                let kf = [k.coords(2)[0] as f64, k.coords(2)[1] as f64];
                let c = warp.to_freq(&kf);
                for i in 0..16 {
                    let th = 2.0 * std::f64::consts::PI * i as f64 / 16.0;
                    let q = [kf[0] + p * th.cos(), kf[1] + p * th.sin()];
                    let img = warp.to_freq(&q);
                    let d0 = img[0] - c[0];
                    let d1 = img[1] - c[1];
                    local = local.min((d0 * d0 + d1 * d1).sqrt());
                }
            }
        }
        best = best.min(local / lattice.radius(k));
    }
    best
}

/// Maximum overlap count: the number of unit-lattice points within `r2` of
/// any point, found by scanning one periodicity cell.
fn max_overlap_count(profile: &WindowProfile, n: usize) -> usize {
    let r2 = profile.r2;
    let count_at = |kappa: &[f64]| -> usize {
        let mut c = 0usize;
        let lo0 = (kappa[0] - r2).ceil() as i64;
        let hi0 = (kappa[0] + r2).floor() as i64;
        match n {
            1 => {
                for l in lo0..=hi0 {
                    if (kappa[0] - l as f64).abs() < r2 {
                        c += 1;
                    }
                }
            }
            _ => {
                let lo1 = (kappa[1] - r2).ceil() as i64;
                let hi1 = (kappa[1] + r2).floor() as i64;
                for l0 in lo0..=hi0 {
                    for l1 in lo1..=hi1 {
                        let d0 = kappa[0] - l0 as f64;
                        let d1 = kappa[1] - l1 as f64;
                        if (d0 * d0 + d1 * d1).sqrt() < r2 {
                            c += 1;
                        }
                    }
                }
            }
        }
        c
    };
    let m = 64;
    let mut best = 0;
    match n {
        1 => {
            for i in 0..=m {
                best = best.max(count_at(&[i as f64 / m as f64]));
            }
        }
        _ => {
            for i in 0..=m {
                for j in 0..=m {
                    best = best.max(count_at(&[i as f64 / m as f64, j as f64 / m as f64]));
                }
            }
        }
    }
    best
}
