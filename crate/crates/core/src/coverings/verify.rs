//! Numerical certification of a partition family: support exactness, the
//! sum-to-one identity, derivative scaling constants, and the uniform
//! window FL^1 bound.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fl1::{fl1_norm, Fl1Options, Fl1Result};

use super::lattice::{AlphaLattice, LatticeIndex};
use super::partition::{window_value, PartitionFamily};

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub fl1: Fl1Options,
    /// Demanded lower bound on `radius(k) / dxi`.
    pub min_radius_ratio: f64,
    /// Sample count per axis for the finite-difference derivative sweep.
    pub deriv_samples: usize,
    /// The derivative-scaling sweep extends the index set out to at least
    /// this index radius, so the tail behavior is visible even when the
    /// frequency truncation keeps the rendered lattice small.
    pub deriv_index_reach: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            fl1: Fl1Options::default(),
            min_radius_ratio: 8.0,
            deriv_samples: 2048,
            deriv_index_reach: 4.0,
        }
    }
}

/// Per-window verification record.
#[derive(Debug, Clone)]
pub struct WindowCheck {
    pub index: LatticeIndex,
    pub bracket: f64,
    pub center: [f64; 2],
    pub radius: f64,
    pub fl1: Fl1Result,
    /// Max deviation of the full window sum from 1 over this window's patch
    /// (restricted to the covered region).
    pub sum_dev: f64,
    /// `sup |d eta_k| * <k>^{beta}`.
    pub d1_const: f64,
    /// `sup |d^2 eta_k| * <k>^{2 beta}`.
    pub d2_const: f64,
    pub support_ok: bool,
}

/// Verification report for a whole family.
#[derive(Debug, Clone)]
pub struct PartitionReport {
    pub alpha: f64,
    pub xi_max: f64,
    pub dim: usize,
    pub windows: Vec<WindowCheck>,
    pub max_sum_dev: f64,
    pub support_exact: bool,
    pub fl1_sup: f64,
    pub fl1_min: f64,
    pub fl1_ratio: f64,
    pub fl1_all_converged: bool,
    /// Tail growth of the weighted first/second-derivative constants over
    /// the extended index sweep: `max(0, tail_max / head_max - 1)` with the
    /// split at the geometric midpoint of the bracket range.
    pub d1_drift: f64,
    pub d2_drift: f64,
    /// `(bracket, d1_const, d2_const)` over the extended sweep.
    pub deriv_sweep: Vec<(f64, f64, f64)>,
    pub plateau_c1: f64,
    pub support_radius_c: f64,
    pub covered_radius: f64,
    pub max_overlap: usize,
}

/// Tail growth of `values` against bracket: split at the geometric midpoint
/// of the bracket range, compare maxima.
pub fn tail_growth(pairs: &[(f64, f64)]) -> f64 {
    if pairs.len() < 2 {
        return 0.0;
    }
    let min_b = pairs.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let max_b = pairs.iter().map(|p| p.0).fold(0.0, f64::max);
    if max_b <= min_b {
        return 0.0;
    }
    let mid = (min_b * max_b).sqrt();
    let head = pairs.iter().filter(|p| p.0 <= mid * (1.0 + 1e-12)).map(|p| p.1).fold(0.0, f64::max);
    let tail = pairs.iter().filter(|p| p.0 > mid * (1.0 + 1e-12)).map(|p| p.1).fold(0.0, f64::max);
    if head == 0.0 || tail == 0.0 {
        0.0
    } else {
        (tail / head - 1.0).max(0.0)
    }
}

/// Weighted derivative constants of one window by central differences on an
/// analytic sample sweep sized to the window's own support.
fn derivative_constants(
    lattice: &AlphaLattice,
    profile: &super::profile::WindowProfile,
    k: &LatticeIndex,
    samples: usize,
) -> (f64, f64) {
    let n = lattice.dim();
    let warp = lattice.warp();
    let beta = warp.beta();
    let bracket = k.bracket();
    let c = lattice.center(k);
    let s = match n {
        1 => {
            let kf = k.coords(1)[0] as f64;
            (warp.radial(kf + profile.r2) - c[0])
                .abs()
                .max((warp.radial(kf - profile.r2) - c[0]).abs())
        }
        _ => {
            // Radial reach bounds the 2d support box.
            let r = k.norm();
            (warp.radial(r + profile.r2) - warp.radial(r)).abs().max(lattice.radius(k) * profile.r2)
                * 1.5
        }
    };
    let mut d1 = 0.0_f64;
    let mut d2 = 0.0_f64;
    match n {
        1 => {
            let m = samples.max(64);
            let h = 2.0 * s / (m - 1) as f64;
            let vals: Vec<f64> = (0..m)
                .map(|i| window_value(warp, profile, k, 1, &[c[0] - s + i as f64 * h]))
                .collect();
            for i in 1..m - 1 {
                d1 = d1.max(((vals[i + 1] - vals[i - 1]) / (2.0 * h)).abs());
                d2 = d2.max(((vals[i + 1] - 2.0 * vals[i] + vals[i - 1]) / (h * h)).abs());
            }
        }
        _ => {
            let m = samples.clamp(32, 192);
            let h = 2.0 * s / (m - 1) as f64;
            let at = |i: usize, j: usize| {
                window_value(
                    warp,
                    profile,
                    k,
                    2,
                    &[c[0] - s + i as f64 * h, c[1] - s + j as f64 * h],
                )
            };
            let vals: Vec<f64> =
                (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).map(|(i, j)| at(i, j)).collect();
            let v = |i: usize, j: usize| vals[i * m + j];
            for i in 1..m - 1 {
                for j in 1..m - 1 {
                    let dx = (v(i + 1, j) - v(i - 1, j)) / (2.0 * h);
                    let dy = (v(i, j + 1) - v(i, j - 1)) / (2.0 * h);
                    d1 = d1.max(dx.abs()).max(dy.abs());
                    let dxx = (v(i + 1, j) - 2.0 * v(i, j) + v(i - 1, j)) / (h * h);
                    let dyy = (v(i, j + 1) - 2.0 * v(i, j) + v(i, j - 1)) / (h * h);
                    let dxy = (v(i + 1, j + 1) - v(i + 1, j - 1) - v(i - 1, j + 1)
                        + v(i - 1, j - 1))
                        / (4.0 * h * h);
                    d2 = d2.max(dxx.abs()).max(dyy.abs()).max(dxy.abs());
                }
            }
        }
    }
    (d1 * bracket.powf(beta), d2 * bracket.powf(2.0 * beta))
}

/// Runs every certification check on a built family.
pub fn verify_partition(fam: &PartitionFamily, opts: &VerifyOptions) -> Result<PartitionReport> {
    let lattice = fam.lattice();
    let grid = fam.grid();
    let n = fam.dim();

    // Resolution precondition: the smallest window (k = 0, unit scale) must
    // span at least `min_radius_ratio` frequency bins.
    let min_radius = lattice.indices().iter().map(|k| lattice.radius(k)).fold(f64::INFINITY, f64::min);
    let max_dxi = min_radius / opts.min_radius_ratio;
    if grid.dxi() > max_dxi {
        let required_period = opts.min_radius_ratio / min_radius;
        let extent = grid.frequency_extent();
        let required_samples =
            (((2.0 * required_period * extent).ceil() as usize).max(2)).next_power_of_two();
        return Err(Error::GridTooCoarse {
            dxi: grid.dxi(),
            required_ratio: opts.min_radius_ratio,
            max_dxi,
            required_period,
            required_samples,
        });
    }

    // Warped coordinate of every grid point, shared by all support scans.
    let kappa: Vec<[f64; 2]> = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let p = grid.point(i);
            lattice.warp().to_index(&p[..n])
        })
        .collect();

    let sum = fam.sum_of_windows();
    let covered = fam.covered_radius();

    let indices = lattice.indices();
    let checks: Vec<WindowCheck> = indices
        .par_iter()
        .enumerate()
        .map(|(pos, k)| -> Result<WindowCheck> {
            let w = fam.window(pos);
            let center = lattice.center(k);
            let radius = lattice.radius(k);
            let s = w.support_radius();

            // Support exactness: every grid sample farther than the declared
            // support radius must be exactly zero. Samples outside the patch
            // are zero by construction; verify the analytic window agrees on
            // a ring around the patch and that in-patch samples beyond the
            // radius vanish.
            let mut support_ok = true;
            w.for_each_indexed(grid, |flat, v| {
                let p = grid.point(flat);
                let mut d2c = 0.0;
                for a in 0..n {
                    let d = p[a] - center[a];
                    d2c += d * d;
                }
                if d2c.sqrt() > s && v != 0.0 {
                    support_ok = false;
                }
            });
            let eval = fam.window_eval(pos);
            for flat in ring_indices(grid, w, 16) {
                let p = grid.point(flat);
                if eval.value(&p[..n]) != 0.0 {
                    support_ok = false;
                }
            }
            // The support radius bound must be consistent with the warped
            // geometry at the sampled points.
            for (flat, kp) in kappa.iter().enumerate() {
                let p = grid.point(flat);
                let mut d2c = 0.0;
                for a in 0..n {
                    let d = p[a] - center[a];
                    d2c += d * d;
                }
                if d2c.sqrt() > s {
                    let kc = k.coords(n);
                    let mut dk = 0.0;
                    for a in 0..n {
                        let d = kp[a] - kc[a] as f64;
                        dk += d * d;
                    }
                    if dk.sqrt() < fam.profile().r2 {
                        support_ok = false;
                        break;
                    }
                }
            }

            // Local deviation of the global sum from 1 over this patch.
            let mut sum_dev = 0.0_f64;
            w.for_each_indexed(grid, |flat, _| {
                let p = grid.point(flat);
                if crate::bracket::norm(&p[..n]) <= covered {
                    sum_dev = sum_dev.max((sum[flat] - 1.0).abs());
                }
            });

            let (d1, d2) = derivative_constants(lattice, fam.profile(), k, opts.deriv_samples);
            let fl1 = fl1_norm(&eval, n, &center[..n], s, &opts.fl1)?;

            Ok(WindowCheck {
                index: *k,
                bracket: k.bracket(),
                center,
                radius,
                fl1,
                sum_dev,
                d1_const: d1,
                d2_const: d2,
                support_ok,
            })
        })
        .collect::<Result<_>>()?;

    // Global sum deviation over the covered region.
    let mut max_sum_dev = 0.0_f64;
    for (flat, v) in sum.iter().enumerate() {
        let p = grid.point(flat);
        if crate::bracket::norm(&p[..n]) <= covered {
            max_sum_dev = max_sum_dev.max((v - 1.0).abs());
        }
    }

    // Derivative sweep extended beyond the frequency truncation so the tail
    // behavior in <k> is visible.
    let reach_xi = lattice.warp().radial(opts.deriv_index_reach) * 1.001;
    let sweep_lattice = if reach_xi > lattice.xi_max() {
        AlphaLattice::build(lattice.alpha(), n, reach_xi)?
    } else {
        lattice.clone()
    };
    let deriv_sweep: Vec<(f64, f64, f64)> = sweep_lattice
        .indices()
        .par_iter()
        .map(|k| {
            let (d1, d2) =
                derivative_constants(&sweep_lattice, fam.profile(), k, opts.deriv_samples);
            (k.bracket(), d1, d2)
        })
        .collect();
    let d1_drift = tail_growth(&deriv_sweep.iter().map(|t| (t.0, t.1)).collect::<Vec<_>>());
    let d2_drift = tail_growth(&deriv_sweep.iter().map(|t| (t.0, t.2)).collect::<Vec<_>>());

    let fl1_sup = checks.iter().map(|c| c.fl1.value).fold(0.0, f64::max);
    let fl1_min = checks.iter().map(|c| c.fl1.value).fold(f64::INFINITY, f64::min);

    Ok(PartitionReport {
        alpha: fam.alpha(),
        xi_max: lattice.xi_max(),
        dim: n,
        max_sum_dev,
        support_exact: checks.iter().all(|c| c.support_ok),
        fl1_sup,
        fl1_min,
        fl1_ratio: if fl1_min > 0.0 { fl1_sup / fl1_min } else { f64::INFINITY },
        fl1_all_converged: checks.iter().all(|c| c.fl1.converged),
        d1_drift,
        d2_drift,
        deriv_sweep,
        plateau_c1: fam.plateau_c1(),
        support_radius_c: fam.support_radius_c(),
        covered_radius: covered,
        max_overlap: fam.max_overlap(),
        windows: checks,
    })
}

/// Flat indices of up to `width` bins just outside the patch per axis.
fn ring_indices(
    grid: &crate::grid::Grid,
    w: &super::partition::SparseWindow,
    width: usize,
) -> Vec<usize> {
    let n_axis = grid.samples_per_axis();
    let shape = w.shape();
    let start = w.start();
    let mut out = Vec::new();
    match grid.dim() {
        1 => {
            for d in 1..=width {
                if start[0] >= d {
                    out.push(start[0] - d);
                }
                if start[0] + shape[0] + d - 1 < n_axis {
                    out.push(start[0] + shape[0] + d - 1);
                }
            }
        }
        _ => {
            for d in 1..=width.min(4) {
                let lo0 = start[0].checked_sub(d);
                let hi0 = start[0] + shape[0] + d - 1;
                let lo1 = start[1].checked_sub(d);
                let hi1 = start[1] + shape[1] + d - 1;
                for c in 0..shape[1] {
                    if let Some(r) = lo0 {
                        out.push(r * n_axis + start[1] + c);
                    }
                    if hi0 < n_axis {
                        out.push(hi0 * n_axis + start[1] + c);
                    }
                }
                for r in 0..shape[0] {
                    if let Some(c) = lo1 {
                        out.push((start[0] + r) * n_axis + c);
                    }
                    if hi1 < n_axis {
                        out.push((start[0] + r) * n_axis + hi1);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coverings::profile::WindowProfile;
    use crate::grid::{Grid, Side};

    fn verified(alpha: f64, xi_max: f64) -> PartitionReport {
        let lat = AlphaLattice::build(alpha, 1, xi_max).unwrap();
        let grid = Grid::new(1, 4096, 64.0, Side::Frequency).unwrap();
        let fam = PartitionFamily::build(lat, grid, WindowProfile::default()).unwrap();
        verify_partition(&fam, &VerifyOptions::default()).unwrap()
    }

    #[test]
    fn unit_covering_certifies() {
        let rep = verified(0.0, 8.0);
        assert!(rep.support_exact);
        assert!(rep.max_sum_dev < 1e-8, "sum dev {}", rep.max_sum_dev);
        assert!(rep.fl1_ratio < 1.0 + 1e-6, "translates must share fl1, ratio {}", rep.fl1_ratio);
        assert!(rep.d1_drift < 1e-9 && rep.d2_drift < 1e-9);
    }

    #[test]
    fn translates_share_fl1_to_high_accuracy() {
        let rep = verified(0.0, 6.0);
        let vals: Vec<f64> = rep.windows.iter().map(|w| w.fl1.value).collect();
        for v in &vals {
            assert!((v - vals[0]).abs() < 1e-10, "fl1 values differ: {vals:?}");
        }
    }

    #[test]
    fn grid_too_coarse_rejected() {
        // Wide enough to hold every window, but dxi = 1/4 cannot resolve the
        // unit-scale window at k = 0.
        let lat = AlphaLattice::build(0.9, 1, 50.0).unwrap();
        let grid = Grid::new(1, 4096, 4.0, Side::Frequency).unwrap();
        let fam = PartitionFamily::build(lat, grid, WindowProfile::default()).unwrap();
        match verify_partition(&fam, &VerifyOptions::default()) {
            Err(Error::GridTooCoarse { required_samples, required_period, .. }) => {
                assert!(required_period >= 8.0);
                assert!(required_samples > 4096);
            }
            other => panic!("expected GridTooCoarse, got {other:?}"),
        }
    }

    #[test]
    fn tail_growth_detects_growth_only() {
        let flat: Vec<(f64, f64)> = (1..20).map(|i| (i as f64, 5.0)).collect();
        assert_eq!(tail_growth(&flat), 0.0);
        let rising: Vec<(f64, f64)> = (1..20).map(|i| (i as f64, i as f64)).collect();
        assert!(tail_growth(&rising) > 1.0);
        let falling: Vec<(f64, f64)> = (1..20).map(|i| (i as f64, 1.0 / i as f64)).collect();
        assert_eq!(tail_growth(&falling), 0.0);
    }
}
