//! The dyadic (Littlewood-Paley) family: the alpha -> 1 limit of the
//! covering machinery, used for Besov norms.

use rustfft::num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fl1::FrequencyFn;
use crate::grid::{Grid, SampledFunction, Side};

use super::profile::smoothstep;

/// The low-pass bump: 1 on `|xi| <= 4/3`, 0 on `|xi| >= 3/2`.
pub fn lowpass_bump(r: f64) -> f64 {
    let r = r.abs();
    const INNER: f64 = 4.0 / 3.0;
    const OUTER: f64 = 1.5;
    if r <= INNER {
        1.0
    } else if r >= OUTER {
        0.0
    } else {
        smoothstep((OUTER - r) / (OUTER - INNER))
    }
}

/// One dyadic shell family on a shared grid: `phi_0` plus `J` shells
/// `phi_j(xi) = phi(2^{-j} xi) - phi(2^{-j+1} xi)`.
#[derive(Debug, Clone)]
pub struct DyadicFamily {
    grid: Grid,
    levels: usize,
    windows: Vec<Vec<f64>>,
}

/// Number of shells a grid can hold: `floor(log2(extent * 2/3))`.
pub fn max_levels_for(grid: &Grid) -> usize {
    let x = grid.frequency_extent() * 2.0 / 3.0;
    if x < 1.0 {
        0
    } else {
        x.log2().floor() as usize
    }
}

impl DyadicFamily {
    /// Builds `phi_0 .. phi_J`; requires grid extent `>= (3/2) 2^J`.
    pub fn build(levels: usize, grid: Grid) -> Result<Self> {
        if grid.side() != Side::Frequency {
            return Err(Error::Config("dyadic family needs a frequency grid".into()));
        }
        let needed = 1.5 * (1u64 << levels) as f64;
        if grid.frequency_extent() < needed {
            return Err(Error::Config(format!(
                "grid extent {:.2} below the outermost shell support {needed:.2}; \
                 lower the level count to {} or enlarge the grid",
                grid.frequency_extent(),
                max_levels_for(&grid)
            )));
        }
        let n = grid.dim();
        let len = grid.len();
        let radius_of = |i: usize| {
            let p = grid.point(i);
            crate::bracket::norm(&p[..n])
        };
        let mut windows = vec![vec![0.0; len]; levels + 1];
        for i in 0..len {
            let r = radius_of(i);
            let mut shells_total = 0.0;
            for j in 1..=levels {
                let sc = (1u64 << j) as f64;
                let v = lowpass_bump(r / sc) - lowpass_bump(2.0 * r / sc);
                windows[j][i] = v;
                shells_total += v;
            }
            // phi_0 = 1 - sum of shells exactly on the grid, on its support.
            windows[0][i] = if r <= 1.5 { 1.0 - shells_total } else { 0.0 };
        }
        Ok(DyadicFamily { grid, levels, windows })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Number of shells J (the family has J + 1 windows).
    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn window(&self, j: usize) -> &[f64] {
        &self.windows[j]
    }

    pub fn window_count(&self) -> usize {
        self.windows.len()
    }

    /// Analytic evaluator for level `j`.
    pub fn window_eval(&self, j: usize) -> DyadicEval {
        DyadicEval { level: j, levels: self.levels, n: self.grid.dim() }
    }

    /// The family sums to 1 for `|xi| <= (4/3) 2^J`.
    pub fn covered_radius(&self) -> f64 {
        4.0 / 3.0 * (1u64 << self.levels) as f64
    }

    /// Pointwise product of shell `j` with a spectrum.
    pub fn multiply_spectrum(&self, j: usize, spectrum: &SampledFunction) -> SampledFunction {
        let mut out = SampledFunction::zeros(*spectrum.grid());
        let src = spectrum.values();
        let w = &self.windows[j];
        for (o, (s, v)) in out.values_mut().iter_mut().zip(src.iter().zip(w)) {
            if *v != 0.0 {
                *o = s * v;
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy)]
pub struct DyadicEval {
    level: usize,
    levels: usize,
    n: usize,
}

impl FrequencyFn for DyadicEval {
    fn eval(&self, xi: &[f64]) -> Complex64 {
        let r = crate::bracket::norm(&xi[..self.n]);
        let v = if self.level == 0 {
            lowpass_bump(r)
        } else {
            let sc = (1u64 << self.level) as f64;
            lowpass_bump(r / sc) - lowpass_bump(2.0 * r / sc)
        };
        let _ = self.levels;
        Complex64::new(v, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(levels: usize) -> DyadicFamily {
        let grid = Grid::new(1, 4096, 64.0, Side::Frequency).unwrap();
        DyadicFamily::build(levels, grid).unwrap()
    }

    #[test]
    fn lowpass_plateau() {
        let f = fam(3);
        let g = f.grid();
        for i in 0..g.samples_per_axis() {
            let xi: f64 = g.axis_coord(i);
            if xi.abs() <= 4.0 / 3.0 {
                assert_eq!(f.window(0)[i], 1.0, "phi_0({xi}) != 1");
            }
        }
    }

    #[test]
    fn shells_telescope_to_one() {
        let f = fam(4);
        let g = f.grid();
        let covered = f.covered_radius();
        for i in 0..g.samples_per_axis() {
            let xi: f64 = g.axis_coord(i);
            if xi.abs() <= covered {
                let total: f64 = (0..f.window_count()).map(|j| f.window(j)[i]).sum();
                assert!((total - 1.0).abs() < 1e-12, "sum at {xi} = {total}");
            }
        }
        // Spot check the telescoping point xi = 2^{J-1}.
        let half = g.samples_per_axis() / 2;
        let idx = half + (8.0 * g.period()) as usize;
        let total: f64 = (0..f.window_count()).map(|j| f.window(j)[idx]).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn shell_two_support_bounds() {
        let f = fam(3);
        let g = f.grid();
        for i in 0..g.samples_per_axis() {
            let xi: f64 = g.axis_coord(i);
            let v = f.window(2)[i];
            if v != 0.0 {
                assert!(
                    xi.abs() > 4.0 / 3.0 && xi.abs() < 6.0,
                    "phi_2 nonzero at {xi}"
                );
            }
        }
    }

    #[test]
    fn zeroth_window_matches_bump() {
        let f = fam(3);
        let g = f.grid();
        for i in (0..g.samples_per_axis()).step_by(7) {
            let xi: f64 = g.axis_coord(i);
            assert!((f.window(0)[i] - lowpass_bump(xi)).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_too_small_grid() {
        let grid = Grid::new(1, 256, 32.0, Side::Frequency).unwrap();
        // extent = 4, need 1.5 * 2^3 = 12.
        assert!(DyadicFamily::build(3, grid).is_err());
    }
}
