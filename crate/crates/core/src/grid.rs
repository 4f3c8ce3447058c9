//! Uniform periodic grids and complex-valued sampled functions.
//!
//! A grid lives on one side of the Fourier transform. Spatial grids sample
//! `x_j = -L/2 + j L/N`; frequency grids sample `xi_m = m/L` for integer
//! `m in [-N/2, N/2)`, stored DC-centered in ascending order. The spacings
//! satisfy `dx * dxi * N = 1` by construction.

use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which side of the transform a grid samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Spatial,
    Frequency,
}

/// A uniform periodic grid in dimension 1 or 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    n: usize,
    samples: usize,
    period: f64,
    side: Side,
}

impl Grid {
    /// `n`: dimension (1 or 2); `samples`: points per axis (power of two);
    /// `period`: spatial period length `L` per axis.
    pub fn new(n: usize, samples: usize, period: f64, side: Side) -> Result<Self> {
        if n != 1 && n != 2 {
            return Err(Error::Config(format!("dimension must be 1 or 2, got {n}")));
        }
        if samples < 2 || !samples.is_power_of_two() {
            return Err(Error::Config(format!(
                "samples per axis must be a power of two >= 2, got {samples}"
            )));
        }
        if !period.is_finite() || period <= 0.0 {
            return Err(Error::Config(format!("period must be positive, got {period}")));
        }
        Ok(Grid { n, samples, period, side })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Samples per axis.
    pub fn samples_per_axis(&self) -> usize {
        self.samples
    }

    /// Total number of samples, `N^n`.
    pub fn len(&self) -> usize {
        self.samples.pow(self.n as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// Spatial spacing `dx = L/N`.
    pub fn dx(&self) -> f64 {
        self.period / self.samples as f64
    }

    /// Frequency spacing `dxi = 1/L`.
    pub fn dxi(&self) -> f64 {
        1.0 / self.period
    }

    /// Grid step on this grid's own side.
    pub fn step(&self) -> f64 {
        match self.side {
            Side::Spatial => self.dx(),
            Side::Frequency => self.dxi(),
        }
    }

    /// Cell volume on this grid's own side, `step^n`.
    pub fn cell_volume(&self) -> f64 {
        self.step().powi(self.n as i32)
    }

    /// Half-extent of the frequency grid: the largest representable `|xi|`
    /// per axis is just below this.
    pub fn frequency_extent(&self) -> f64 {
        self.samples as f64 / (2.0 * self.period)
    }

    /// Coordinate of index `i` along one axis.
    pub fn axis_coord(&self, i: usize) -> f64 {
        debug_assert!(i < self.samples);
        match self.side {
            Side::Spatial => -self.period / 2.0 + i as f64 * self.dx(),
            Side::Frequency => (i as i64 - (self.samples / 2) as i64) as f64 * self.dxi(),
        }
    }

    /// Full coordinates of a flat row-major index.
    pub fn point(&self, flat: usize) -> [f64; 2] {
        match self.n {
            1 => [self.axis_coord(flat), 0.0],
            _ => {
                let i0 = flat / self.samples;
                let i1 = flat % self.samples;
                [self.axis_coord(i0), self.axis_coord(i1)]
            }
        }
    }

    /// The grid with the same geometry on the other side of the transform.
    pub fn dual(&self) -> Grid {
        Grid {
            side: match self.side {
                Side::Spatial => Side::Frequency,
                Side::Frequency => Side::Spatial,
            },
            ..*self
        }
    }

    /// Flat index of per-axis indices.
    pub fn flat_index(&self, idx: &[usize]) -> usize {
        match self.n {
            1 => idx[0],
            _ => idx[0] * self.samples + idx[1],
        }
    }
}

/// A complex function sampled on a [`Grid`], values in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    grid: Grid,
    values: Vec<Complex64>,
}

impl SampledFunction {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Config(format!(
                "value count {} does not match grid size {}",
                values.len(),
                grid.len()
            )));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Config("non-finite sample value".into()));
        }
        Ok(SampledFunction { grid, values })
    }

    pub fn zeros(grid: Grid) -> Self {
        let len = grid.len();
        SampledFunction { grid, values: vec![Complex64::new(0.0, 0.0); len] }
    }

    /// Samples a closure over the grid points.
    pub fn from_fn(grid: Grid, mut f: impl FnMut(&[f64]) -> Complex64) -> Result<Self> {
        let n = grid.dim();
        let values: Vec<Complex64> = (0..grid.len())
            .map(|i| {
                let p = grid.point(i);
                f(&p[..n])
            })
            .collect();
        SampledFunction::new(grid, values)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Checks that all frequency samples with `|xi| > radius` are exactly
    /// zero. Only meaningful on frequency grids.
    pub fn is_band_limited(&self, radius: f64) -> bool {
        debug_assert_eq!(self.grid.side(), Side::Frequency);
        let n = self.grid.dim();
        self.values.iter().enumerate().all(|(i, v)| {
            let p = self.grid.point(i);
            let r = crate::bracket::norm(&p[..n]);
            r <= radius || (v.re == 0.0 && v.im == 0.0)
        })
    }

    /// Relative squared-mass fraction outside `|xi| <= radius`.
    pub fn mass_fraction_outside(&self, radius: f64) -> f64 {
        debug_assert_eq!(self.grid.side(), Side::Frequency);
        let n = self.grid.dim();
        let mut outside = 0.0;
        let mut total = 0.0;
        for (i, v) in self.values.iter().enumerate() {
            let m = v.norm_sqr();
            total += m;
            let p = self.grid.point(i);
            if crate::bracket::norm(&p[..n]) > radius {
                outside += m;
            }
        }
        if total == 0.0 {
            0.0
        } else {
            outside / total
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spacing_identity() {
        let g = Grid::new(1, 256, 32.0, Side::Spatial).unwrap();
        assert!((g.dx() * g.dxi() * 256.0 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn spatial_points_start_at_minus_half_period() {
        let g = Grid::new(1, 8, 16.0, Side::Spatial).unwrap();
        assert_eq!(g.axis_coord(0), -8.0);
        assert_eq!(g.axis_coord(4), 0.0);
    }

    #[test]
    fn frequency_points_are_dc_centered() {
        let g = Grid::new(1, 8, 4.0, Side::Frequency).unwrap();
        assert_eq!(g.axis_coord(4), 0.0);
        assert_eq!(g.axis_coord(0), -1.0);
        assert_eq!(g.axis_coord(7), 0.75);
    }

    #[test]
    fn rejects_bad_dimensions() {
        assert!(Grid::new(3, 8, 1.0, Side::Spatial).is_err());
        assert!(Grid::new(1, 12, 1.0, Side::Spatial).is_err());
        assert!(Grid::new(1, 8, -1.0, Side::Spatial).is_err());
    }

    #[test]
    fn rejects_non_finite_values() {
        let g = Grid::new(1, 4, 1.0, Side::Spatial).unwrap();
        let bad = vec![Complex64::new(f64::NAN, 0.0); 4];
        assert!(SampledFunction::new(g, bad).is_err());
    }

    #[test]
    fn two_dim_points_row_major() {
        let g = Grid::new(2, 4, 8.0, Side::Spatial).unwrap();
        assert_eq!(g.len(), 16);
        let p = g.point(1);
        assert_eq!(p[0], -4.0);
        assert_eq!(p[1], -2.0);
        let p = g.point(4);
        assert_eq!(p[0], -2.0);
        assert_eq!(p[1], -4.0);
    }
}
