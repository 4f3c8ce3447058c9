//! Fourier-Lebesgue `FL^1` norms: the `L^1` norm of the inverse transform
//! of a compactly supported frequency-side function.
//!
//! The integral over all of space is truncated to a spatial period `P`. For
//! analytic integrands ([`FrequencyFn`]) the period doubles until the value
//! stabilizes; the function is rendered on a baseband grid centered at its
//! support (a pure modulation, which leaves `|F^{-1}g|` unchanged), so the
//! grid size tracks the support width rather than the support location.

use rustfft::num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::{fourier_inverse, lp_norm};
use crate::grid::{Grid, SampledFunction, Side};
use crate::Exponent;

/// A frequency-side function evaluable at arbitrary points.
pub trait FrequencyFn: Sync {
    fn eval(&self, xi: &[f64]) -> Complex64;
}

impl<F> FrequencyFn for F
where
    F: Fn(&[f64]) -> Complex64 + Sync,
{
    fn eval(&self, xi: &[f64]) -> Complex64 {
        self(xi)
    }
}

/// Pointwise product of two frequency-side functions.
pub struct Product<'a>(pub &'a dyn FrequencyFn, pub &'a dyn FrequencyFn);

impl FrequencyFn for Product<'_> {
    fn eval(&self, xi: &[f64]) -> Complex64 {
        let a = self.0.eval(xi);
        if a == Complex64::ZERO {
            return a;
        }
        a * self.1.eval(xi)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Fl1Options {
    /// Relative stability demanded between consecutive period doublings.
    pub tol_rel: f64,
    /// Maximum number of period doublings.
    pub max_doublings: u32,
    /// Spatial period of the first attempt.
    pub base_period: f64,
    /// Frequency half-extent of the render grid as a multiple of the support
    /// radius; controls spatial oversampling of the quadrature.
    pub oversample: f64,
}

impl Default for Fl1Options {
    fn default() -> Self {
        Fl1Options { tol_rel: 1e-3, max_doublings: 4, base_period: 64.0, oversample: 4.0 }
    }
}

/// Outcome of an `FL^1` evaluation.
#[derive(Debug, Clone, Copy)]
pub struct Fl1Result {
    pub value: f64,
    /// Whether the period-doubling check met `tol_rel`. Non-convergent
    /// values are still reported.
    pub converged: bool,
    /// Relative change observed in the final comparison.
    pub rel_change: f64,
    /// Spatial period of the reported value.
    pub period: f64,
}

fn rel_diff(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// `L^1` of the inverse transform of frequency samples, on the period the
/// samples define.
pub fn fl1_of_samples(g: &SampledFunction) -> Result<f64> {
    Ok(lp_norm(&fourier_inverse(g)?, Exponent::Finite(1.0)))
}

/// Renders `f(center + .)` on a baseband frequency grid with half-extent at
/// least `half_extent` and spacing `1/period`, then integrates the inverse.
fn render_and_integrate(
    f: &dyn FrequencyFn,
    n: usize,
    center: &[f64],
    half_extent: f64,
    period: f64,
) -> Result<f64> {
    let min_samples = (2.0 * half_extent * period).ceil() as usize;
    let samples = min_samples.next_power_of_two().max(4);
    let grid = Grid::new(n, samples, period, Side::Frequency)?;
    let g = SampledFunction::from_fn(grid, |xi| {
        let mut point = [0.0; 2];
        for (i, (p, c)) in xi.iter().zip(center).enumerate() {
            point[i] = p + c;
        }
        f.eval(&point[..n])
    })?;
    fl1_of_samples(&g)
}

/// `FL^1` norm of an analytic frequency-side function supported in
/// `B(center, support_radius)`, with period-doubling convergence control.
pub fn fl1_norm(
    f: &dyn FrequencyFn,
    n: usize,
    center: &[f64],
    support_radius: f64,
    opts: &Fl1Options,
) -> Result<Fl1Result> {
    if support_radius <= 0.0 || !support_radius.is_finite() {
        return Err(Error::Domain(format!(
            "support radius must be positive, got {support_radius}"
        )));
    }
    if opts.oversample < 2.0 {
        return Err(Error::Config("oversample factor must be at least 2".into()));
    }
    let half_extent = opts.oversample * support_radius;
    let mut period = opts.base_period;
    let mut value = render_and_integrate(f, n, center, half_extent, period)?;
    let mut rel = f64::INFINITY;
    for _ in 0..opts.max_doublings {
        let next_period = period * 2.0;
        let next = render_and_integrate(f, n, center, half_extent, next_period)?;
        rel = rel_diff(next, value);
        value = next;
        period = next_period;
        if rel <= opts.tol_rel {
            return Ok(Fl1Result { value, converged: true, rel_change: rel, period });
        }
    }
    Ok(Fl1Result { value, converged: false, rel_change: rel, period })
}

/// `FL^1` norm of fixed frequency samples.
///
/// The samples pin the spatial period to `1/dxi`, so `spatial_period` may
/// not exceed the grid period; the convergence flag compares against the
/// half-period value obtained by subsampling every other bin.
pub fn fl1_norm_sampled(
    g: &SampledFunction,
    spatial_period: f64,
    opts: &Fl1Options,
) -> Result<Fl1Result> {
    let grid = g.grid();
    if grid.side() != Side::Frequency {
        return Err(Error::Config("fl1_norm_sampled expects a frequency-side input".into()));
    }
    if spatial_period > grid.period() * (1.0 + 1e-12) {
        return Err(Error::Precondition(format!(
            "requested spatial period {spatial_period} exceeds the period {} resolvable by the samples",
            grid.period()
        )));
    }
    // Declared margin: the outer eighth of the band must be exactly zero.
    let margin_radius = grid.frequency_extent() * (1.0 - 1.0 / 8.0);
    if !g.is_band_limited(margin_radius) {
        return Err(Error::Precondition(format!(
            "samples are not compactly supported inside |xi| <= {margin_radius:.4}"
        )));
    }
    let value = fl1_of_samples(g)?;
    let half = subsample_half(g)?;
    let coarse = fl1_of_samples(&half)?;
    let rel = rel_diff(value, coarse);
    Ok(Fl1Result {
        value,
        converged: rel <= opts.tol_rel,
        rel_change: rel,
        period: grid.period(),
    })
}

/// Keeps every other frequency bin (those at even multiples of `dxi`),
/// halving the spatial period.
fn subsample_half(g: &SampledFunction) -> Result<SampledFunction> {
    let grid = g.grid();
    let n = grid.dim();
    let n_axis = grid.samples_per_axis();
    if n_axis < 8 {
        return Err(Error::Precondition("too few samples to subsample".into()));
    }
    let coarse = Grid::new(n, n_axis / 2, grid.period() / 2.0, grid.side())?;
    let half = n_axis / 2;
    let coarse_half = n_axis / 4;
    let pick = |ic: usize| (ic as i64 - coarse_half as i64) * 2 + half as i64;
    let values = match n {
        1 => (0..n_axis / 2).map(|i| g.values()[pick(i) as usize]).collect(),
        _ => {
            let mut out = Vec::with_capacity((n_axis / 2) * (n_axis / 2));
            for r in 0..n_axis / 2 {
                for c in 0..n_axis / 2 {
                    out.push(g.values()[pick(r) as usize * n_axis + pick(c) as usize]);
                }
            }
            out
        }
    };
    SampledFunction::new(coarse, values)
}
