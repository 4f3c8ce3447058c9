//! Forward and inverse Fourier transforms under the convention
//! `F f(xi) = integral f(x) exp(-2 pi i x.xi) dx`, plus Lebesgue norms.
//!
//! Transforms are Riemann-sum approximations on the periodic torus: with
//! `x_j = -L/2 + j dx` and `xi_m = m/L` the sum telescopes to a plain DFT
//! with alternating-sign twiddles, so the forward and inverse maps are exact
//! inverses of each other up to FFT roundoff.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::grid::{SampledFunction, Side};

static PLANS: LazyLock<Mutex<HashMap<(usize, bool), Arc<dyn Fft<f64>>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

fn plan(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    let mut plans = PLANS.lock().unwrap();
    plans
        .entry((len, inverse))
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            let dir = if inverse { FftDirection::Inverse } else { FftDirection::Forward };
            planner.plan_fft(len, dir)
        })
        .clone()
}

/// One axis of the forward map: natural spatial order in, DC-centered out.
///
/// `out[i] = scale * (-1)^m * DFT(in)[m mod N]` with `m = i - N/2`.
fn forward_axis(input: &[Complex64], output: &mut [Complex64], scale: f64) {
    let n = input.len();
    let mut buf = input.to_vec();
    plan(n, false).process(&mut buf);
    let half = n / 2;
    for (i, out) in output.iter_mut().enumerate() {
        let m = i as i64 - half as i64;
        let wrapped = m.rem_euclid(n as i64) as usize;
        let sign = if m & 1 == 0 { 1.0 } else { -1.0 };
        *out = buf[wrapped] * (sign * scale);
    }
}

/// One axis of the inverse map: DC-centered in, natural spatial order out.
fn inverse_axis(input: &[Complex64], output: &mut [Complex64], scale: f64) {
    let n = input.len();
    let half = n / 2;
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for (i, v) in input.iter().enumerate() {
        let m = i as i64 - half as i64;
        let wrapped = m.rem_euclid(n as i64) as usize;
        let sign = if m & 1 == 0 { 1.0 } else { -1.0 };
        buf[wrapped] = v * sign;
    }
    plan(n, true).process(&mut buf);
    for (out, v) in output.iter_mut().zip(buf) {
        *out = v * scale;
    }
}

fn transform(
    f: &SampledFunction,
    expect: Side,
    axis_op: impl Fn(&[Complex64], &mut [Complex64], f64),
    scale_per_axis: f64,
) -> Result<SampledFunction> {
    let grid = *f.grid();
    if grid.side() != expect {
        return Err(Error::Config(format!(
            "transform expects a {expect:?}-side input, got {:?}",
            grid.side()
        )));
    }
    let n_axis = grid.samples_per_axis();
    let mut values = f.values().to_vec();
    match grid.dim() {
        1 => {
            let mut out = vec![Complex64::new(0.0, 0.0); n_axis];
            axis_op(&values, &mut out, scale_per_axis);
            values = out;
        }
        _ => {
            // Rows (axis 1, contiguous), then columns (axis 0, strided).
            let mut line_out = vec![Complex64::new(0.0, 0.0); n_axis];
            for r in 0..n_axis {
                let row = &values[r * n_axis..(r + 1) * n_axis];
                axis_op(row, &mut line_out, scale_per_axis);
                values[r * n_axis..(r + 1) * n_axis].copy_from_slice(&line_out);
            }
            let mut col = vec![Complex64::new(0.0, 0.0); n_axis];
            for c in 0..n_axis {
                for r in 0..n_axis {
                    col[r] = values[r * n_axis + c];
                }
                axis_op(&col, &mut line_out, scale_per_axis);
                for r in 0..n_axis {
                    values[r * n_axis + c] = line_out[r];
                }
            }
        }
    }
    SampledFunction::new(grid.dual(), values)
}

/// Forward transform of a spatial-side function; output is DC-centered.
pub fn fourier_forward(f: &SampledFunction) -> Result<SampledFunction> {
    let dx = f.grid().dx();
    transform(f, Side::Spatial, forward_axis, dx)
}

/// Inverse transform of a frequency-side function.
pub fn fourier_inverse(g: &SampledFunction) -> Result<SampledFunction> {
    let dxi = g.grid().dxi();
    transform(g, Side::Frequency, inverse_axis, dxi)
}

/// `L^p` norm by Riemann quadrature on the function's own grid:
/// `(step^n sum |f|^p)^(1/p)`, or the max for `p = inf`.
pub fn lp_norm(f: &SampledFunction, p: Exponent) -> f64 {
    let vals = f.values();
    match p {
        Exponent::Infinity => vals.iter().map(|v| v.norm()).fold(0.0, f64::max),
        Exponent::Finite(p) => {
            let vol = f.grid().cell_volume();
            let sum: f64 = if p == 1.0 {
                vals.iter().map(|v| v.norm()).sum()
            } else if p == 2.0 {
                vals.iter().map(|v| v.norm_sqr()).sum()
            } else {
                vals.iter().map(|v| v.norm().powf(p)).sum()
            };
            (vol * sum).powf(1.0 / p)
        }
    }
}

/// Discrete Parseval mass `step^n sum |f|^2`, equal on both sides of the
/// transform up to roundoff.
pub fn quadratic_mass(f: &SampledFunction) -> f64 {
    f.grid().cell_volume() * f.values().iter().map(|v| v.norm_sqr()).sum::<f64>()
}
