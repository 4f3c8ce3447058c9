//! The radial change of coordinates behind the alpha-covering geometry.
//!
//! `Phi(kappa) = <kappa>^beta kappa` with `beta = alpha/(1-alpha)` maps the
//! integer lattice to the covering centers: window `k` lives on the image of
//! a unit-scale ball around `kappa = k`. The map is a smooth bijection of
//! R^n, radial, strictly increasing in `|kappa|`, and reduces to the
//! identity at `alpha = 0`.

use crate::bracket::norm;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct FrequencyWarp {
    alpha: f64,
    beta: f64,
}

impl FrequencyWarp {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&alpha) {
            return Err(Error::Config(format!(
                "alpha must lie in [0, 1) for the covering warp, got {alpha}"
            )));
        }
        Ok(FrequencyWarp { alpha, beta: alpha / (1.0 - alpha) })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `beta = alpha / (1 - alpha)`.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Signed radial map `m(r) = r <r>^beta`.
    pub fn radial(&self, r: f64) -> f64 {
        if self.beta == 0.0 {
            r
        } else {
            r * (1.0 + r * r).powf(self.beta / 2.0)
        }
    }

    /// `m'(r) = <r>^beta (1 + beta r^2 / <r>^2)`.
    pub fn radial_deriv(&self, r: f64) -> f64 {
        let sq = 1.0 + r * r;
        sq.powf(self.beta / 2.0) * (1.0 + self.beta * r * r / sq)
    }

    /// Inverse of the signed radial map, by safeguarded Newton iteration.
    pub fn radial_inv(&self, target: f64) -> f64 {
        if self.beta == 0.0 || target == 0.0 {
            return target;
        }
        let sign = target.signum();
        let t = target.abs();
        // m(r) >= r, so the root lies in (0, t].
        let mut lo = 0.0;
        let mut hi = t;
        let mut r = if t <= 1.0 { t } else { t.powf(1.0 / (1.0 + self.beta)) };
        for _ in 0..200 {
            let res = self.radial(r) - t;
            if res.abs() <= 1e-14 * (1.0 + t) {
                break;
            }
            if res > 0.0 {
                hi = r;
            } else {
                lo = r;
            }
            let step = res / self.radial_deriv(r);
            let next = r - step;
            r = if next > lo && next < hi { next } else { 0.5 * (lo + hi) };
        }
        sign * r
    }

    /// `Phi(kappa)`.
    pub fn to_freq(&self, kappa: &[f64]) -> [f64; 2] {
        let mut out = [0.0; 2];
        let scale = if self.beta == 0.0 {
            1.0
        } else {
            let sq: f64 = kappa.iter().map(|v| v * v).sum();
            (1.0 + sq).powf(self.beta / 2.0)
        };
        for (o, k) in out.iter_mut().zip(kappa) {
            *o = scale * k;
        }
        out
    }

    /// `Phi^{-1}(xi)`.
    pub fn to_index(&self, xi: &[f64]) -> [f64; 2] {
        let mut out = [0.0; 2];
        if self.beta == 0.0 {
            for (o, x) in out.iter_mut().zip(xi) {
                *o = *x;
            }
            return out;
        }
        let big = norm(xi);
        if big == 0.0 {
            return out;
        }
        let r = self.radial_inv(big);
        for (o, x) in out.iter_mut().zip(xi) {
            *o = x * (r / big);
        }
        out
    }
}
