//! Window profiles: smooth radial bumps with an exact plateau and exact
//! compact support.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Transition shape between the plateau and the support edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum TransitionKind {
    /// `exp(-1/t)` smoothstep; infinitely differentiable.
    #[default]
    SmoothExp,
    /// Raised-cosine step; C^1 only, kept for norm-robustness comparisons.
    Cosine,
}

fn hexp(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp()
    }
}

/// C^infinity step: 0 for `t <= 0`, 1 for `t >= 1`.
pub fn smoothstep(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        let a = hexp(t);
        a / (a + hexp(1.0 - t))
    }
}

/// Derivative of [`smoothstep`].
pub fn smoothstep_deriv(t: f64) -> f64 {
    if t <= 0.0 || t >= 1.0 {
        return 0.0;
    }
    let f = hexp(t);
    let g = hexp(1.0 - t);
    let s = f + g;
    if s == 0.0 {
        return 0.0;
    }
    f * g * (1.0 / (t * t) + 1.0 / ((1.0 - t) * (1.0 - t))) / (s * s)
}

fn cosstep(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        0.5 * (1.0 - (std::f64::consts::PI * t).cos())
    }
}

fn cosstep_deriv(t: f64) -> f64 {
    if t <= 0.0 || t >= 1.0 {
        0.0
    } else {
        0.5 * std::f64::consts::PI * (std::f64::consts::PI * t).sin()
    }
}

/// A radial bump equal to 1 on `|u| <= r1` and 0 on `|u| >= r2`.
///
/// Radii are in warped index coordinates, where neighboring windows sit at
/// unit distance regardless of alpha.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowProfile {
    pub r1: f64,
    pub r2: f64,
    #[serde(default)]
    pub kind: TransitionKind,
}

impl Default for WindowProfile {
    fn default() -> Self {
        WindowProfile { r1: 0.45, r2: 0.55, kind: TransitionKind::SmoothExp }
    }
}

impl WindowProfile {
    pub fn new(r1: f64, r2: f64, kind: TransitionKind) -> Result<Self> {
        if !(r1 > 0.0 && r2 > r1 && r2.is_finite()) {
            return Err(Error::Config(format!(
                "profile radii must satisfy 0 < r1 < r2, got r1={r1} r2={r2}"
            )));
        }
        Ok(WindowProfile { r1, r2, kind })
    }

    /// Default profile for a given dimension; the support radius must exceed
    /// the covering radius of the unit lattice (`sqrt(n)/2`).
    pub fn default_for_dim(n: usize) -> Self {
        if n <= 1 {
            WindowProfile::default()
        } else {
            WindowProfile { r1: 0.75, r2: 0.95, kind: TransitionKind::SmoothExp }
        }
    }

    fn step(&self, t: f64) -> f64 {
        match self.kind {
            TransitionKind::SmoothExp => smoothstep(t),
            TransitionKind::Cosine => cosstep(t),
        }
    }

    fn step_deriv(&self, t: f64) -> f64 {
        match self.kind {
            TransitionKind::SmoothExp => smoothstep_deriv(t),
            TransitionKind::Cosine => cosstep_deriv(t),
        }
    }

    /// Bump value at radial distance `u >= 0`.
    pub fn bump(&self, u: f64) -> f64 {
        let u = u.abs();
        if u <= self.r1 {
            1.0
        } else if u >= self.r2 {
            0.0
        } else {
            self.step((self.r2 - u) / (self.r2 - self.r1))
        }
    }

    /// Radial derivative of the bump (nonpositive for `u > 0`).
    pub fn bump_deriv(&self, u: f64) -> f64 {
        let a = u.abs();
        if a <= self.r1 || a >= self.r2 {
            return 0.0;
        }
        let width = self.r2 - self.r1;
        let d = -self.step_deriv((self.r2 - a) / width) / width;
        if u < 0.0 {
            -d
        } else {
            d
        }
    }

    /// Whether support balls of radius `r2` around the unit lattice cover
    /// R^n, i.e. `r2` exceeds the lattice covering radius.
    pub fn covers_unit_lattice(&self, n: usize) -> bool {
        self.r2 > (n as f64).sqrt() / 2.0 + 1e-12
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smoothstep_endpoints_exact() {
        assert_eq!(smoothstep(0.0), 0.0);
        assert_eq!(smoothstep(1.0), 1.0);
        assert_eq!(smoothstep(-0.1), 0.0);
        assert!((smoothstep(0.5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn smoothstep_deriv_matches_finite_difference() {
        let h = 1e-6;
        for t in [0.1, 0.3, 0.5, 0.8, 0.95] {
            let fd = (smoothstep(t + h) - smoothstep(t - h)) / (2.0 * h);
            assert!(
                (smoothstep_deriv(t) - fd).abs() < 1e-6,
                "t={t}: {} vs {fd}",
                smoothstep_deriv(t)
            );
        }
    }

    #[test]
    fn bump_has_exact_plateau_and_support() {
        let p = WindowProfile::default();
        assert_eq!(p.bump(0.0), 1.0);
        assert_eq!(p.bump(0.45), 1.0);
        assert_eq!(p.bump(0.55), 0.0);
        assert_eq!(p.bump(10.0), 0.0);
        let mid = p.bump(0.5);
        assert!(mid > 0.0 && mid < 1.0);
    }

    #[test]
    fn default_profiles_cover() {
        assert!(WindowProfile::default_for_dim(1).covers_unit_lattice(1));
        assert!(WindowProfile::default_for_dim(2).covers_unit_lattice(2));
        assert!(!WindowProfile::default_for_dim(1).covers_unit_lattice(2));
    }

    #[test]
    fn rejects_inverted_radii() {
        assert!(WindowProfile::new(0.6, 0.5, TransitionKind::SmoothExp).is_err());
    }
}
