//! Seeded families of band-limited test functions for the operator probes.
//!
//! Every member is constructed in the frequency domain and hard-truncated to
//! a declared band, so the norm preconditions hold exactly. Seeds derive
//! from the base seed, the family name, and the member index through the
//! fixed mixing rule in [`crate::rng::derived_seed`].

use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::fourier_inverse;
use crate::grid::{Grid, SampledFunction, Side};
use crate::rng::{derived_seed, SplitMix64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Gaussians,
    ModulatedGaussians,
    /// Modulated Gaussians whose frequency width tracks the covering scale
    /// at the modulation center; the hardest family for loss probes.
    AdaptedGaussians,
    Chirps,
    RandomBandLimited,
}

impl FamilyKind {
    fn stream_name(&self) -> &'static str {
        match self {
            FamilyKind::Gaussians => "gaussians",
            FamilyKind::ModulatedGaussians => "modulated_gaussians",
            FamilyKind::AdaptedGaussians => "adapted_gaussians",
            FamilyKind::Chirps => "chirps",
            FamilyKind::RandomBandLimited => "random_band_limited",
        }
    }
}

/// A family request: `reach` bounds the modulation centers / bandwidth, and
/// `band` is the hard truncation radius (the certified covered region).
/// `alpha` feeds the covering scale of the adapted kind.
#[derive(Debug, Clone, Copy)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub seed: u64,
    pub count: usize,
    pub reach: f64,
    pub band: f64,
    pub alpha: f64,
}

/// Gaussian widths used by the deterministic families.
pub const WIDTHS: [f64; 4] = [0.25, 0.5, 1.0, 2.0];
/// Chirp rates.
pub const CHIRP_RATES: [f64; 3] = [0.25, 1.0, 4.0];

/// One labeled member of a family.
#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub label: String,
    pub function: SampledFunction,
}

fn truncated_from_spectrum(
    grid: &Grid,
    band: f64,
    f: impl Fn(f64) -> Complex64,
) -> Result<SampledFunction> {
    let spectrum = SampledFunction::from_fn(*grid, |xi| {
        if xi[0].abs() > band {
            Complex64::ZERO
        } else {
            f(xi[0])
        }
    })?;
    fourier_inverse(&spectrum)
}

/// Builds the family on a frequency grid (dimension 1).
pub fn build_family(spec: &FamilySpec, grid: &Grid) -> Result<Vec<FamilyMember>> {
    if grid.dim() != 1 || grid.side() != Side::Frequency {
        return Err(Error::Config("families are built on 1d frequency grids".into()));
    }
    if spec.reach > spec.band {
        return Err(Error::Config(format!(
            "family reach {} exceeds the band limit {}",
            spec.reach, spec.band
        )));
    }
    if spec.count == 0 {
        return Err(Error::Config("family count must be positive".into()));
    }
    let mut members = Vec::with_capacity(spec.count);
    for i in 0..spec.count {
        let seed = derived_seed(spec.seed, spec.kind.stream_name(), i as u64);
        let mut rng = SplitMix64::new(seed);
        let width = WIDTHS[i % WIDTHS.len()];
        let member = match spec.kind {
            FamilyKind::Gaussians => {
                let sigma = width;
                let f = truncated_from_spectrum(grid, spec.band, move |xi| {
                    Complex64::new(
                        sigma * (-std::f64::consts::PI * sigma * sigma * xi * xi).exp(),
                        0.0,
                    )
                })?;
                FamilyMember { label: format!("gauss_w{width}"), function: f }
            }
            FamilyKind::ModulatedGaussians => {
                // Modulation centers on a geometric ladder up to the reach.
                let ladder = [0.125, 0.25, 0.5, 1.0];
                let xi0 = spec.reach * ladder[(i / WIDTHS.len()) % ladder.len()];
                let sigma = width;
                let f = truncated_from_spectrum(grid, spec.band, move |xi| {
                    let d = xi - xi0;
                    Complex64::new(
                        sigma * (-std::f64::consts::PI * sigma * sigma * d * d).exp(),
                        0.0,
                    )
                })?;
                FamilyMember { label: format!("modgauss_w{width}_xi{xi0:.3}"), function: f }
            }
            FamilyKind::AdaptedGaussians => {
                // Centers snap to covering centers on a geometric index
                // ladder, so each member fills one window's plateau instead
                // of straddling an overlap.
                let warp = crate::coverings::FrequencyWarp::new(spec.alpha)?;
                let k_top = warp.radial_inv(spec.reach).floor().max(1.0);
                let ladder = [1.0, 0.70710678, 0.5, 0.35355339];
                let k = (k_top * ladder[i % ladder.len()]).round().max(1.0);
                let xi0 = warp.radial(k);
                // Frequency width of the covering window at the center.
                let w_f = (0.55 * warp.radial_deriv(k)).max(0.25);
                let sigma = 1.0 / w_f;
                let f = truncated_from_spectrum(grid, spec.band, move |xi| {
                    let d = xi - xi0;
                    Complex64::new(
                        sigma * (-std::f64::consts::PI * sigma * sigma * d * d).exp(),
                        0.0,
                    )
                })?;
                FamilyMember { label: format!("adapted_k{k}_w{w_f:.3}"), function: f }
            }
            FamilyKind::Chirps => {
                // Spatial chirp exp(i rho x^2) under a Gaussian envelope,
                // band-limited by truncating its spectrum.
                let rho = CHIRP_RATES[(i / WIDTHS.len()) % CHIRP_RATES.len()];
                let sigma = 1.0 / width;
                let spatial = SampledFunction::from_fn(grid.dual(), |x| {
                    let ph = rho * x[0] * x[0];
                    let env = (-std::f64::consts::PI * (x[0] / sigma) * (x[0] / sigma)).exp();
                    Complex64::new(env * ph.cos(), env * ph.sin())
                })?;
                let spectrum = crate::fourier::fourier_forward(&spatial)?;
                let band = spec.band;
                let clipped = SampledFunction::from_fn(*grid, |xi| {
                    if xi[0].abs() > band {
                        Complex64::ZERO
                    } else {
                        let m = ((xi[0] + grid.frequency_extent()) / grid.dxi()).round() as usize;
                        spectrum.values()[m.min(grid.samples_per_axis() - 1)]
                    }
                })?;
                let f = fourier_inverse(&clipped)?;
                FamilyMember { label: format!("chirp_r{rho}_w{width}"), function: f }
            }
            FamilyKind::RandomBandLimited => {
                let coeffs: Vec<Complex64> = (0..48)
                    .map(|_| {
                        let (re, im) = rng.complex_normal();
                        Complex64::new(re, im)
                    })
                    .collect();
                let reach = spec.reach;
                let f = truncated_from_spectrum(grid, spec.band.min(reach), move |xi| {
                    let u = xi / reach;
                    if u.abs() >= 1.0 {
                        return Complex64::ZERO;
                    }
                    let mut acc = Complex64::ZERO;
                    for (j, c) in coeffs.iter().enumerate() {
                        let ph = (j as f64 + 1.0) * u * 2.5;
                        acc += c * Complex64::new(ph.cos(), ph.sin());
                    }
                    acc * (1.0 - u * u).powi(3)
                })?;
                FamilyMember { label: format!("random_{i}"), function: f }
            }
        };
        members.push(member);
    }
    Ok(members)
}
