//! Frequency-box operators and the function-space norms built from them:
//! alpha-modulation norms, Besov norms, windowed symbol-class norms, and the
//! pointwise Mikhlin-type functionals.

use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coverings::{DyadicFamily, LatticeIndex, PartitionFamily, SparseWindow};
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::fit::log_log_tail_slope;
use crate::fl1::{fl1_norm, Fl1Options, Fl1Result, FrequencyFn, Product};
use crate::fourier::{fourier_forward, fourier_inverse, lp_norm};
use crate::grid::{SampledFunction, Side};

/// Relative spectral mass allowed outside the certified covered region.
pub const LEAKAGE_TOL: f64 = 1e-10;

/// The tuple `(p, q, s, alpha)` defining an alpha-modulation (or, at
/// `alpha = 1`, Besov) norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub p: Exponent,
    pub q: Exponent,
    pub s: f64,
    pub alpha: f64,
}

impl SpaceSpec {
    pub fn new(p: Exponent, q: Exponent, s: f64, alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::Config(format!("alpha must lie in [0, 1], got {alpha}")));
        }
        if !s.is_finite() {
            return Err(Error::Config("s must be finite".into()));
        }
        Ok(SpaceSpec { p, q, s, alpha })
    }

    /// True when the spec calls for the dyadic (Besov) machinery.
    pub fn is_besov(&self) -> bool {
        self.alpha >= 1.0
    }

    /// The lattice weight exponent `s / (1 - alpha)`.
    pub fn weight_exponent(&self) -> Result<f64> {
        if self.is_besov() {
            return Err(Error::Config(
                "alpha = 1 weights are dyadic; use besov_norm".into(),
            ));
        }
        Ok(self.s / (1.0 - self.alpha))
    }
}

/// `Box_k f = F^{-1}(eta_k . F f)`.
pub fn box_op(f: &SampledFunction, window: &SparseWindow) -> Result<SampledFunction> {
    let spectrum = fourier_forward(f)?;
    fourier_inverse(&window.multiply_spectrum(&spectrum))
}

/// One row of a norm profile: the box norm and its weighted contribution.
#[derive(Debug, Clone)]
pub struct NormEntry {
    pub index: LatticeIndex,
    pub bracket: f64,
    pub box_lp: f64,
    pub weighted: f64,
}

/// A computed norm together with its per-window profile.
#[derive(Debug, Clone)]
pub struct NormProfile {
    pub value: f64,
    pub entries: Vec<NormEntry>,
}

fn reduce_lq(entries: &[NormEntry], q: Exponent) -> f64 {
    match q {
        Exponent::Infinity => entries.iter().map(|e| e.weighted).fold(0.0, f64::max),
        Exponent::Finite(q) => {
            let sum: f64 = entries.iter().map(|e| e.weighted.powf(q)).sum();
            sum.powf(1.0 / q)
        }
    }
}

/// Alpha-modulation norm with the per-window profile.
///
/// Requires the spectrum of `f` to live in the family's certified covered
/// region (relative leaked mass below [`LEAKAGE_TOL`]).
pub fn alpha_mod_norm_profile(
    f: &SampledFunction,
    spec: &SpaceSpec,
    fam: &PartitionFamily,
) -> Result<NormProfile> {
    if spec.is_besov() {
        return Err(Error::Config("alpha = 1 dispatches to besov_norm".into()));
    }
    if (spec.alpha - fam.alpha()).abs() > 1e-12 {
        return Err(Error::Config(format!(
            "space alpha {} does not match family alpha {}",
            spec.alpha,
            fam.alpha()
        )));
    }
    if f.grid().side() != Side::Spatial {
        return Err(Error::Config("norms take spatial-side inputs".into()));
    }
    let spectrum = fourier_forward(f)?;
    if spectrum.grid() != fam.grid() {
        return Err(Error::Config("function grid does not match the family grid".into()));
    }
    let leaked = spectrum.mass_fraction_outside(fam.covered_radius());
    if leaked > LEAKAGE_TOL {
        return Err(Error::SpectralLeakage { leaked, tol: LEAKAGE_TOL });
    }
    let w_exp = spec.weight_exponent()?;
    let entries: Vec<NormEntry> = fam
        .lattice()
        .indices()
        .par_iter()
        .enumerate()
        .map(|(pos, k)| -> Result<NormEntry> {
            let boxed = fourier_inverse(&fam.window(pos).multiply_spectrum(&spectrum))?;
            let box_lp = lp_norm(&boxed, spec.p);
            let bracket = k.bracket();
            Ok(NormEntry { index: *k, bracket, box_lp, weighted: bracket.powf(w_exp) * box_lp })
        })
        .collect::<Result<_>>()?;
    Ok(NormProfile { value: reduce_lq(&entries, spec.q), entries })
}

/// Alpha-modulation norm `( sum_k <k>^{sq/(1-alpha)} |Box_k f|_p^q )^{1/q}`.
pub fn alpha_mod_norm(
    f: &SampledFunction,
    spec: &SpaceSpec,
    fam: &PartitionFamily,
) -> Result<f64> {
    Ok(alpha_mod_norm_profile(f, spec, fam)?.value)
}

/// Besov norm `( sum_j 2^{jsq} |Delta_j f|_p^q )^{1/q}`.
pub fn besov_norm(
    f: &SampledFunction,
    p: Exponent,
    q: Exponent,
    s: f64,
    dyadic: &DyadicFamily,
) -> Result<f64> {
    if f.grid().side() != Side::Spatial {
        return Err(Error::Config("norms take spatial-side inputs".into()));
    }
    let spectrum = fourier_forward(f)?;
    if spectrum.grid() != dyadic.grid() {
        return Err(Error::Config("function grid does not match the dyadic grid".into()));
    }
    let leaked = spectrum.mass_fraction_outside(dyadic.covered_radius());
    if leaked > LEAKAGE_TOL {
        return Err(Error::SpectralLeakage { leaked, tol: LEAKAGE_TOL });
    }
    let entries: Vec<NormEntry> = (0..dyadic.window_count())
        .into_par_iter()
        .map(|j| -> Result<NormEntry> {
            let boxed = fourier_inverse(&dyadic.multiply_spectrum(j, &spectrum))?;
            let box_lp = lp_norm(&boxed, p);
            let weight = (2.0_f64).powf(j as f64 * s);
            Ok(NormEntry {
                index: LatticeIndex::new1(j as i64),
                bracket: (1u64 << j) as f64,
                box_lp,
                weighted: weight * box_lp,
            })
        })
        .collect::<Result<_>>()?;
    Ok(reduce_lq(&entries, q))
}

/// One window's contribution to a symbol-class norm.
#[derive(Debug, Clone)]
pub struct ClassNormEntry {
    pub index: LatticeIndex,
    pub bracket: f64,
    pub fl1: Fl1Result,
    /// `<k>^{w/(1-alpha)} |eta_k g|_{FL^1}`.
    pub weighted: f64,
}

/// Windowed symbol-class norm: the weighted sup of per-window FL^1 norms,
/// with a tail slope fit of the unweighted values against `<k>`.
#[derive(Debug, Clone)]
pub struct ClassNormResult {
    pub entries: Vec<ClassNormEntry>,
    pub sup: f64,
    pub fitted_slope: Option<f64>,
    pub all_converged: bool,
}

/// `sup_k <k>^{w/(1-alpha)} |eta_k g|_{FL^1}` over the truncated lattice.
pub fn symbol_class_norm(
    g: &dyn FrequencyFn,
    w: f64,
    fam: &PartitionFamily,
    opts: &Fl1Options,
) -> Result<ClassNormResult> {
    let n = fam.dim();
    let alpha = fam.alpha();
    let exponent = w / (1.0 - alpha);
    let entries: Vec<ClassNormEntry> = fam
        .lattice()
        .indices()
        .par_iter()
        .enumerate()
        .map(|(pos, k)| -> Result<ClassNormEntry> {
            let window = fam.window_eval(pos);
            let product = Product(&window, g);
            let center = fam.lattice().center(k);
            let fl1 =
                fl1_norm(&product, n, &center[..n], fam.window(pos).support_radius(), opts)?;
            let bracket = k.bracket();
            Ok(ClassNormEntry {
                index: *k,
                bracket,
                fl1,
                weighted: bracket.powf(exponent) * fl1.value,
            })
        })
        .collect::<Result<_>>()?;
    let sup = entries.iter().map(|e| e.weighted).fold(0.0, f64::max);
    let pairs: Vec<(f64, f64)> = entries.iter().map(|e| (e.bracket, e.fl1.value)).collect();
    Ok(ClassNormResult {
        sup,
        fitted_slope: log_log_tail_slope(&pairs),
        all_converged: entries.iter().all(|e| e.fl1.converged),
        entries,
    })
}

/// A real scalar symbol with an analytic first derivative (dimension 1).
pub trait ScalarSymbol: Sync {
    fn value(&self, xi: f64) -> f64;
    fn deriv(&self, xi: f64) -> f64;
}

/// One evaluation point of the Mikhlin-type functionals.
#[derive(Debug, Clone, Copy)]
pub struct MikhlinPoint {
    pub xi: f64,
    /// `|<xi>^w g(xi)|`.
    pub order0: f64,
    /// `|d/dxi (<xi>^w g)| <xi>`.
    pub order1: f64,
}

/// Verdict of the pointwise decay check.
#[derive(Debug, Clone)]
pub struct MikhlinReport {
    pub points: Vec<MikhlinPoint>,
    pub sup: f64,
    pub tail_slope: Option<f64>,
    /// Bounded-functional verdict: the tail of the functionals does not grow.
    pub member: bool,
}

/// Slope threshold above which the functional tail counts as growing.
pub const MIKHLIN_SLOPE_TOL: f64 = 0.05;

/// Checks the pointwise Mikhlin-type condition
/// `|d^rho(<xi>^w g)| <= C <xi>^{-|rho|}` for `|rho| <= 1` at sample points
/// (dimension 1).
pub fn mikhlin_check(g: &dyn ScalarSymbol, w: f64, sample_points: &[f64]) -> MikhlinReport {
    let points: Vec<MikhlinPoint> = sample_points
        .iter()
        .map(|&xi| {
            let br = crate::bracket::bracket(&[xi]);
            let weighted = br.powf(w) * g.value(xi);
            // d/dxi (<xi>^w g) = w xi <xi>^{w-2} g + <xi>^w g'.
            let d = w * xi * br.powf(w - 2.0) * g.value(xi) + br.powf(w) * g.deriv(xi);
            MikhlinPoint { xi, order0: weighted.abs(), order1: d.abs() * br }
        })
        .collect();
    let sup = points.iter().map(|p| p.order0.max(p.order1)).fold(0.0, f64::max);
    let pairs: Vec<(f64, f64)> = points
        .iter()
        .map(|p| (crate::bracket::bracket(&[p.xi]), p.order0.max(p.order1)))
        .collect();
    let tail_slope = log_log_tail_slope(&pairs);
    let member = sup.is_finite() && tail_slope.is_none_or(|s| s <= MIKHLIN_SLOPE_TOL);
    MikhlinReport { points, sup, tail_slope, member }
}

/// Renders a spectrum closure on a frequency grid and pulls it back to the
/// spatial side.
pub fn function_from_spectrum(
    grid: &crate::grid::Grid,
    spectrum_fn: impl Fn(&[f64]) -> Complex64,
) -> Result<SampledFunction> {
    let spec = SampledFunction::from_fn(*grid, spectrum_fn)?;
    fourier_inverse(&spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coverings::{AlphaLattice, WindowProfile};
    use crate::grid::Grid;
    use crate::rng::SplitMix64;

    fn family(alpha: f64) -> PartitionFamily {
        let lat = AlphaLattice::build(alpha, 1, 16.0).unwrap();
        let grid = Grid::new(1, 4096, 64.0, Side::Frequency).unwrap();
        PartitionFamily::build(lat, grid, WindowProfile::default()).unwrap()
    }

    /// Band-limited test function with spectrum supported in `|xi| <= reach`.
    fn band_limited(fam: &PartitionFamily, reach: f64, seed: u64) -> SampledFunction {
        let mut rng = SplitMix64::new(seed);
        let coeffs: Vec<Complex64> = (0..64)
            .map(|_| {
                let (re, im) = rng.complex_normal();
                Complex64::new(re, im)
            })
            .collect();
        function_from_spectrum(fam.grid(), |xi| {
            let u = xi[0] / reach;
            if u.abs() >= 1.0 {
                return Complex64::ZERO;
            }
            let envelope = (1.0 - u * u).powi(3);
            let mut acc = Complex64::ZERO;
            for (j, c) in coeffs.iter().enumerate() {
                let phase = 2.0 * std::f64::consts::PI * (j as f64 + 1.0) * u / 3.0;
                acc += c * Complex64::new(phase.cos(), phase.sin());
            }
            acc * envelope
        })
        .unwrap()
    }

    #[test]
    fn box_identity_on_band() {
        let fam = family(0.0);
        // Spectrum inside the plateau of window 0.
        let f = function_from_spectrum(fam.grid(), |xi| {
            let u = xi[0] / 0.4;
            if u.abs() >= 1.0 {
                Complex64::ZERO
            } else {
                Complex64::new((1.0 - u * u).powi(2), 0.0)
            }
        })
        .unwrap();
        let pos = fam.position(&LatticeIndex::new1(0)).unwrap();
        let boxed = box_op(&f, fam.window(pos)).unwrap();
        let err: f64 = f
            .values()
            .iter()
            .zip(boxed.values())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-12, "box on plateau should be identity, err {err}");
    }

    #[test]
    fn boxes_annihilate_disjoint_spectra() {
        let fam = family(0.0);
        let f = function_from_spectrum(fam.grid(), |xi| {
            let u = (xi[0] - 6.0) / 0.3;
            if u.abs() >= 1.0 {
                Complex64::ZERO
            } else {
                Complex64::new((1.0 - u * u).powi(2), 0.0)
            }
        })
        .unwrap();
        let pos = fam.position(&LatticeIndex::new1(0)).unwrap();
        let boxed = box_op(&f, fam.window(pos)).unwrap();
        let sup = lp_norm(&boxed, Exponent::Infinity);
        assert!(sup < 1e-14, "disjoint supports must annihilate, got {sup}");
    }

    #[test]
    fn boxes_telescope_to_identity() {
        for alpha in [0.0, 0.5] {
            let fam = family(alpha);
            let f = band_limited(&fam, 0.8 * fam.covered_radius(), 17);
            let mut acc = SampledFunction::zeros(*f.grid());
            for pos in 0..fam.len() {
                let b = box_op(&f, fam.window(pos)).unwrap();
                for (a, v) in acc.values_mut().iter_mut().zip(b.values()) {
                    *a += v;
                }
            }
            let sup = lp_norm(&f, Exponent::Infinity);
            let err = f
                .values()
                .iter()
                .zip(acc.values())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(err < 1e-10 * sup.max(1.0), "alpha={alpha}: telescoping error {err}");
        }
    }

    #[test]
    fn single_window_support_gives_weighted_lp() {
        let fam = family(0.5);
        let k = LatticeIndex::new1(2);
        let pos = fam.position(&k).unwrap();
        let c = fam.lattice().center(&k)[0];
        let plateau = fam.plateau_c1() * fam.lattice().radius(&k) * 0.8;
        let f = function_from_spectrum(fam.grid(), |xi| {
            let u = (xi[0] - c) / plateau;
            if u.abs() >= 1.0 {
                Complex64::ZERO
            } else {
                Complex64::new((1.0 - u * u).powi(3), 0.0)
            }
        })
        .unwrap();
        // Check the premise: every other window vanishes on the support.
        for other in 0..fam.len() {
            if other != pos {
                let w = fam.window_eval(other);
                assert_eq!(w.value(&[c]), 0.0);
            }
        }
        let spec = SpaceSpec::new(Exponent::Finite(2.0), Exponent::Finite(2.0), 0.7, 0.5).unwrap();
        let norm = alpha_mod_norm(&f, &spec, &fam).unwrap();
        let expected = k.bracket().powf(0.7 / 0.5) * lp_norm(&f, Exponent::Finite(2.0));
        assert!(
            (norm - expected).abs() < 1e-9 * expected,
            "norm {norm} vs single-window value {expected}"
        );
    }

    #[test]
    fn weight_monotone_in_s() {
        let fam = family(0.5);
        let f = band_limited(&fam, 0.7 * fam.covered_radius(), 3);
        let mut prev = f64::INFINITY;
        for s in [1.0, 0.5, 0.0, -0.5] {
            let spec =
                SpaceSpec::new(Exponent::Finite(1.0), Exponent::Finite(1.0), s, 0.5).unwrap();
            let v = alpha_mod_norm(&f, &spec, &fam).unwrap();
            assert!(v <= prev * (1.0 + 1e-12), "s={s}: {v} > {prev}");
            prev = v;
        }
    }

    #[test]
    fn l2_equivalence_within_overlap_bound() {
        let fam = family(0.5);
        let f = band_limited(&fam, 0.7 * fam.covered_radius(), 5);
        let spec = SpaceSpec::new(Exponent::Finite(2.0), Exponent::Finite(2.0), 0.0, 0.5).unwrap();
        let m = alpha_mod_norm(&f, &spec, &fam).unwrap();
        let l2 = lp_norm(&f, Exponent::Finite(2.0));
        let bound = (fam.max_overlap() as f64).sqrt();
        assert!(m <= l2 * (1.0 + 1e-9), "m = {m}, l2 = {l2}");
        assert!(m >= l2 / bound * (1.0 - 1e-9), "m = {m}, l2/{bound} = {}", l2 / bound);
    }

    #[test]
    fn norm_axioms_on_seeded_pairs() {
        let fam = family(0.0);
        let spec = SpaceSpec::new(Exponent::Finite(1.0), Exponent::Finite(2.0), 0.3, 0.0).unwrap();
        let f = band_limited(&fam, 10.0, 21);
        let g = band_limited(&fam, 10.0, 22);
        let nf = alpha_mod_norm(&f, &spec, &fam).unwrap();
        let ng = alpha_mod_norm(&g, &spec, &fam).unwrap();
        // Homogeneity.
        let scaled =
            SampledFunction::new(*f.grid(), f.values().iter().map(|v| v * 2.5).collect()).unwrap();
        let ns = alpha_mod_norm(&scaled, &spec, &fam).unwrap();
        assert!((ns - 2.5 * nf).abs() < 1e-9 * nf);
        // Triangle inequality.
        let sum = SampledFunction::new(
            *f.grid(),
            f.values().iter().zip(g.values()).map(|(a, b)| a + b).collect(),
        )
        .unwrap();
        let nsum = alpha_mod_norm(&sum, &spec, &fam).unwrap();
        assert!(nsum <= (nf + ng) * (1.0 + 1e-9), "{nsum} > {nf} + {ng}");
    }

    #[test]
    fn leakage_rejected() {
        let fam = family(0.0);
        let f = band_limited(&fam, fam.grid().frequency_extent() * 0.95, 9);
        let spec = SpaceSpec::new(Exponent::Finite(2.0), Exponent::Finite(2.0), 0.0, 0.0).unwrap();
        match alpha_mod_norm(&f, &spec, &fam) {
            Err(Error::SpectralLeakage { leaked, .. }) => assert!(leaked > LEAKAGE_TOL),
            other => panic!("expected leakage error, got {other:?}"),
        }
    }

    #[test]
    fn besov_single_shell_is_lp() {
        let grid = Grid::new(1, 4096, 64.0, Side::Frequency).unwrap();
        let dy = DyadicFamily::build(3, grid).unwrap();
        let f = function_from_spectrum(dy.grid(), |xi| {
            let u = xi[0];
            if u.abs() >= 1.0 {
                Complex64::ZERO
            } else {
                Complex64::new((1.0 - u * u).powi(3), 0.0)
            }
        })
        .unwrap();
        let v = besov_norm(&f, Exponent::Finite(2.0), Exponent::Finite(2.0), 0.7, &dy).unwrap();
        let l2 = lp_norm(&f, Exponent::Finite(2.0));
        assert!((v - l2).abs() < 1e-10 * l2, "single-shell Besov {v} vs {l2}");
    }

    #[test]
    fn besov_l2_within_shell_overlap() {
        let grid = Grid::new(1, 4096, 64.0, Side::Frequency).unwrap();
        let dy = DyadicFamily::build(3, grid).unwrap();
        let mut rng = SplitMix64::new(31);
        let coeffs: Vec<f64> = (0..32).map(|_| rng.normal()).collect();
        let f = function_from_spectrum(dy.grid(), |xi| {
            let u = xi[0] / 9.0;
            if u.abs() >= 1.0 {
                return Complex64::ZERO;
            }
            let mut acc = 0.0;
            for (j, c) in coeffs.iter().enumerate() {
                acc += c * ((j as f64 + 1.0) * u).cos();
            }
            Complex64::new(acc * (1.0 - u * u).powi(2), 0.0)
        })
        .unwrap();
        let v = besov_norm(&f, Exponent::Finite(2.0), Exponent::Finite(2.0), 0.0, &dy).unwrap();
        let l2 = lp_norm(&f, Exponent::Finite(2.0));
        assert!(v <= l2 * 2.0_f64.sqrt() * (1.0 + 1e-9));
        assert!(v >= l2 / 2.0_f64.sqrt() * (1.0 - 1e-9));
    }

    #[test]
    fn class_norm_of_constant_matches_window_fl1() {
        let fam = family(0.5);
        let one = |_: &[f64]| Complex64::new(1.0, 0.0);
        let r = symbol_class_norm(&one, 0.0, &fam, &Fl1Options::default()).unwrap();
        assert!(r.all_converged);
        // w = 0, g = 1: entries are plain window fl1 norms, uniformly bounded.
        let max = r.entries.iter().map(|e| e.fl1.value).fold(0.0, f64::max);
        let min = r.entries.iter().map(|e| e.fl1.value).fold(f64::INFINITY, f64::min);
        assert!(max / min < 3.0, "window fl1 spread {max}/{min}");
        assert_eq!(r.sup, max);
    }

    #[test]
    fn class_norm_with_positive_weight_diverges() {
        let fam = family(0.5);
        let one = |_: &[f64]| Complex64::new(1.0, 0.0);
        let flat = symbol_class_norm(&one, 0.0, &fam, &Fl1Options::default()).unwrap();
        let weighted = symbol_class_norm(&one, 1.0, &fam, &Fl1Options::default()).unwrap();
        let bracket_max =
            fam.lattice().indices().iter().map(|k| k.bracket()).fold(0.0, f64::max);
        assert!(
            weighted.sup > flat.sup * bracket_max.powf(1.0 / (1.0 - 0.5)) * 0.5,
            "positive weight should grow like <k_max>^2: {} vs {}",
            weighted.sup,
            flat.sup
        );
    }

    #[test]
    fn class_norm_slope_tracks_symbol_decay() {
        let fam = family(0.25);
        // g = <xi>^{beta-2} with beta = 1: expected slope (beta-2)/(1-alpha).
        let g = |xi: &[f64]| Complex64::new(crate::bracket::bracket(xi).powf(-1.0), 0.0);
        let r = symbol_class_norm(&g, 0.0, &fam, &Fl1Options::default()).unwrap();
        let slope = r.fitted_slope.unwrap();
        let expected = -1.0 / (1.0 - 0.25);
        assert!(
            (slope - expected).abs() < 0.15 * expected.abs(),
            "slope {slope} vs {expected}"
        );
    }

    struct Const(f64);
    impl ScalarSymbol for Const {
        fn value(&self, _: f64) -> f64 {
            self.0
        }
        fn deriv(&self, _: f64) -> f64 {
            0.0
        }
    }

    struct BracketPower(f64);
    impl ScalarSymbol for BracketPower {
        fn value(&self, xi: f64) -> f64 {
            crate::bracket::bracket(&[xi]).powf(self.0)
        }
        fn deriv(&self, xi: f64) -> f64 {
            let br = crate::bracket::bracket(&[xi]);
            self.0 * xi * br.powf(self.0 - 2.0)
        }
    }

    #[test]
    fn constants_are_mikhlin_members() {
        let pts: Vec<f64> = (1..200).map(|i| i as f64 * 0.5).collect();
        let r = mikhlin_check(&Const(3.0), 0.0, &pts);
        assert!(r.member);
        assert!((r.sup - 3.0).abs() < 1e-12);
    }

    #[test]
    fn weight_cancellation_is_exact() {
        // g = <xi>^{-w} checked at weight w: order-0 functional is exactly 1.
        let w = 1.3;
        let pts: Vec<f64> = (1..200).map(|i| i as f64 * 0.5).collect();
        let r = mikhlin_check(&BracketPower(-w), w, &pts);
        assert!(r.member);
        for p in &r.points {
            assert!((p.order0 - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn growing_symbol_fails_membership() {
        let pts: Vec<f64> = (1..200).map(|i| i as f64 * 0.5).collect();
        let r = mikhlin_check(&BracketPower(1.0), 0.0, &pts);
        assert!(!r.member, "slope {:?}", r.tail_slope);
    }
}
