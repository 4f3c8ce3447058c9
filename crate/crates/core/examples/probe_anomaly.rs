// scratch: inspect per-box norms of adapted gaussian members
use alphamod::coverings::*;
use alphamod::exponent::Exponent;
use alphamod::harness::*;
use alphamod::spaces::*;
use alphamod::symbols::*;

fn main() {
    let profile = WindowProfile::default();
    let fam = family_for(0.5, 1, 48.0, &profile, 64.0).unwrap();
    println!("covered = {}", fam.covered_radius());
    let band = fam.covered_radius();
    for xi0 in [5.26, 10.52, 21.05] {
        let warp = FrequencyWarp::new(0.5).unwrap();
        let kappa = warp.radial_inv(xi0);
        let w_f = 0.55 * warp.radial_deriv(kappa);
        let sigma = 1.0 / w_f;
        let f = function_from_spectrum(fam.grid(), |xi| {
            let d = xi[0] - xi0;
            if xi[0].abs() > band { return rustfft::num_complex::Complex64::ZERO; }
            rustfft::num_complex::Complex64::new(sigma * (-std::f64::consts::PI * sigma * sigma * d * d).exp(), 0.0)
        }).unwrap();
        let out = apply_unimodular(&f, &SymbolSpec::Quadratic { t: 1.0 }).unwrap();
        let space = SpaceSpec::new(Exponent::Finite(1.0), Exponent::Finite(2.0), 0.0, 0.5).unwrap();
        let pin = alpha_mod_norm_profile(&f, &space, &fam).unwrap();
        let pout = alpha_mod_norm_profile(&out, &space, &fam).unwrap();
        println!("xi0={xi0} w_f={w_f:.3} ratio={:.4}", pout.value / pin.value);
        for (a, b) in pin.entries.iter().zip(&pout.entries) {
            if a.box_lp > 1e-6 || b.box_lp > 1e-6 {
                println!("  k={} in={:.5} out={:.5}", a.index.label(1), a.box_lp, b.box_lp);
            }
        }
    }
}
