//! Temporary numeric probe (removed before finalizing).

use alphamod::coverings::{verify_partition, AlphaLattice, PartitionFamily, VerifyOptions, WindowProfile};
use alphamod::grid::{Grid, Side};

#[test]
#[ignore]
fn probe_partition_numbers() {
    for alpha in [0.0, 0.25, 0.5, 0.75] {
        let lat = AlphaLattice::build(alpha, 1, 16.0).unwrap();
        let grid = Grid::new(1, 4096, 64.0, Side::Frequency).unwrap();
        let fam = PartitionFamily::build(lat, grid, WindowProfile::default()).unwrap();
        let t0 = std::time::Instant::now();
        let rep = verify_partition(&fam, &VerifyOptions::default()).unwrap();
        println!(
            "alpha={alpha}: windows={} sum_dev={:.2e} support={} fl1=[{:.4},{:.4}] ratio={:.3} conv={} d1_drift={:.4} d2_drift={:.4} C1={:.4} c={:.4} covered={:.3} overlap={} ({:?})",
            rep.windows.len(),
            rep.max_sum_dev,
            rep.support_exact,
            rep.fl1_min,
            rep.fl1_sup,
            rep.fl1_ratio,
            rep.fl1_all_converged,
            rep.d1_drift,
            rep.d2_drift,
            rep.plateau_c1,
            rep.support_radius_c,
            rep.covered_radius,
            rep.max_overlap,
            t0.elapsed(),
        );
        for (b, d1, d2) in &rep.deriv_sweep {
            if rep.deriv_sweep.len() < 30 {
                println!("   <k>={b:.3} d1={d1:.3} d2={d2:.3}");
            }
        }
    }
}
