//! The truncated index lattice of an alpha-covering: all `k` in `Z^n` whose
//! covering center `<k>^{alpha/(1-alpha)} k` lies within a frequency radius.

use crate::bracket::bracket_int;
use crate::error::{Error, Result};

use super::warp::FrequencyWarp;

/// An index into the covering lattice. The second coordinate is zero in
/// dimension 1. Ordering is lexicographic, which fixes every reduction and
/// report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeIndex {
    coords: [i64; 2],
}

impl LatticeIndex {
    pub fn new1(k: i64) -> Self {
        LatticeIndex { coords: [k, 0] }
    }

    pub fn new2(k0: i64, k1: i64) -> Self {
        LatticeIndex { coords: [k0, k1] }
    }

    pub fn coords(&self, n: usize) -> &[i64] {
        &self.coords[..n]
    }

    /// `<k>`.
    pub fn bracket(&self) -> f64 {
        bracket_int(&self.coords)
    }

    /// Euclidean norm `|k|`.
    pub fn norm(&self) -> f64 {
        let s = (self.coords[0] * self.coords[0] + self.coords[1] * self.coords[1]) as f64;
        s.sqrt()
    }

    /// CSV-friendly label: `"3"` in 1D, `"3;-1"` in 2D.
    pub fn label(&self, n: usize) -> String {
        if n == 1 {
            format!("{}", self.coords[0])
        } else {
            format!("{};{}", self.coords[0], self.coords[1])
        }
    }
}

/// The truncated alpha-lattice together with its warp geometry.
#[derive(Debug, Clone)]
pub struct AlphaLattice {
    alpha: f64,
    n: usize,
    xi_max: f64,
    warp: FrequencyWarp,
    indices: Vec<LatticeIndex>,
}

impl AlphaLattice {
    /// Enumerates `{k : |<k>^{alpha/(1-alpha)} k| <= xi_max}`.
    ///
    /// `alpha = 1` is rejected: the dyadic family plays that role.
    pub fn build(alpha: f64, n: usize, xi_max: f64) -> Result<Self> {
        if alpha >= 1.0 {
            return Err(Error::Config(
                "alpha = 1 has no covering lattice; use the dyadic partition".into(),
            ));
        }
        let warp = FrequencyWarp::new(alpha)?;
        if n != 1 && n != 2 {
            return Err(Error::Config(format!("dimension must be 1 or 2, got {n}")));
        }
        if !(xi_max > 0.0) {
            return Err(Error::Config(format!("xi_max must be positive, got {xi_max}")));
        }
        let k_max = warp.radial_inv(xi_max).floor() as i64;
        let mut indices = Vec::new();
        let in_range = |k: &LatticeIndex| warp.radial(k.norm()) <= xi_max * (1.0 + 1e-12);
        match n {
            1 => {
                for k in -k_max..=k_max {
                    let idx = LatticeIndex::new1(k);
                    if in_range(&idx) {
                        indices.push(idx);
                    }
                }
            }
            _ => {
                for k0 in -k_max..=k_max {
                    for k1 in -k_max..=k_max {
                        let idx = LatticeIndex::new2(k0, k1);
                        if in_range(&idx) {
                            indices.push(idx);
                        }
                    }
                }
            }
        }
        indices.sort();
        Ok(AlphaLattice { alpha, n, xi_max, warp, indices })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn xi_max(&self) -> f64 {
        self.xi_max
    }

    pub fn warp(&self) -> &FrequencyWarp {
        &self.warp
    }

    pub fn indices(&self) -> &[LatticeIndex] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, k: &LatticeIndex) -> bool {
        self.indices.binary_search(k).is_ok()
    }

    /// Covering center `<k>^{alpha/(1-alpha)} k`.
    pub fn center(&self, k: &LatticeIndex) -> [f64; 2] {
        let kf: Vec<f64> = k.coords(self.n).iter().map(|&v| v as f64).collect();
        self.warp.to_freq(&kf)
    }

    /// Covering scale `<k>^{alpha/(1-alpha)}`.
    pub fn radius(&self, k: &LatticeIndex) -> f64 {
        k.bracket().powf(self.warp.beta())
    }

    /// Smallest `|l|` over integer points outside the lattice; anything
    /// within this index radius minus a support radius is fully covered.
    pub fn first_excluded_norm(&self) -> f64 {
        let k_max = self.warp.radial_inv(self.xi_max).floor() as i64;
        match self.n {
            1 => (k_max + 1) as f64,
            _ => {
                let mut best = f64::INFINITY;
                for k0 in -(k_max + 1)..=(k_max + 1) {
                    for k1 in -(k_max + 1)..=(k_max + 1) {
                        let idx = LatticeIndex::new2(k0, k1);
                        if !self.contains(&idx) {
                            best = best.min(idx.norm());
                        }
                    }
                }
                // The corner just outside the scan box is excluded for sure.
                best.min((k_max + 1) as f64)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_zero_is_unit_lattice() {
        let lat = AlphaLattice::build(0.0, 1, 10.0).unwrap();
        let ks: Vec<i64> = lat.indices().iter().map(|k| k.coords(1)[0]).collect();
        assert_eq!(ks, (-10..=10).collect::<Vec<_>>());
        for k in lat.indices() {
            assert_eq!(lat.center(k)[0], k.coords(1)[0] as f64);
            assert_eq!(lat.radius(k), 1.0);
        }
    }

    #[test]
    fn origin_always_present_with_unit_scale() {
        for alpha in [0.0, 0.3, 0.5, 0.75] {
            let lat = AlphaLattice::build(alpha, 1, 5.0).unwrap();
            let zero = LatticeIndex::new1(0);
            assert!(lat.contains(&zero));
            assert_eq!(lat.center(&zero)[0], 0.0);
            assert_eq!(lat.radius(&zero), 1.0);
        }
    }

    #[test]
    fn alpha_half_scale_matches_closed_form() {
        let lat = AlphaLattice::build(0.5, 1, 200.0).unwrap();
        let k3 = LatticeIndex::new1(3);
        assert!((lat.radius(&k3) - 10.0_f64.sqrt()).abs() < 1e-12);
        assert!((lat.center(&k3)[0] - 9.4868330).abs() < 1e-6);
    }

    #[test]
    fn truncation_matches_brute_force_count() {
        let lat = AlphaLattice::build(0.5, 1, 200.0).unwrap();
        let brute: Vec<i64> = (-1000..=1000)
            .filter(|&k| {
                let kf = k as f64;
                (kf * kf * (1.0 + kf * kf)).sqrt() <= 200.0 * (1.0 + 1e-12)
            })
            .collect();
        assert_eq!(lat.len(), brute.len());
    }

    #[test]
    fn rejects_alpha_one() {
        assert!(AlphaLattice::build(1.0, 1, 10.0).is_err());
    }

    #[test]
    fn two_dim_lattice_is_radial() {
        let lat = AlphaLattice::build(0.5, 2, 10.0).unwrap();
        assert!(lat.contains(&LatticeIndex::new2(0, 0)));
        assert!(lat.contains(&LatticeIndex::new2(1, 1)));
        for k in lat.indices() {
            let c = lat.center(k);
            assert!((c[0] * c[0] + c[1] * c[1]).sqrt() <= 10.0 * (1.0 + 1e-9));
        }
        assert!(lat.first_excluded_norm() > 0.0);
    }
}
