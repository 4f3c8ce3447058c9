//! The smooth weight `<x> = (1 + |x|^2)^(1/2)` used throughout the crate,
//! for real vectors and integer lattice points.

/// `<x>` of a real vector.
pub fn bracket(x: &[f64]) -> f64 {
    let sq: f64 = x.iter().map(|v| v * v).sum();
    (1.0 + sq).sqrt()
}

/// `<k>` of an integer lattice point.
pub fn bracket_int(k: &[i64]) -> f64 {
    let sq: f64 = k.iter().map(|&v| (v as f64) * (v as f64)).sum();
    (1.0 + sq).sqrt()
}

/// Euclidean norm of a real vector.
pub fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}
