//! Least-squares slope fits on log-log data.

/// Slope of `log y` against `log x` over the tail `x >= sqrt(x_min x_max)`,
/// dropping nonpositive entries. Returns `None` when fewer than three tail
/// points survive or the abscissas are degenerate.
pub fn log_log_tail_slope(pairs: &[(f64, f64)]) -> Option<f64> {
    let clean: Vec<(f64, f64)> =
        pairs.iter().copied().filter(|(x, y)| *x > 0.0 && *y > 0.0).collect();
    if clean.is_empty() {
        return None;
    }
    let x_min = clean.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let x_max = clean.iter().map(|p| p.0).fold(0.0, f64::max);
    let mid = (x_min * x_max).sqrt();
    let tail: Vec<(f64, f64)> = clean
        .into_iter()
        .filter(|(x, _)| *x >= mid * (1.0 - 1e-12))
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    slope(&tail)
}

/// Plain least-squares slope of `y` on `x`.
pub fn slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 3 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in points {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if sxx < 1e-24 {
        None
    } else {
        Some(sxy / sxx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_power_law() {
        let pairs: Vec<(f64, f64)> = (1..80).map(|i| {
            let x = i as f64;
            (x, 3.0 * x.powf(1.7))
        })
        .collect();
        let s = log_log_tail_slope(&pairs).unwrap();
        assert!((s - 1.7).abs() < 1e-9, "slope {s}");
    }

    #[test]
    fn tail_fit_ignores_preasymptotic_head() {
        // Head is flat, tail behaves like x^2; the fit sees only the tail.
        let pairs: Vec<(f64, f64)> = (1..100)
            .map(|i| {
                let x = i as f64;
                let y = if x < 10.0 { 5.0 } else { x * x / 20.0 };
                (x, y)
            })
            .collect();
        let s = log_log_tail_slope(&pairs).unwrap();
        assert!((s - 2.0).abs() < 0.05, "slope {s}");
    }

    #[test]
    fn too_few_points_gives_none() {
        assert!(log_log_tail_slope(&[(1.0, 1.0), (2.0, 2.0)]).is_none());
        assert!(log_log_tail_slope(&[]).is_none());
    }
}
