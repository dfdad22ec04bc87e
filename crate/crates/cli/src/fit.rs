//! Exponential growth fits for node counts.

use std::collections::BTreeMap;

use crate::bench::BenchRow;

pub const MIN_POINTS: usize = 5;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FitError {
    #[error("need at least {MIN_POINTS} points with positive node counts, got {0}")]
    TooFewPoints(usize),
    #[error("all points share the same length; the slope is undefined")]
    DegenerateLengths,
}

/// `nodes ≈ c * base^n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingFit {
    pub base: f64,
    /// Standard error of `base`, propagated from the slope.
    pub std_error: f64,
    pub points: usize,
}

/// Least squares of `ln(nodes)` against `n`.
pub fn fit_scaling(points: &[(usize, u64)]) -> Result<ScalingFit, FitError> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(_, nodes)| *nodes > 0)
        .map(|&(n, nodes)| (n as f64, (nodes as f64).ln()))
        .collect();
    let m = pts.len();
    if m < MIN_POINTS || m < points.len() {
        return Err(FitError::TooFewPoints(m));
    }
    let mean_x = pts.iter().map(|p| p.0).sum::<f64>() / m as f64;
    let mean_y = pts.iter().map(|p| p.1).sum::<f64>() / m as f64;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return Err(FitError::DegenerateLengths);
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ssr: f64 = pts
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    let slope_se = (ssr / (m as f64 - 2.0) / sxx).sqrt();
    let base = slope.exp();
    Ok(ScalingFit {
        base,
        std_error: base * slope_se,
        points: m,
    })
}

/// One fit per distinct `toggles` label, in label order.
pub fn fit_by_toggles(rows: &[BenchRow]) -> BTreeMap<String, Result<ScalingFit, FitError>> {
    let mut groups: BTreeMap<String, Vec<(usize, u64)>> = BTreeMap::new();
    for r in rows {
        groups.entry(r.toggles.clone()).or_default().push((r.n, r.nodes));
    }
    groups
        .into_iter()
        .map(|(k, pts)| (k, fit_scaling(&pts)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exact_powers_of_two() {
        let pts: Vec<(usize, u64)> = (10..30).map(|n| (n, 1u64 << n)).collect();
        let fit = fit_scaling(&pts).unwrap();
        assert!((fit.base - 2.0).abs() < 0.001);
        assert!(fit.std_error < 0.001);
    }

    #[test]
    fn noisy_recovery() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pts: Vec<(usize, u64)> = (15..=35)
            .map(|n| {
                let noise = 1.0 + rng.gen_range(-0.05..0.05);
                (n, (3.0 * 1.74f64.powi(n as i32) * noise) as u64)
            })
            .collect();
        let fit = fit_scaling(&pts).unwrap();
        assert!((1.70..=1.78).contains(&fit.base), "{fit:?}");
    }

    #[test]
    fn too_few_points() {
        let pts = [(1, 2), (2, 4), (3, 8), (4, 16)];
        assert_eq!(fit_scaling(&pts), Err(FitError::TooFewPoints(4)));
        let pts = [(1, 2), (2, 4), (3, 8), (4, 16), (5, 0)];
        assert_eq!(fit_scaling(&pts), Err(FitError::TooFewPoints(4)));
        let pts = [(3, 2); 6];
        assert_eq!(fit_scaling(&pts), Err(FitError::DegenerateLengths));
    }
}
