/// Up to `count` distinct 1-based iteration indices spread evenly in
/// `log n` over `[first, last]`.
pub fn log_spaced_indices(first: usize, last: usize, count: usize) -> Vec<usize> {
    assert!(first >= 1 && last >= first && count >= 2);
    let (a, b) = ((first as f64).ln(), (last as f64).ln());
    let mut out: Vec<usize> = (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp().round() as usize)
        .map(|n| n.clamp(first, last))
        .collect();
    out.dedup();
    out
}

/// Least-squares slope of `ln value` against `ln n` over the given points.
/// Non-positive values are skipped.
pub fn loglog_slope(points: &[(usize, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        points.iter().filter(|(_, v)| *v > 0.0 && v.is_finite()).map(|&(n, v)| ((n as f64).ln(), v.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
