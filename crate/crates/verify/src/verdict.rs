//! Boundedness verdicts for ratio sequences indexed by `N`.

/// Outcome of the factor and trend rules on one sequence of ratios.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub max: f64,
    pub median: f64,
    /// Least-squares slope of `ln(ratio)` against `N` over the trailing third.
    pub slope: f64,
    /// Whether the slope took part in `pass`; grids of fewer than four
    /// levels have a one-point trailing third and skip the trend rule.
    pub trend_tested: bool,
    pub argmax_level: u32,
    pub pass: bool,
}

pub const MAX_SLOPE: f64 = 0.1;

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite ratios"));
    let k = v.len();
    if k % 2 == 1 {
        v[k / 2]
    } else {
        (v[k / 2 - 1] + v[k / 2]) / 2.0
    }
}

/// Slope of the least-squares line through `(x, y)`.
pub fn ls_slope(points: &[(f64, f64)]) -> f64 {
    let k = points.len() as f64;
    if points.len() < 2 {
        return 0.0;
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

/// `max <= factor * median` over all levels, and the trailing
/// `ceil(len / 3)` points have log-slope at most [`MAX_SLOPE`].
/// When that third holds a single point the slope is still reported
/// (over the last two) but not tested.
/// Nonpositive ratios are left out of the slope.
pub fn judge(points: &[(u32, f64)], factor: f64) -> Verdict {
    assert!(!points.is_empty(), "verdict over an empty grid");
    let mut pts = points.to_vec();
    pts.sort_by_key(|p| p.0);
    let ratios: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let (argmax_level, max) = pts
        .iter()
        .fold((pts[0].0, f64::NEG_INFINITY), |acc, p| if p.1 > acc.1 { (p.0, p.1) } else { acc });
    let med = median(&ratios);
    let tail_len = 2.max(pts.len().div_ceil(3)).min(pts.len());
    let tail: Vec<(f64, f64)> = pts[pts.len() - tail_len..]
        .iter()
        .filter(|p| p.1 > 0.0)
        .map(|p| (p.0 as f64, p.1.ln()))
        .collect();
    let slope = ls_slope(&tail);
    let trend_tested = pts.len().div_ceil(3) >= 2;
    let pass = max.is_finite() && max <= factor * med && (!trend_tested || slope <= MAX_SLOPE);
    Verdict {
        max,
        median: med,
        slope,
        trend_tested,
        argmax_level,
        pass,
    }
}
