use super::quadrature::NormSample;
use crate::error::{invalid, Result};

/// Least-squares line through `(ln N, ln value)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub exponent: f64,
    pub intercept: f64,
    /// Largest absolute residual in log space.
    pub max_residual: f64,
    /// Whether each value was divided by `ln N` first.
    pub with_log_factor: bool,
    pub points: usize,
}

/// Growth exponent of a family of samples that share `α` and mode.
///
/// ```
/// use weyl_lab::moments::fit_power_law;
///
/// let fit = fit_power_law(&[(10, 1e2), (100, 1e4), (1000, 1e6)], false).unwrap();
/// assert!((fit.exponent - 2.0).abs() < 1e-12 && fit.max_residual < 1e-12);
/// ```
pub fn fit_exponent(samples: &[NormSample], divide_log: bool) -> Result<FitResult> {
    let first = samples.first().ok_or_else(|| invalid("no samples"))?;
    if samples.iter().any(|s| s.alpha != first.alpha || !s.mode.same_as(&first.mode)) {
        return Err(invalid("samples mix exponents or modes"));
    }
    let points: Vec<(u64, f64)> = samples.iter().map(|s| (s.n, s.value)).collect();
    fit_power_law(&points, divide_log)
}

/// [`fit_exponent`] on bare `(N, value)` pairs.
pub fn fit_power_law(points: &[(u64, f64)], divide_log: bool) -> Result<FitResult> {
    if points.len() < 3 {
        return Err(invalid(format!("a fit needs at least 3 points, got {}", points.len())));
    }
    let mut ns: Vec<u64> = points.iter().map(|p| p.0).collect();
    ns.sort_unstable();
    if ns.windows(2).any(|w| w[0] == w[1]) {
        return Err(invalid("duplicate N in fit"));
    }
    let mut xy = Vec::with_capacity(points.len());
    for &(n, v) in points {
        if !(v > 0.0 && v.is_finite()) {
            return Err(invalid(format!("value {v} at N = {n} is not positive")));
        }
        let ln_n = (n as f64).ln();
        if divide_log && n < 2 {
            return Err(invalid("dividing by ln N needs N >= 2"));
        }
        let y = if divide_log { v.ln() - ln_n.ln() } else { v.ln() };
        xy.push((ln_n, y));
    }
    let m = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / m;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let max_residual = xy
        .iter()
        .map(|&(x, y)| (y - intercept - exponent * x).abs())
        .fold(0.0, f64::max);
    Ok(FitResult { exponent, intercept, max_residual, with_log_factor: divide_log, points: xy.len() })
}
