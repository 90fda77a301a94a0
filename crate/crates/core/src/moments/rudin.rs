use num_complex::Complex64;

use super::quadrature::{quadratic_spectrum_values, standard_t_grid, QuadratureOptions};
use super::scan::RationalX;
use crate::error::{invalid, Error, Result};
use crate::expsum::{e, mean_abs_pow};
use crate::expsum::phase::frac_mul;

/// Coefficients `a_k` of `Σ_{k≤N} a_k e(k² θ)`.
#[derive(Debug, Clone, PartialEq)]
pub enum CoeffMode {
    /// `a_k = 1`.
    Constant,
    /// `a_k = e(k x)`, which makes the sum `S_N(x, θ)`.
    Modulated(f64),
    /// A nonincreasing, nonnegative sequence of length `N`.
    Decreasing(Vec<f64>),
}

impl CoeffMode {
    pub(crate) fn coefficients(&self, n: u64) -> Result<Vec<Complex64>> {
        match self {
            CoeffMode::Constant => Ok(vec![Complex64::new(1.0, 0.0); n as usize]),
            CoeffMode::Modulated(x) => Ok((1..=n).map(|k| e(frac_mul(k, *x))).collect()),
            CoeffMode::Decreasing(a) => {
                if a.len() as u64 != n {
                    return Err(invalid(format!("{} coefficients given for N = {n}", a.len())));
                }
                if a.iter().any(|v| !v.is_finite() || *v < 0.0) || a.windows(2).any(|w| w[1] > w[0]) {
                    return Err(invalid("coefficients must be nonnegative and nonincreasing"));
                }
                Ok(a.iter().map(|&v| Complex64::new(v, 0.0)).collect())
            }
        }
    }
}

/// `‖Σ_k a_k e(k² θ)‖_α / ‖Σ_k a_k e(k² θ)‖₂` for `0 < α < 4`.
///
/// The denominator is exact (`(Σ|a_k|²)^(1/2)`); the numerator is the
/// midpoint rule on a `θ`-grid with step at most `1/(8N²)`.
///
/// ```
/// use weyl_lab::moments::{rudin_ratio, CoeffMode};
///
/// assert!((rudin_ratio(1, 3.0, &CoeffMode::Constant).unwrap() - 1.0).abs() < 1e-12);
/// ```
pub fn rudin_ratio(n: u64, alpha: f64, mode: &CoeffMode) -> Result<f64> {
    rudin_ratio_with(n, alpha, mode, &QuadratureOptions::default())
}

/// [`rudin_ratio`] using the `t_grid`, `allow_unsafe` and `budget` fields of
/// `opts`.
pub fn rudin_ratio_with(n: u64, alpha: f64, mode: &CoeffMode, opts: &QuadratureOptions) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 4.0) {
        return Err(invalid(format!("alpha = {alpha} is outside (0, 4)")));
    }
    if n == 0 {
        return Err(invalid("N must be positive"));
    }
    let coeffs = mode.coefficients(n)?;
    lp_ratio(&coeffs, alpha, opts)
}

/// `‖Σ c_k e(k² θ)‖_α / (Σ|c_k|²)^(1/2)`.
pub(crate) fn lp_ratio(coeffs: &[Complex64], alpha: f64, opts: &QuadratureOptions) -> Result<f64> {
    let n = coeffs.len() as u64;
    let grid = opts.t_grid.unwrap_or_else(|| standard_t_grid(n));
    if (grid.points() as u64) < 8 * n * n && !opts.allow_unsafe {
        return Err(Error::Resolution(format!(
            "theta grid has {} points, needs at least {}",
            grid.points(),
            8 * n * n
        )));
    }
    opts.budget.check(grid.points() as u128)?;
    let l2 = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if l2 == 0.0 {
        return Err(invalid("all coefficients vanish"));
    }
    let values = quadratic_spectrum_values(coeffs, &grid);
    Ok(mean_abs_pow(&values, alpha).powf(1.0 / alpha) / l2)
}

/// Largest modulated-mode ratio over the candidates, with the `x` attaining
/// it. Ties go to the earlier candidate.
pub fn rudin_ratio_sup(n: u64, alpha: f64, candidates: &[RationalX]) -> Result<(f64, RationalX)> {
    let mut best: Option<(f64, RationalX)> = None;
    for &c in candidates {
        let r = rudin_ratio(n, alpha, &CoeffMode::Modulated(c.value()))?;
        if best.map_or(true, |(b, _)| r > b) {
            best = Some((r, c));
        }
    }
    best.ok_or_else(|| invalid("no x candidates"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::{moment_quadrature, NormMode};

    #[test]
    fn single_term() {
        for mode in [CoeffMode::Constant, CoeffMode::Modulated(0.3), CoeffMode::Decreasing(vec![2.5])] {
            for alpha in [0.5, 2.0, 3.9] {
                assert!((rudin_ratio(1, alpha, &mode).unwrap() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn alpha_two_is_one() {
        let a: Vec<f64> = (1..=40).map(|k| 1.0 / k as f64).collect();
        for mode in [CoeffMode::Constant, CoeffMode::Modulated(0.2), CoeffMode::Decreasing(a)] {
            assert!((rudin_ratio(40, 2.0, &mode).unwrap() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn modulated_is_the_marginal_norm() {
        let n = 24;
        let x = 1.0 / 3.0;
        let m = moment_quadrature(n, 3.5, &NormMode::Marginal { x }, &Default::default()).unwrap();
        let r = rudin_ratio(n, 3.5, &CoeffMode::Modulated(x)).unwrap();
        assert!((r - m.value.powf(1.0 / 3.5) / (n as f64).sqrt()).abs() < 1e-10);
    }

    #[test]
    fn rejects() {
        assert!(rudin_ratio(8, 4.0, &CoeffMode::Constant).is_err());
        assert!(rudin_ratio(8, 0.0, &CoeffMode::Constant).is_err());
        assert!(rudin_ratio(0, 3.0, &CoeffMode::Constant).is_err());
        assert!(rudin_ratio(3, 3.0, &CoeffMode::Decreasing(vec![1.0, 2.0, 0.5])).is_err());
        assert!(rudin_ratio(3, 3.0, &CoeffMode::Decreasing(vec![1.0])).is_err());
    }
}
