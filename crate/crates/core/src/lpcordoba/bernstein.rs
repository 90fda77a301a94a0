use num_complex::Complex64;

use super::dyadic::{default_norm_grid, lp_norm};
use super::family::{member_rng, random_poly, Support};
use crate::error::{invalid, Result};
use crate::expsum::TrigPoly;

/// How `P^(k)` is formed from the coefficients. Both drop the `2π` factor,
/// which is common to the two sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Derivative {
    /// `d/dθ`: `ĉ(n) ↦ (i n)^k ĉ(n)`.
    Trig,
    /// `d/dz` of `Σ c_n zⁿ` on `|z| = 1`: `c_n zⁿ ↦ n!/(n-k)! c_n z^(n-k)`.
    /// Needs frequencies in `0..=degree`.
    Analytic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BernsteinRecord {
    /// `‖P^(k)‖_p`.
    pub lhs: f64,
    /// `n!/(n-k)! · ‖P‖_p`.
    pub rhs: f64,
    /// `lhs / rhs`, or 0 when both vanish.
    pub ratio: f64,
    /// `lhs ≤ rhs · (1 + 1e-9)`.
    pub holds: bool,
}

/// `n (n-1) ⋯ (n-k+1)`.
pub fn falling_factorial(n: u64, k: u32) -> f64 {
    (0..k as u64).map(|i| n.saturating_sub(i) as f64).product()
}

/// `P^(k)` under the chosen convention.
pub fn derivative(p: &TrigPoly, k: u32, mode: Derivative) -> Result<TrigPoly> {
    match mode {
        Derivative::Trig => {
            let i_pow = Complex64::new(0.0, 1.0).powu(k);
            Ok(p.map_coeffs(|n, c| c * i_pow * (n as f64).powi(k as i32)))
        }
        Derivative::Analytic => {
            if p.iter().any(|(n, _)| n < 0) {
                return Err(invalid("the analytic derivative needs nonnegative frequencies"));
            }
            Ok(p
                .iter()
                .filter(|&(n, _)| n as u64 >= k as u64)
                .map(|(n, c)| (n - k as i64, c * falling_factorial(n as u64, k)))
                .collect())
        }
    }
}

/// Compares `‖P^(k)‖_p` with `n!/(n-k)! ‖P‖_p`, `n = degree(P)`.
///
/// For `k = 1` this is Bernstein's inequality, with equality for
/// `M cos(2π(nθ + ξ))`. For `k ≥ 2` the falling factorial is the right
/// constant for [`Derivative::Analytic`]; under [`Derivative::Trig`] the
/// sharp constant is `n^k`, so a pure cosine of degree `n` gives
/// `holds = false`.
///
/// A constant polynomial is accepted for any `k`: both sides are zero.
///
/// ```
/// use weyl_lab::expsum::TrigPoly;
/// use weyl_lab::lpcordoba::{bernstein_check, Derivative};
///
/// let r = bernstein_check(&TrigPoly::cosine(9), 3.0, 1, Derivative::Trig).unwrap();
/// assert!(r.holds && (r.ratio - 1.0).abs() < 1e-9);
/// ```
pub fn bernstein_check(p: &TrigPoly, exponent: f64, k: u32, mode: Derivative) -> Result<BernsteinRecord> {
    if !(exponent >= 1.0 && exponent.is_finite()) {
        return Err(invalid(format!("p = {exponent} must be at least 1")));
    }
    if k == 0 {
        return Err(invalid("k must be positive"));
    }
    let n = p.degree();
    if n > 0 && (k as u64) > n {
        return Err(invalid(format!("k = {k} exceeds the degree {n}")));
    }
    let grid = default_norm_grid(n);
    let lhs = lp_norm(&derivative(p, k, mode)?, exponent, &grid)?;
    let rhs = falling_factorial(n, k) * lp_norm(p, exponent, &grid)?;
    let ratio = if rhs == 0.0 && lhs == 0.0 { 0.0 } else { lhs / rhs };
    Ok(BernsteinRecord { lhs, rhs, ratio, holds: lhs <= rhs * (1.0 + 1e-9) })
}

/// One row of [`bernstein_battery`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatteryRow {
    pub index: usize,
    pub degree: u64,
    pub exponent: f64,
    pub k: u32,
    pub mode: Derivative,
    pub record: BernsteinRecord,
}

/// Random polynomials with degrees in `k_max..=max_degree`, checked for each
/// exponent and each `k ≤ k_max`. `k = 1` uses trigonometric polynomials
/// with [`Derivative::Trig`]; `k ≥ 2` uses analytic ones, the setting in
/// which the falling-factorial constant holds.
pub fn bernstein_battery(
    seed: u64,
    count: usize,
    max_degree: u64,
    exponents: &[f64],
    k_max: u32,
) -> Result<Vec<BatteryRow>> {
    if max_degree < k_max as u64 {
        return Err(invalid("max_degree must be at least k_max"));
    }
    let mut rows = Vec::new();
    for index in 0..count {
        let mut rng = member_rng(seed, index as u64);
        let degree = rand::Rng::gen_range(&mut rng, (k_max as u64).max(1)..=max_degree);
        let trig = random_poly(&mut rng, degree, Support::Trig);
        let analytic = random_poly(&mut rng, degree, Support::Analytic);
        for k in 1..=k_max {
            let (p, mode) = if k == 1 { (&trig, Derivative::Trig) } else { (&analytic, Derivative::Analytic) };
            for &exponent in exponents {
                let record = bernstein_check(p, exponent, k, mode)?;
                rows.push(BatteryRow { index, degree, exponent, k, mode, record });
            }
        }
    }
    Ok(rows)
}
