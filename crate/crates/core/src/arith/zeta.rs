use std::sync::OnceLock;

use num_traits::ToPrimitive;

use super::bernoulli::bernoulli_numbers;
use super::sieve::mobius_sieve;
use crate::error::{invalid, Result};
use crate::sum::CompensatedSum;

/// The Euler–Mascheroni constant.
pub const EULER_MASCHERONI: f64 = 0.577_215_664_901_532_9;

const EM_CUTOFF: u32 = 20;
const EM_TERMS: usize = 12;

/// `B_{2j} / (2j)!` for `j = 1..=EM_TERMS`.
fn em_coefficients() -> &'static [f64; EM_TERMS] {
    static COEFFS: OnceLock<[f64; EM_TERMS]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let b = bernoulli_numbers(2 * EM_TERMS as u32);
        let mut out = [0.0; EM_TERMS];
        let mut factorial = 1.0f64;
        for (j, slot) in out.iter_mut().enumerate() {
            let k = 2 * (j + 1);
            factorial *= ((k - 1) * k) as f64;
            *slot = b[k].to_f64().expect("Bernoulli numbers fit in f64") / factorial;
        }
        out
    })
}

/// `ζ(s)` and `ζ'(s)` by Euler–Maclaurin summation, valid for real
/// `s > -2·EM_TERMS + 1`, `s ≠ 1`.
///
/// ```text
/// ζ(s) = Σ_{n<K} n^(-s) + K^(1-s)/(s-1) + K^(-s)/2
///        + Σ_{j=1}^{m} B_{2j}/(2j)! · s(s+1)…(s+2j-2) · K^(-s-2j+1)
/// ```
///
/// with `K = 20`, `m = 12`; the remainder is below `1e-16` relative for
/// `0 < s ≤ 40`.
fn zeta_em(s: f64) -> (f64, f64) {
    let k = EM_CUTOFF as f64;
    let ln_k = k.ln();
    let mut value = CompensatedSum::new();
    let mut deriv = CompensatedSum::new();
    for n in 1..EM_CUTOFF {
        let nf = n as f64;
        let t = nf.powf(-s);
        value.add(t);
        deriv.add(-nf.ln() * t);
    }
    let tail = k.powf(1.0 - s) / (s - 1.0);
    value.add(tail);
    deriv.add(-ln_k * tail - tail / (s - 1.0));
    let half = 0.5 * k.powf(-s);
    value.add(half);
    deriv.add(-ln_k * half);

    // poly = s(s+1)…(s+2j-2), dpoly its derivative.
    let mut poly = s;
    let mut dpoly = 1.0;
    for (j, c) in em_coefficients().iter().enumerate() {
        if j > 0 {
            let a = s + (2 * j - 1) as f64;
            let b = s + (2 * j) as f64;
            dpoly = dpoly * a * b + poly * (a + b);
            poly *= a * b;
        }
        let kp = k.powf(-s - (2 * j + 1) as f64);
        value.add(c * poly * kp);
        deriv.add(c * (dpoly * kp - ln_k * poly * kp));
    }
    (value.value(), deriv.value())
}

/// `ζ(s)` for real `s > 1`.
///
/// ```
/// let z = weyl_lab::arith::zeta(2.0).unwrap();
/// assert!((z - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-15);
/// ```
pub fn zeta(s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(invalid(format!("zeta needs s > 1, got {s}")));
    }
    Ok(zeta_em(s).0)
}

/// `ζ(s)` for real `s > 0`, `s ≠ 1`, through the analytic continuation.
///
/// The two-term totient asymptotics need `ζ(β - 1)` with `β - 1 ∈ (0, 1)`
/// when `1 < β < 2`, where the series diverges.
pub fn zeta_continued(s: f64) -> Result<f64> {
    if !(s > 0.0) || s == 1.0 {
        return Err(invalid(format!("zeta_continued needs s > 0, s != 1, got {s}")));
    }
    Ok(zeta_em(s).0)
}

/// `ζ'(s)` for real `s > 1`.
pub fn zeta_derivative(s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(invalid(format!("zeta_derivative needs s > 1, got {s}")));
    }
    Ok(zeta_em(s).1)
}

/// `A = Σ_{n≥1} μ(n) log n / n² = ζ'(2)/ζ(2)²`.
///
/// The identity follows from differentiating `1/ζ(s) = Σ μ(n) n^(-s)`.
/// [`mobius_log_sum`] computes the series itself as an independent check.
pub fn mobius_log_constant() -> f64 {
    let (z, dz) = zeta_em(2.0);
    dz / (z * z)
}

/// `Σ_{n≤M} μ(n) log n / n²` together with the tail bound
/// `Σ_{n>M} log n / n² ≤ (log M + 1)/M`.
pub fn mobius_log_sum(m: usize) -> Result<(f64, f64)> {
    let mu = mobius_sieve(m)?;
    let mut acc = CompensatedSum::new();
    for (k, &sign) in mu.iter().enumerate() {
        if sign != 0 {
            let n = (k + 1) as f64;
            acc.add(sign as f64 * n.ln() / (n * n));
        }
    }
    let mf = m as f64;
    Ok((acc.value(), (mf.ln() + 1.0) / mf))
}

/// `H_N - log N` at `N = n0, 2n0, …, 2^(levels-1) n0`, extrapolated to
/// `N → ∞` by Richardson's scheme on the expansion in powers of `1/N`.
pub fn euler_mascheroni_richardson(n0: usize, levels: usize) -> f64 {
    assert!(n0 >= 1 && levels >= 1);
    let mut harmonic = CompensatedSum::new();
    let mut upto = 0usize;
    let mut prev_row: Vec<f64> = Vec::new();
    for level in 0..levels {
        let n = n0 << level;
        while upto < n {
            upto += 1;
            harmonic.add(1.0 / upto as f64);
        }
        let mut row = vec![harmonic.value() - (n as f64).ln()];
        for j in 1..=level {
            let f = (1u64 << j) as f64;
            row.push((f * row[j - 1] - prev_row[j - 1]) / (f - 1.0));
        }
        prev_row = row;
    }
    prev_row[levels - 1]
}

/// `ζ` at requested points together with the constants of the totient
/// asymptotics.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaConstants {
    pub zeta: Vec<(f64, f64)>,
    pub euler_mascheroni: f64,
    /// `Σ μ(n) log n / n²`.
    pub a: f64,
}

pub fn zeta_constants(points: &[f64]) -> Result<ZetaConstants> {
    let zeta = points.iter().map(|&s| Ok((s, zeta(s)?))).collect::<Result<_>>()?;
    Ok(ZetaConstants { zeta, euler_mascheroni: EULER_MASCHERONI, a: mobius_log_constant() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn known_values() {
        assert!((zeta(2.0).unwrap() - PI * PI / 6.0).abs() < 1e-15);
        assert!((zeta(4.0).unwrap() - PI.powi(4) / 90.0).abs() < 1e-15);
        assert!((zeta(3.0).unwrap() - 1.202_056_903_159_594_3).abs() < 1e-15);
        assert!((zeta(1.5).unwrap() - 2.612_375_348_685_488_4).abs() < 1e-14);
        assert!((zeta(30.0).unwrap() - 1.000_000_000_931_327_4).abs() < 1e-15);
        assert!((zeta_continued(0.5).unwrap() + 1.460_354_508_809_586_8).abs() < 1e-14);
        assert!((zeta_derivative(2.0).unwrap() + 0.937_548_254_315_843_8).abs() < 1e-14);
    }

    #[test]
    fn domain() {
        assert!(zeta(1.0).is_err());
        assert!(zeta(0.5).is_err());
        assert!(zeta(f64::NAN).is_err());
        assert!(zeta_continued(1.0).is_err());
        assert!(zeta_continued(0.0).is_err());
    }

    #[test]
    fn derivative_reference_values() {
        // Reference values computed to 30 digits with mpmath.
        for (s, want) in [
            (1.3, -11.041_284_605_032_112),
            (2.5, -0.387_341_950_326_209_97),
            (4.0, -0.068_911_265_896_125_38),
        ] {
            assert!((zeta_derivative(s).unwrap() - want).abs() < 1e-13 * want.abs().max(1.0), "s = {s}");
        }
        // And a central difference where the third derivative is tame.
        let h = 1e-5;
        let fd = (zeta(3.0 + h).unwrap() - zeta(3.0 - h).unwrap()) / (2.0 * h);
        assert!((zeta_derivative(3.0).unwrap() - fd).abs() < 1e-9);
    }

    #[test]
    fn mobius_partial_sum_inverts_zeta2() {
        let mu = mobius_sieve(1_000_000).unwrap();
        let partial: f64 = mu
            .iter()
            .enumerate()
            .map(|(k, &m)| m as f64 / ((k + 1) as f64).powi(2))
            .collect::<CompensatedSum>()
            .value();
        assert!((partial - 1.0 / zeta(2.0).unwrap()).abs() < 1e-5);
    }

    #[test]
    fn mobius_log_routes_agree() {
        let a = mobius_log_constant();
        assert!((a + 0.346_494_734_701_802_2).abs() < 1e-14);
        let (partial, tail) = mobius_log_sum(1_000_000).unwrap();
        assert!((partial - a).abs() <= tail, "{partial} vs {a}, tail {tail}");
        // The true tail is far smaller than the bound: μ cancels.
        assert!((partial - a).abs() < 1e-5);
    }

    #[test]
    fn euler_mascheroni_by_extrapolation() {
        let g = euler_mascheroni_richardson(1000, 6);
        assert!((g - EULER_MASCHERONI).abs() < 1e-9, "{g}");
    }
}
