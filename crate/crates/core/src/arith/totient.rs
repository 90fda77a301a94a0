use super::sieve::totient_sieve;
use super::zeta::{mobius_log_constant, zeta, zeta_continued, EULER_MASCHERONI};
use crate::error::{invalid, Result};
use crate::sum::CompensatedSum;

/// Which branch of the asymptotic formula applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TotientCase {
    /// `β > 1`, `β ≠ 2`: `N^(2-β)/((2-β)ζ(2)) + ζ(β-1)/ζ(β)`.
    TwoTerm,
    /// `β ≤ 1`: `N^(2-β)/((2-β)ζ(2))`.
    OneTerm,
    /// `β = 2`: `log N/ζ(2) + C/ζ(2) - A`.
    Logarithmic,
}

/// Main terms and error scale of `Σ_{n≤N} φ(n)/n^β` as functions of `N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TotientAsymptotics {
    beta: f64,
    case: TotientCase,
    zeta2: f64,
    constant: f64,
}

impl TotientAsymptotics {
    pub fn new(beta: f64) -> Result<Self> {
        if !(beta >= 0.0) || !beta.is_finite() {
            return Err(invalid(format!("beta must be a finite value >= 0, got {beta}")));
        }
        let zeta2 = zeta(2.0)?;
        let (case, constant) = if beta == 2.0 {
            (TotientCase::Logarithmic, EULER_MASCHERONI / zeta2 - mobius_log_constant())
        } else if beta > 1.0 {
            // ζ(β - 1) lies past the pole when 1 < β < 2.
            let shifted = if beta > 2.0 { zeta(beta - 1.0)? } else { zeta_continued(beta - 1.0)? };
            (TotientCase::TwoTerm, shifted / zeta(beta)?)
        } else {
            (TotientCase::OneTerm, 0.0)
        };
        Ok(Self { beta, case, zeta2, constant })
    }

    pub fn case(&self) -> TotientCase {
        self.case
    }

    pub fn main_terms(&self, n: u64) -> f64 {
        let nf = n as f64;
        match self.case {
            TotientCase::Logarithmic => nf.ln() / self.zeta2 + self.constant,
            _ => nf.powf(2.0 - self.beta) / ((2.0 - self.beta) * self.zeta2) + self.constant,
        }
    }

    /// `N^(1-β) log N`, or `log N / N` when `β = 2`.
    pub fn error_scale(&self, n: u64) -> f64 {
        let nf = n as f64;
        match self.case {
            TotientCase::Logarithmic => nf.ln() / nf,
            _ => nf.powf(1.0 - self.beta) * nf.ln(),
        }
    }
}

/// One comparison of `Σ_{n≤N} φ(n)/n^β` with its main terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TotientSumEstimate {
    pub n: u64,
    pub beta: f64,
    pub case: TotientCase,
    pub exact: f64,
    pub main_terms: f64,
    pub error_bound_scale: f64,
    /// `|exact - main_terms| / error_bound_scale`.
    pub ratio: f64,
}

fn check_n(n: u64, phi: &[u32]) -> Result<()> {
    if n < 2 {
        return Err(invalid("N must be at least 2"));
    }
    if n as usize > phi.len() {
        return Err(invalid(format!("totient table has {} entries, N = {n}", phi.len())));
    }
    Ok(())
}

/// Sieves `φ` up to `N` and compares.
///
/// ```
/// use weyl_lab::arith::totient_sum_compare;
///
/// let r = totient_sum_compare(10, 0.0).unwrap();
/// assert_eq!(r.exact, 32.0);
/// assert!((r.main_terms - 100.0 / (2.0 * std::f64::consts::PI.powi(2) / 6.0)).abs() < 1e-12);
/// ```
pub fn totient_sum_compare(n: u64, beta: f64) -> Result<TotientSumEstimate> {
    let phi = totient_sieve(n.max(2) as usize)?;
    totient_sum_compare_with(&phi, n, beta)
}

/// As [`totient_sum_compare`], reusing a sieved table `phi[k] = φ(k + 1)`.
pub fn totient_sum_compare_with(phi: &[u32], n: u64, beta: f64) -> Result<TotientSumEstimate> {
    let model = TotientAsymptotics::new(beta)?;
    check_n(n, phi)?;
    let mut exact = CompensatedSum::new();
    for (k, &p) in phi[..n as usize].iter().enumerate() {
        exact.add(p as f64 * ((k + 1) as f64).powf(-beta));
    }
    let exact = exact.value();
    let main_terms = model.main_terms(n);
    let error_bound_scale = model.error_scale(n);
    Ok(TotientSumEstimate {
        n,
        beta,
        case: model.case(),
        exact,
        main_terms,
        error_bound_scale,
        ratio: (exact - main_terms).abs() / error_bound_scale,
    })
}

/// Largest discrepancy ratio over `N/10 < m ≤ N`.
///
/// The pointwise ratio passes through zero wherever the remainder changes
/// sign, so a single `N` says little about the size of the `O`-term. The
/// maximum over a decade is the empirical constant in front of the error
/// scale at that size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TotientEnvelope {
    pub n: u64,
    pub beta: f64,
    pub max_ratio: f64,
    /// The `m` attaining `max_ratio`.
    pub argmax: u64,
}

pub fn totient_ratio_envelope(phi: &[u32], n: u64, beta: f64) -> Result<TotientEnvelope> {
    let model = TotientAsymptotics::new(beta)?;
    check_n(n, phi)?;
    let start = (n / 10).max(1) + 1;
    let mut exact = CompensatedSum::new();
    let mut best = (0.0f64, start);
    for m in 1..=n {
        exact.add(phi[m as usize - 1] as f64 * (m as f64).powf(-beta));
        if m >= start && m >= 2 {
            let ratio = (exact.value() - model.main_terms(m)).abs() / model.error_scale(m);
            if ratio > best.0 {
                best = (ratio, m);
            }
        }
    }
    Ok(TotientEnvelope { n, beta, max_ratio: best.0, argmax: best.1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn cases() {
        assert_eq!(TotientAsymptotics::new(2.0).unwrap().case(), TotientCase::Logarithmic);
        assert_eq!(TotientAsymptotics::new(1.0).unwrap().case(), TotientCase::OneTerm);
        assert_eq!(TotientAsymptotics::new(0.0).unwrap().case(), TotientCase::OneTerm);
        assert_eq!(TotientAsymptotics::new(1.5).unwrap().case(), TotientCase::TwoTerm);
        assert_eq!(TotientAsymptotics::new(2.000001).unwrap().case(), TotientCase::TwoTerm);
        assert!(TotientAsymptotics::new(-0.5).is_err());
        assert!(TotientAsymptotics::new(f64::NAN).is_err());
    }

    #[test]
    fn small_example() {
        let r = totient_sum_compare(10, 0.0).unwrap();
        assert_eq!(r.exact, 32.0);
        assert!((r.main_terms - 100.0 / (PI * PI / 3.0)).abs() < 1e-12);
        assert!((r.main_terms - 30.396).abs() < 1e-3);
        assert!(totient_sum_compare(1, 0.0).is_err());
    }

    #[test]
    fn beta_three_constant() {
        let m = TotientAsymptotics::new(3.0).unwrap();
        let want = (PI * PI / 6.0) / 1.202_056_903_159_594_3;
        assert!((m.main_terms(u64::MAX >> 12) - want).abs() < 1e-12);
    }

    #[test]
    fn ratios_stay_bounded() {
        let phi = totient_sieve(100_000).unwrap();
        for beta in [0.0, 0.5, 1.0, 1.5, 2.0, 3.0] {
            for n in [1000u64, 10_000, 100_000] {
                let r = totient_sum_compare_with(&phi, n, beta).unwrap();
                assert!(r.ratio < 1.0, "beta {beta} N {n}: {}", r.ratio);
                let env = totient_ratio_envelope(&phi, n, beta).unwrap();
                assert!(env.max_ratio >= r.ratio && env.max_ratio < 1.0);
                assert!(env.argmax > n / 10 && env.argmax <= n);
            }
        }
    }
}
