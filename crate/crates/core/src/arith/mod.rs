//! Arithmetic support: sieves, zeta values, Bernoulli numbers and the
//! summatory behavior of `φ(n)/n^β`.
//!
//! For `N → ∞`,
//!
//! ```text
//! Σ_{n≤N} φ(n)/n^β = N^(2-β)/((2-β)ζ(2)) + ζ(β-1)/ζ(β) + O(N^(1-β) log N)   β > 1, β ≠ 2
//!                  = N^(2-β)/((2-β)ζ(2)) + O(N^(1-β) log N)                 β ≤ 1
//!                  = log N/ζ(2) + C/ζ(2) - A + O(log N / N)                 β = 2
//! ```
//!
//! with `C` the Euler–Mascheroni constant and `A = Σ μ(n) log n / n²`.
//! [`totient_sum_compare`] measures the remainder against its scale.

mod bernoulli;
mod sieve;
mod totient;
mod zeta;

pub use bernoulli::{bernoulli_numbers, faulhaber_sum, power_sum_direct, MAX_FAULHABER_POWER};
pub use sieve::{mobius_sieve, mobius_sieve_capped, totient_sieve, totient_sieve_capped, DEFAULT_SIEVE_CAP};
pub use totient::{
    totient_ratio_envelope, totient_sum_compare, totient_sum_compare_with, TotientAsymptotics, TotientCase,
    TotientEnvelope, TotientSumEstimate,
};
pub use zeta::{
    euler_mascheroni_richardson, mobius_log_constant, mobius_log_sum, zeta, zeta_constants, zeta_continued,
    zeta_derivative, ZetaConstants, EULER_MASCHERONI,
};
