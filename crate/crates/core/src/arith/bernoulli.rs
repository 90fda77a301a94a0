use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};

/// Largest power supported by [`faulhaber_sum`].
pub const MAX_FAULHABER_POWER: u32 = 20;

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `B_0, …, B_m` with `B_1 = -1/2`, from `Σ_{j=0}^{m} C(m+1, j) B_j = 0`.
pub fn bernoulli_numbers(m: u32) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(m as usize + 1);
    b.push(BigRational::one());
    for k in 1..=m {
        let mut acc = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += BigRational::from_integer(binomial(k + 1, j as u32)) * bj;
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(k + 1)));
    }
    b
}

/// `Σ_{k=1}^{N} k^ℓ` from Bernoulli numbers:
///
/// ```text
/// Σ_{k=1}^{N} k^ℓ = (1/(ℓ+1)) Σ_{j=0}^{ℓ} (-1)^j C(ℓ+1, j) B_j N^(ℓ+1-j),   B_1 = -1/2.
/// ```
///
/// The `j = 0` term `N^(ℓ+1)/(ℓ+1)` is the leading one. The sign `(-1)^j`
/// only touches `j = 1` (odd Bernoulli numbers past `B_1` vanish) and turns
/// `B_1 = -1/2` into the `+N^ℓ/2` that the sum from `k = 1` needs.
///
/// ```
/// use weyl_lab::arith::faulhaber_sum;
///
/// assert_eq!(faulhaber_sum(10, 2).unwrap(), 385.into());
/// ```
pub fn faulhaber_sum(n: u64, ell: u32) -> Result<BigInt> {
    if ell > MAX_FAULHABER_POWER {
        return Err(invalid(format!("power {ell} exceeds the supported {MAX_FAULHABER_POWER}")));
    }
    let b = bernoulli_numbers(ell);
    let nn = BigRational::from_integer(BigInt::from(n));
    let mut acc = BigRational::zero();
    for (j, bj) in b.iter().enumerate() {
        let j = j as u32;
        let mut term = BigRational::from_integer(binomial(ell + 1, j)) * bj * num_traits::pow(nn.clone(), (ell + 1 - j) as usize);
        if j % 2 == 1 {
            term = -term;
        }
        acc += term;
    }
    let total = acc / BigRational::from_integer(BigInt::from(ell + 1));
    debug_assert!(total.is_integer());
    Ok(total.to_integer())
}

/// `Σ_{k=1}^{N} k^ℓ` by direct summation.
pub fn power_sum_direct(n: u64, ell: u32) -> BigInt {
    (1..=n).map(|k| num_traits::pow(BigInt::from(k), ell as usize)).sum()
}
