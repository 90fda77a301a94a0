use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use super::dyadic::dyadic_index;
use crate::error::{invalid, Result};
use crate::expsum::TrigPoly;
use crate::moments::{lp_ratio, QuadratureOptions};

/// `‖Σ_k k^(2ℓ) a_k e(k²θ)‖_α / (Σ_k k^(4ℓ) a_k²)^(1/2)` for a positive,
/// nonincreasing `a` and `α ∈ [2, 4)`.
///
/// The numerator uses the midpoint rule with `θ`-step `1/(8N²)`.
///
/// ```
/// use weyl_lab::lpcordoba::cordoba_ratio;
///
/// assert!((cordoba_ratio(&[0.7], 3, 2.5).unwrap() - 1.0).abs() < 1e-12);
/// ```
pub fn cordoba_ratio(a: &[f64], ell: u32, alpha: f64) -> Result<f64> {
    cordoba_ratio_with(a, ell, alpha, &QuadratureOptions::default())
}

pub fn cordoba_ratio_with(a: &[f64], ell: u32, alpha: f64, opts: &QuadratureOptions) -> Result<f64> {
    if !(2.0..4.0).contains(&alpha) {
        return Err(invalid(format!("alpha = {alpha} is outside [2, 4)")));
    }
    if a.is_empty() {
        return Err(invalid("empty coefficient sequence"));
    }
    if a.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(invalid("coefficients must be positive"));
    }
    if a.windows(2).any(|w| w[1] > w[0]) {
        return Err(invalid("coefficients must be nonincreasing"));
    }
    let coeffs: Vec<Complex64> = a
        .iter()
        .zip(1u64..)
        .map(|(&v, k)| Complex64::new(v * (k as f64).powi(2 * ell as i32), 0.0))
        .collect();
    lp_ratio(&coeffs, alpha, opts)
}

/// One block `D_j = [2^(j/2), 2^((j+1)/2))` of a quadratic-spectrum
/// polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticBlock {
    pub j: i32,
    pub ks: Vec<u64>,
    pub poly: TrigPoly,
}

/// Groups the terms of `P = Σ_k c_k e(k²θ)` by the `D_j` containing `k`.
///
/// `k ∈ D_j` exactly when `2^j ≤ k² < 2^(j+1)`, so the blocks are the
/// dyadic blocks of the frequency `k²`. Frequencies that are not positive
/// squares are rejected.
pub fn quadratic_block_split(p: &TrigPoly) -> Result<Vec<QuadraticBlock>> {
    let mut blocks: BTreeMap<i32, QuadraticBlock> = BTreeMap::new();
    for (freq, c) in p.iter() {
        let k = (freq > 0).then(|| (freq as u64).isqrt()).filter(|k| k * k == freq as u64);
        let Some(k) = k else {
            return Err(invalid(format!("frequency {freq} is not a positive square")));
        };
        let j = dyadic_index(freq);
        let block = blocks.entry(j).or_insert_with(|| QuadraticBlock { j, ks: Vec::new(), poly: TrigPoly::new() });
        block.ks.push(k);
        block.poly.add_term(freq, c);
    }
    Ok(blocks.into_values().collect())
}

/// `Σ_k c_k e(k²θ)` for `k = 1..=c.len()`.
pub fn quadratic_poly(c: &[Complex64]) -> TrigPoly {
    c.iter().zip(1i64..).map(|(&v, k)| (k * k, v)).collect()
}

/// Exact polynomial with rational coefficients, keyed by frequency.
pub type RationalPoly = BTreeMap<i64, BigRational>;

fn add_scaled(acc: &mut RationalPoly, p: &RationalPoly, scale: &BigRational) {
    for (n, c) in p {
        let entry = acc.entry(*n).or_insert_with(BigRational::zero);
        *entry += c * scale;
        if entry.is_zero() {
            acc.remove(n);
        }
    }
}

/// `T_k = Σ_{m=1}^{k} e(m²θ)`, with `T_0 = 0`.
fn partial_sum(k: usize) -> RationalPoly {
    (1..=k as i64).map(|m| (m * m, BigRational::from_integer(1.into()))).collect()
}

/// Both sides of the summation-by-parts identity on the block `lo..=hi`:
///
/// ```text
/// Σ_{k=lo}^{hi} a_k (T_k - T_{k-1})
///     = Σ_{k=lo}^{hi-1} (a_k - a_{k+1}) T_k + a_hi T_hi - a_lo T_{lo-1}
/// ```
///
/// `a[k - 1]` holds `a_k`. Equality of the two returned polynomials is
/// exact.
pub fn summation_by_parts(a: &[BigRational], lo: usize, hi: usize) -> Result<(RationalPoly, RationalPoly)> {
    if lo == 0 || lo > hi || hi > a.len() {
        return Err(invalid(format!("block {lo}..={hi} is outside 1..={}", a.len())));
    }
    let coeff = |k: usize| &a[k - 1];
    let mut lhs = RationalPoly::new();
    for k in lo..=hi {
        let mut diff = partial_sum(k);
        add_scaled(&mut diff, &partial_sum(k - 1), &-BigRational::from_integer(1.into()));
        add_scaled(&mut lhs, &diff, coeff(k));
    }
    let mut rhs = RationalPoly::new();
    for k in lo..hi {
        add_scaled(&mut rhs, &partial_sum(k), &(coeff(k) - coeff(k + 1)));
    }
    add_scaled(&mut rhs, &partial_sum(hi), coeff(hi));
    add_scaled(&mut rhs, &partial_sum(lo - 1), &-coeff(lo));
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lpcordoba::dyadic_split;
    use crate::lpcordoba::family::member_rng;
    use num_bigint::BigInt;
    use rand::Rng;

    #[test]
    fn cordoba_examples() {
        for ell in 0..3 {
            assert!((cordoba_ratio(&[3.0], ell, 3.0).unwrap() - 1.0).abs() < 1e-12);
        }
        let ones = vec![1.0; 64];
        assert!((cordoba_ratio(&ones, 0, 2.0).unwrap() - 1.0).abs() < 1e-9);
        assert!(cordoba_ratio(&[1.0, 2.0], 0, 3.0).is_err());
        assert!(cordoba_ratio(&[1.0, 0.0], 0, 3.0).is_err());
        assert!(cordoba_ratio(&[1.0], 0, 4.0).is_err());
        assert!(cordoba_ratio(&[1.0], 0, 1.9).is_err());
    }

    #[test]
    fn block_split_examples() {
        let ks = |n: usize| -> Vec<(i32, Vec<u64>)> {
            let p = quadratic_poly(&vec![Complex64::new(1.0, 0.0); n]);
            quadratic_block_split(&p).unwrap().into_iter().map(|b| (b.j, b.ks)).collect()
        };
        assert_eq!(ks(1), vec![(0, vec![1])]);
        assert_eq!(ks(5), vec![(0, vec![1]), (2, vec![2]), (3, vec![3]), (4, vec![4, 5])]);
        assert!(quadratic_block_split(&TrigPoly::from_real([(4, 1.0), (5, 1.0)])).is_err());
        assert!(quadratic_block_split(&TrigPoly::from_real([(0, 1.0)])).is_err());
    }

    #[test]
    fn block_split_agrees_with_dyadic_split() {
        let c: Vec<Complex64> = (1..=300).map(|k| Complex64::new(1.0 / k as f64, 0.0)).collect();
        let p = quadratic_poly(&c);
        let dyadic = dyadic_split(&p);
        let quad = quadratic_block_split(&p).unwrap();
        assert_eq!(quad.len(), dyadic.blocks.len());
        for b in quad {
            assert_eq!(b.poly, dyadic.blocks[&b.j]);
            let lo = 2f64.powf(b.j as f64 / 2.0);
            let hi = 2f64.powf((b.j + 1) as f64 / 2.0);
            assert!(b.ks.iter().all(|&k| (k as f64) >= lo && (k as f64) < hi));
        }
    }

    #[test]
    fn summation_by_parts_is_exact() {
        for seed in 0..20 {
            let mut rng = member_rng(seed, 0);
            let n = rng.gen_range(2..40usize);
            // Random decreasing rationals.
            let mut v = BigRational::from_integer(BigInt::from(rng.gen_range(50..100)));
            let a: Vec<BigRational> = (0..n)
                .map(|_| {
                    let out = v.clone();
                    v -= BigRational::new(rng.gen_range(0..7).into(), rng.gen_range(1..9).into());
                    out
                })
                .collect();
            let lo = rng.gen_range(1..=n);
            let hi = rng.gen_range(lo..=n);
            let (lhs, rhs) = summation_by_parts(&a, lo, hi).unwrap();
            assert_eq!(lhs, rhs, "seed {seed}: block {lo}..={hi}");
            assert_eq!(lhs.len(), hi - lo + 1);
        }
        assert!(summation_by_parts(&[], 1, 1).is_err());
    }
}
