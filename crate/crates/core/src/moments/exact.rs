use rayon::prelude::*;

use crate::error::{invalid, Error, Result};

/// Default largest `N` for the sixth moment.
pub const DEFAULT_K3_CAP: u64 = 512;

/// `∫∫ |S_N|^(2k) dx dt` for `k ∈ {2, 3}`, as an exact count.
///
/// By orthogonality the integral is the number of `2k`-tuples in `[1, N]`
/// whose two halves have equal sums and equal sums of squares. Tuples are
/// bucketed on the key `(Σn, Σn²)` and the answer is `Σ count²`.
///
/// The sixth moment needs `N ≤ 512` unless a larger cap is passed to
/// [`moment_exact_even_capped`].
///
/// ```
/// use weyl_lab::moments::moment_exact_even;
///
/// assert_eq!(moment_exact_even(32, 2).unwrap(), 2 * 32 * 32 - 32);
/// ```
pub fn moment_exact_even(n: u64, k: u32) -> Result<u128> {
    moment_exact_even_capped(n, k, DEFAULT_K3_CAP)
}

pub fn moment_exact_even_capped(n: u64, k: u32, k3_cap: u64) -> Result<u128> {
    if n == 0 {
        return Err(invalid("N must be positive"));
    }
    match k {
        2 => Ok(count(n, 2)),
        3 if n > k3_cap => Err(Error::MemoryCap(format!("sixth moment with N = {n} exceeds the cap {k3_cap}"))),
        3 => Ok(count(n, 3)),
        _ => Err(invalid(format!("k must be 2 or 3, got {k}"))),
    }
}

/// Buckets are sharded by the linear sum `s`: within one shard the key is
/// just `Σn²`, which indexes a dense array, and only the touched slots are
/// read back and cleared. Each unordered tuple is entered once with its
/// number of orderings.
fn count(n: u64, k: u64) -> u128 {
    let slots = (k * n * n + 1) as usize;
    (k..=k * n)
        .into_par_iter()
        .map_init(
            || (vec![0u32; slots], Vec::<u32>::new()),
            |(counts, touched), s| {
                if k == 2 {
                    fill_pairs(n, s, counts, touched);
                } else {
                    fill_triples(n, s, counts, touched);
                }
                let mut total = 0u128;
                for &slot in touched.iter() {
                    let c = counts[slot as usize] as u128;
                    total += c * c;
                    counts[slot as usize] = 0;
                }
                touched.clear();
                total
            },
        )
        .sum()
}

#[inline]
fn bump(counts: &mut [u32], touched: &mut Vec<u32>, slot: u64, weight: u32) {
    let c = &mut counts[slot as usize];
    if *c == 0 {
        touched.push(slot as u32);
    }
    *c += weight;
}

fn fill_pairs(n: u64, s: u64, counts: &mut [u32], touched: &mut Vec<u32>) {
    let lo = if s > n { s - n } else { 1 };
    let mut a = lo;
    while 2 * a <= s {
        let b = s - a;
        bump(counts, touched, a * a + b * b, if a == b { 1 } else { 2 });
        a += 1;
    }
}

fn fill_triples(n: u64, s: u64, counts: &mut [u32], touched: &mut Vec<u32>) {
    let a_lo = if s > 2 * n { s - 2 * n } else { 1 };
    let mut a = a_lo;
    while 3 * a <= s {
        let rest = s - a;
        let b_lo = a.max(if rest > n { rest - n } else { 1 });
        let mut b = b_lo;
        while 2 * b <= rest {
            let c = rest - b;
            let weight = if a == c {
                1
            } else if a == b || b == c {
                3
            } else {
                6
            };
            bump(counts, touched, a * a + b * b + c * c, weight);
            b += 1;
        }
        a += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(n: u64, k: usize) -> u128 {
        let total = (n as usize).pow(2 * k as u32);
        let mut count = 0u128;
        let mut tuple = vec![0u64; 2 * k];
        for idx in 0..total {
            let mut r = idx;
            for slot in tuple.iter_mut() {
                *slot = (r % n as usize) as u64 + 1;
                r /= n as usize;
            }
            let (l, rt) = tuple.split_at(k);
            if l.iter().sum::<u64>() == rt.iter().sum::<u64>()
                && l.iter().map(|v| v * v).sum::<u64>() == rt.iter().map(|v| v * v).sum::<u64>()
            {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn fourth_moment_examples() {
        assert_eq!(moment_exact_even(1, 2).unwrap(), 1);
        assert_eq!(moment_exact_even(3, 2).unwrap(), 15);
        for n in 1..=12 {
            assert_eq!(moment_exact_even(n, 2).unwrap(), brute_force(n, 2), "N = {n}");
        }
        for n in 1..=64u64 {
            assert_eq!(moment_exact_even(n, 2).unwrap(), (2 * n * n - n) as u128);
        }
    }

    #[test]
    fn sixth_moment_examples() {
        assert_eq!(moment_exact_even(1, 3).unwrap(), 1);
        assert_eq!(moment_exact_even(2, 3).unwrap(), 20);
        for n in 1..=6 {
            assert_eq!(moment_exact_even(n, 3).unwrap(), brute_force(n, 3), "N = {n}");
        }
        // {1,5,6} and {2,3,7} share sum 12 and square sum 62.
        let n7 = moment_exact_even(7, 3).unwrap();
        assert_eq!(n7, brute_force(7, 3));
        assert!(n7 > permutation_only(7));
    }

    /// Count if the only solutions were rearrangements: Σ over multisets of
    /// (number of orderings)².
    fn permutation_only(n: u64) -> u128 {
        let mut total = 0u128;
        for a in 1..=n {
            for b in a..=n {
                for c in b..=n {
                    let w: u128 = if a == c { 1 } else if a == b || b == c { 3 } else { 6 };
                    total += w * w;
                }
            }
        }
        total
    }

    #[test]
    fn caps_and_domain() {
        assert!(matches!(moment_exact_even(513, 3), Err(Error::MemoryCap(_))));
        assert!(moment_exact_even_capped(20, 3, 16).is_err());
        assert!(moment_exact_even(0, 2).is_err());
        assert!(moment_exact_even(4, 4).is_err());
    }
}
