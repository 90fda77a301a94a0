use num_integer::Integer;

use super::quadrature::{moment_quadrature, NormMode, NormSample, QuadratureOptions};
use crate::error::{invalid, Result};
use crate::gauss::admissible_b;

/// A reduced fraction `b/q` in `[0, 1)`, used as an `x` candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalX {
    pub b: u64,
    pub q: u64,
}

impl RationalX {
    pub fn value(&self) -> f64 {
        self.b as f64 / self.q as f64
    }
}

/// Reduced `b/q` with `q ≤ qmax` and `q² ≤ N` whose Gauss sums `S(a, b, q)`
/// do not vanish, ordered by `(q, b)`. Always starts with `0/1`.
pub fn default_candidates(n: u64, qmax: u64) -> Vec<RationalX> {
    let mut out = Vec::new();
    for q in 1..=qmax {
        if q * q > n {
            break;
        }
        let class = admissible_b(q);
        for b in 0..q {
            if b.gcd(&q) == 1 && class.admits(b as i64) {
                out.push(RationalX { b, q });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct MarginalScan {
    pub best: NormSample,
    pub argmax: RationalX,
    /// Every candidate with its marginal integral, in input order.
    pub values: Vec<(RationalX, f64)>,
}

/// `max_x ∫₀¹ |S_N(x, t)|^α dt` over rational candidates. Ties go to the
/// earlier candidate.
pub fn marginal_sup_scan(
    n: u64,
    alpha: f64,
    candidates: &[RationalX],
    opts: &QuadratureOptions,
) -> Result<MarginalScan> {
    if candidates.is_empty() {
        return Err(invalid("no x candidates"));
    }
    for c in candidates {
        if c.q == 0 || c.b >= c.q || c.q * c.q > n.max(1) {
            return Err(invalid(format!("candidate {}/{} needs 0 <= b < q and q^2 <= N", c.b, c.q)));
        }
    }
    let mut best: Option<(NormSample, RationalX)> = None;
    let mut values = Vec::with_capacity(candidates.len());
    for &c in candidates {
        let sample = moment_quadrature(n, alpha, &NormMode::Marginal { x: c.value() }, opts)?;
        values.push((c, sample.value));
        if best.as_ref().map_or(true, |(b, _)| sample.value > b.value) {
            best = Some((sample, c));
        }
    }
    let (best, argmax) = best.expect("candidates is nonempty");
    Ok(MarginalScan { best, argmax, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidate_list() {
        let c = default_candidates(1000, 4);
        let pairs: Vec<(u64, u64)> = c.iter().map(|r| (r.b, r.q)).collect();
        // q = 4 needs even b, which is never coprime to 4.
        assert_eq!(pairs, vec![(0, 1), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(default_candidates(8, 7).len(), 2);
        assert_eq!(default_candidates(1, 7), vec![RationalX { b: 0, q: 1 }]);
    }

    #[test]
    fn examples() {
        let opts = QuadratureOptions::default();
        let s = marginal_sup_scan(1, 3.0, &default_candidates(1, 7), &opts).unwrap();
        assert!((s.best.value - 1.0).abs() < 1e-13);

        let s = marginal_sup_scan(64, 2.0, &default_candidates(64, 7), &opts).unwrap();
        for (_, v) in &s.values {
            assert!((v - 64.0).abs() < 1e-8);
        }
        assert!(marginal_sup_scan(15, 3.0, &[RationalX { b: 1, q: 4 }], &opts).is_err());
    }
}
