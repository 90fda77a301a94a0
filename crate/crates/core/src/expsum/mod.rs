//! Quadratic Weyl sums and trigonometric polynomials.
//!
//! The central object is
//!
//! ```text
//! S_N(x, t) = Σ_{n=1}^{N} e(n x + n² t),     e(u) = exp(2πiu).
//! ```
//!
//! Sums start at `n = 1`. Some classical statements start at `n = 0`; the two
//! differ by the single unimodular term `e(0) = 1`, which is absorbed by every
//! asymptotic check in this crate.
//!
//! Angles are fractional turns throughout, so a rational `a/q` is stored as
//! the closest double to `a/q` rather than to `2πa/q`.

mod grid;
pub mod phase;
mod spectrum;
mod trigpoly;

pub use grid::GridSpec;
pub use phase::e;
pub(crate) use spectrum::GridEvaluator;
pub use spectrum::{eval_spectrum, eval_spectrum_direct};
pub use trigpoly::{trigpoly_eval_grid, Aliasing, TrigPoly};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::budget::WorkBudget;
use crate::error::{invalid, Result};
use crate::sum::ComplexCompensatedSum;
use phase::{frac, frac_mul, quadratic_phase};

/// A point `(x, t)` of the torus `[0, 1)²`: `x` multiplies `n`, `t`
/// multiplies `n²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusPoint {
    x: f64,
    t: f64,
}

impl TorusPoint {
    /// Reduces both coordinates mod 1.
    pub fn new(x: f64, t: f64) -> Self {
        Self { x: frac(x), t: frac(t) }
    }

    /// The point `(b/q, a/q)`.
    pub fn rational(b: i64, a: i64, q: u64) -> Self {
        let q = q as i64;
        Self::new(
            b.rem_euclid(q) as f64 / q as f64,
            a.rem_euclid(q) as f64 / q as f64,
        )
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// `(-x, -t)` mod 1.
    pub fn reflect(&self) -> Self {
        Self::new(-self.x, -self.t)
    }
}

/// Number of terms between exact re-anchorings of the phase recurrence.
///
/// Each block of terms is anchored at its midpoint `c`. Writing `n = c + j`,
/// the phase splits as `φ(c) + j·(x + 2ct) + j²t`: `e(φ(c))` and the linear
/// step `e(x + 2ct)` come from exactly reduced phases, the linear part is
/// advanced outward in both directions by one complex multiplication per
/// term, and `e(j²t)` is read from a table built once per iterator. The
/// rounding error of the step grows linearly in `|j|` and has opposite signs
/// on the two halves, which matters at rational points where the terms add
/// coherently. At 16 terms the drift stays below `1e-10` for `N = 10⁵`.
pub const REANCHOR_INTERVAL: usize = 16;

const HALF_BLOCK: usize = REANCHOR_INTERVAL / 2;

/// Iterator over the Weyl terms `e(n x + n² t)` for `n = start, start+1, …`.
#[derive(Debug, Clone)]
pub struct WeylTerms {
    n: u64,
    end: u64,
    x: f64,
    t: f64,
    quadratic: [Complex64; HALF_BLOCK + 1],
    block: [Complex64; REANCHOR_INTERVAL],
    j: usize,
}

impl WeylTerms {
    /// Terms for `n ∈ [start, end]`.
    pub fn new(start: u64, end: u64, p: TorusPoint) -> Self {
        let mut quadratic = [Complex64::new(1.0, 0.0); HALF_BLOCK + 1];
        for (j, q) in quadratic.iter_mut().enumerate() {
            *q = e(frac_mul((j * j) as u64, p.t));
        }
        Self {
            n: start,
            end,
            x: p.x,
            t: p.t,
            quadratic,
            block: [Complex64::new(0.0, 0.0); REANCHOR_INTERVAL],
            j: REANCHOR_INTERVAL,
        }
    }

    /// Fills `block` with the terms `n, …, n + REANCHOR_INTERVAL - 1`.
    fn anchor(&mut self) {
        let c = self.n + HALF_BLOCK as u64;
        let center = e(quadratic_phase(c, self.x, self.t));
        let step = e(frac(self.x + frac_mul(2 * c, self.t)));
        let back = step.conj();
        let mut fwd = center;
        let mut bwd = center;
        self.block[HALF_BLOCK] = center;
        for j in 1..=HALF_BLOCK {
            bwd *= back;
            self.block[HALF_BLOCK - j] = bwd * self.quadratic[j];
            if j < HALF_BLOCK {
                fwd *= step;
                self.block[HALF_BLOCK + j] = fwd * self.quadratic[j];
            }
        }
        self.j = 0;
    }
}

impl Iterator for WeylTerms {
    type Item = Complex64;

    #[inline]
    fn next(&mut self) -> Option<Complex64> {
        if self.n > self.end {
            return None;
        }
        if self.j == REANCHOR_INTERVAL {
            self.anchor();
        }
        let out = self.block[self.j];
        self.j += 1;
        self.n += 1;
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end + 1).saturating_sub(self.n) as usize;
        (left, Some(left))
    }
}

/// `S_N(x, t) = Σ_{n=1}^{N} e(n x + n² t)`.
///
/// Evaluated by the phase recurrence of [`WeylTerms`] with compensated
/// summation in increasing `n`. `|S_N| ≤ N` always holds. `N = 0` gives the
/// empty sum.
///
/// ```
/// use weyl_lab::expsum::{weyl_sum, TorusPoint};
/// // n + n² is even, so every term of S_4(1/2, 1/2) is 1.
/// let s = weyl_sum(4, TorusPoint::new(0.5, 0.5));
/// assert!((s.re - 4.0).abs() < 1e-12 && s.im.abs() < 1e-12);
/// ```
pub fn weyl_sum(n: u64, p: TorusPoint) -> Complex64 {
    if n == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let mut acc = ComplexCompensatedSum::new();
    for z in WeylTerms::new(1, n, p) {
        acc.add(z);
    }
    acc.value()
}

/// Term-by-term evaluation with one trigonometric call per term. Slow; kept
/// as the reference the recurrence is checked against.
pub fn weyl_sum_naive(n: u64, p: TorusPoint) -> Complex64 {
    let mut acc = ComplexCompensatedSum::new();
    for k in 1..=n {
        acc.add(e(quadratic_phase(k, p.x, p.t)));
    }
    acc.value()
}

/// `S_N(x, t_k)` for every node `t_k` of `t_grid`. Each entry is computed by
/// the same routine as [`weyl_sum`], so results are bit-identical to
/// pointwise calls.
pub fn weyl_sum_grid(n: u64, x: f64, t_grid: &GridSpec, budget: &WorkBudget) -> Result<Vec<Complex64>> {
    if n == 0 {
        return Err(invalid("weyl_sum_grid needs N >= 1"));
    }
    budget.check(t_grid.points() as u128 * n as u128)?;
    Ok((0..t_grid.points())
        .into_par_iter()
        .map(|k| weyl_sum(n, TorusPoint::new(x, t_grid.node(k))))
        .collect())
}

/// `|z|^α` computed from `|z|²`. Exponents that are multiples of 1/2 avoid
/// `powf`.
#[inline]
pub fn pow_from_norm_sqr(r2: f64, alpha: f64) -> f64 {
    let quarters = alpha * 2.0;
    if quarters >= 0.0 && quarters <= 64.0 && quarters.fract() == 0.0 {
        let q = quarters as u32;
        let whole = r2.powi((q / 4) as i32);
        match q % 4 {
            0 => whole,
            1 => whole * r2.sqrt().sqrt(),
            2 => whole * r2.sqrt(),
            _ => {
                let s = r2.sqrt();
                whole * s * s.sqrt()
            }
        }
    } else {
        r2.powf(0.5 * alpha)
    }
}

/// Midpoint-rule estimate of `∫₀¹ |f|^α` from samples of `f` on an
/// equispaced grid.
pub fn mean_abs_pow(values: &[Complex64], alpha: f64) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    crate::sum::chunked_sum(values.len(), |k| pow_from_norm_sqr(values[k].norm_sqr(), alpha))
        / values.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn small_examples() {
        assert!(close(weyl_sum(3, TorusPoint::new(0.0, 0.0)), Complex64::new(3.0, 0.0), 1e-15));
        assert!(close(weyl_sum(2, TorusPoint::new(0.0, 0.5)), Complex64::new(0.0, 0.0), 1e-15));
        assert!(close(weyl_sum(4, TorusPoint::new(0.5, 0.5)), Complex64::new(4.0, 0.0), 1e-14));
    }

    #[test]
    fn grid_examples() {
        let b = WorkBudget::default();
        let v = weyl_sum_grid(1, 0.0, &GridSpec::aligned(4), &b).unwrap();
        let want = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, -1.0),
        ];
        for (g, w) in v.iter().zip(want) {
            assert!(close(*g, w, 1e-15));
        }
        let v = weyl_sum_grid(3, 0.0, &GridSpec::aligned(1), &b).unwrap();
        assert!(close(v[0], Complex64::new(3.0, 0.0), 1e-15));
        let v = weyl_sum_grid(2, 0.0, &GridSpec::aligned(2), &b).unwrap();
        assert!(close(v[0], Complex64::new(2.0, 0.0), 1e-15));
        assert!(close(v[1], Complex64::new(0.0, 0.0), 1e-15));
    }

    #[test]
    fn grid_is_bit_identical_to_pointwise() {
        let grid = GridSpec::midpoint(37);
        let v = weyl_sum_grid(1000, 0.3, &grid, &WorkBudget::default()).unwrap();
        for (k, z) in v.iter().enumerate() {
            let p = weyl_sum(1000, TorusPoint::new(0.3, grid.node(k)));
            assert_eq!(z.re.to_bits(), p.re.to_bits());
            assert_eq!(z.im.to_bits(), p.im.to_bits());
        }
    }

    #[test]
    fn grid_respects_budget() {
        let err = weyl_sum_grid(1000, 0.0, &GridSpec::midpoint(100), &WorkBudget::new(99_999));
        assert!(matches!(err, Err(crate::Error::Budget { .. })));
        assert!(weyl_sum_grid(0, 0.0, &GridSpec::midpoint(4), &WorkBudget::default()).is_err());
    }

    #[test]
    fn recurrence_tracks_naive_sum_at_resonant_points() {
        let n = 100_000;
        for &(b, a, q) in &[(1, 1, 3), (0, 1, 3), (2, 3, 7), (1, 2, 5), (0, 1, 4), (3, 5, 11), (4, 3, 14)] {
            let p = TorusPoint::rational(b, a, q);
            let fast = weyl_sum(n, p);
            let slow = weyl_sum_naive(n, p);
            assert!((fast - slow).norm() < 1e-10, "({b},{a},{q}): {}", (fast - slow).norm());
        }
    }

    #[test]
    fn recurrence_tracks_naive_sum_at_generic_points() {
        let n = 100_000;
        for &(x, t) in &[(0.123456789, 0.987654321), (0.5, 1e-9), (0.7071067811865476, 0.31830988618379)] {
            let p = TorusPoint::new(x, t);
            let d = (weyl_sum(n, p) - weyl_sum_naive(n, p)).norm();
            assert!(d < 1e-10, "({x},{t}): {d}");
        }
    }

    #[test]
    fn half_integer_powers_match_powf() {
        for &alpha in &[0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 3.75, 4.0, 6.0, 3.9] {
            for &r2 in &[0.0, 1e-3, 0.7, 2.0, 12345.678] {
                let fast = pow_from_norm_sqr(r2, alpha);
                let slow = r2.powf(alpha / 2.0);
                assert!((fast - slow).abs() <= 1e-14 * slow.max(1.0), "{alpha} {r2}");
            }
        }
    }

    proptest! {
        #[test]
        fn bounded_by_length(n in 1u64..3000, x in 0.0f64..1.0, t in 0.0f64..1.0) {
            let s = weyl_sum(n, TorusPoint::new(x, t));
            prop_assert!(s.norm() <= n as f64 * (1.0 + 1e-12));
        }

        #[test]
        fn reflection_conjugates(n in 1u64..3000, xk in 0u64..(1 << 20), tk in 0u64..(1 << 20)) {
            // Dyadic coordinates, so that 1 - x and 1 - t are exact.
            let scale = (1u64 << 20) as f64;
            let p = TorusPoint::new(xk as f64 / scale, tk as f64 / scale);
            let s = weyl_sum(n, p);
            let r = weyl_sum(n, p.reflect());
            prop_assert!((r - s.conj()).norm() < 1e-12);
        }
    }
}
