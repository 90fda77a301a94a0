use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num_complex::Complex64;

use super::grid::GridSpec;
use super::phase::{e, frac_mul};
use super::spectrum::{eval_spectrum, eval_spectrum_direct};
use crate::error::{Error, Result};
use crate::sum::ComplexCompensatedSum;

/// A finite trigonometric polynomial `P(θ) = Σ_n c_n e(nθ)`.
///
/// Zero coefficients are never stored, so `degree` is the largest `|n|` with
/// a nonzero coefficient (0 for the zero polynomial).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TrigPoly {
    coeffs: BTreeMap<i64, Complex64>,
}

/// Whether a grid evaluation may undersample the polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Aliasing {
    Allow,
    /// Require `points ≥ 2·degree + 1`, the condition under which the
    /// midpoint rule integrates `|P|²` exactly.
    Forbid,
}

impl TrigPoly {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from `(frequency, coefficient)` pairs; repeated frequencies
    /// add up.
    pub fn from_coeffs(pairs: impl IntoIterator<Item = (i64, Complex64)>) -> Self {
        let mut p = Self::new();
        for (n, c) in pairs {
            p.add_term(n, c);
        }
        p
    }

    /// Real-coefficient convenience constructor.
    pub fn from_real(pairs: impl IntoIterator<Item = (i64, f64)>) -> Self {
        Self::from_coeffs(pairs.into_iter().map(|(n, c)| (n, Complex64::new(c, 0.0))))
    }

    pub fn monomial(n: i64, c: Complex64) -> Self {
        Self::from_coeffs([(n, c)])
    }

    /// `cos(2π n θ) = (e(nθ) + e(-nθ)) / 2`.
    pub fn cosine(n: i64) -> Self {
        Self::from_real([(n, 0.5), (-n, 0.5)])
    }

    pub fn add_term(&mut self, n: i64, c: Complex64) {
        let entry = self.coeffs.entry(n).or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
        if *entry == Complex64::new(0.0, 0.0) {
            self.coeffs.remove(&n);
        }
    }

    pub fn coeff(&self, n: i64) -> Complex64 {
        self.coeffs.get(&n).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().map(|(&n, &c)| (n, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.coeffs.keys().map(|n| n.unsigned_abs()).max().unwrap_or(0)
    }

    /// Smallest and largest frequency present.
    pub fn frequency_range(&self) -> Option<(i64, i64)> {
        Some((*self.coeffs.keys().next()?, *self.coeffs.keys().next_back()?))
    }

    /// Direct evaluation at one angle (in turns).
    pub fn eval(&self, theta: f64) -> Complex64 {
        let mut acc = ComplexCompensatedSum::new();
        for (n, c) in self.iter() {
            let p = frac_mul(n.unsigned_abs(), theta);
            acc.add(c * e(if n < 0 { -p } else { p }));
        }
        acc.value()
    }

    /// `Σ |c_n|²`, which is `‖P‖₂²` by Parseval.
    pub fn l2_norm_sqr(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm_sqr()).collect::<crate::sum::CompensatedSum>().value()
    }

    /// Multiplies every coefficient `c_n` by `f(n)`, dropping results that
    /// vanish.
    pub fn map_coeffs(&self, f: impl Fn(i64, Complex64) -> Complex64) -> Self {
        Self::from_coeffs(self.iter().map(|(n, c)| (n, f(n, c))))
    }
}

impl Add for &TrigPoly {
    type Output = TrigPoly;

    fn add(self, rhs: &TrigPoly) -> TrigPoly {
        let mut out = self.clone();
        for (n, c) in rhs.iter() {
            out.add_term(n, c);
        }
        out
    }
}

impl Mul<Complex64> for &TrigPoly {
    type Output = TrigPoly;

    fn mul(self, rhs: Complex64) -> TrigPoly {
        self.map_coeffs(|_, c| c * rhs)
    }
}

impl FromIterator<(i64, Complex64)> for TrigPoly {
    fn from_iter<I: IntoIterator<Item = (i64, Complex64)>>(iter: I) -> Self {
        Self::from_coeffs(iter)
    }
}

/// Below this many term-node products the direct sum is cheaper than the
/// transform.
const DIRECT_WORK_LIMIT: usize = 1 << 14;

/// Values of `P` at every node of `grid`.
///
/// Uses an FFT of the folded coefficient array unless the polynomial and grid
/// are small enough for direct summation; the two paths agree to ~1e-13
/// relative to `Σ|c_n|`.
pub fn trigpoly_eval_grid(p: &TrigPoly, grid: &GridSpec, aliasing: Aliasing) -> Result<Vec<Complex64>> {
    let degree = p.degree();
    if aliasing == Aliasing::Forbid && (grid.points() as u128) < 2 * degree as u128 + 1 {
        return Err(Error::Alias { points: grid.points(), degree });
    }
    if p.len().saturating_mul(grid.points()) <= DIRECT_WORK_LIMIT {
        let terms: Vec<_> = p.iter().collect();
        Ok(eval_spectrum_direct(&terms, grid))
    } else {
        Ok(eval_spectrum(p.iter(), grid))
    }
}
