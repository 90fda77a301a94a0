//! Angles in fractional turns.

use num_complex::Complex64;
use std::f64::consts::TAU;

/// Reduces `u` into `[0, 1)`.
#[inline]
pub fn frac(u: f64) -> f64 {
    let f = u - u.floor();
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

/// `frac(n * t)` for an integer `n < 2^53`, using an error-free product so
/// the result is accurate to a few ulps of 1 even when `n * t` is huge.
#[inline]
pub fn frac_mul(n: u64, t: f64) -> f64 {
    debug_assert!(n < (1u64 << 53));
    let nf = n as f64;
    let hi = nf * t;
    let lo = nf.mul_add(t, -hi);
    frac(frac(hi) + lo)
}

/// `e(u) = exp(2πiu)`.
///
/// The argument is reduced to the nearest quarter turn first, so the
/// rounding of `2π·u` acts on an angle of at most `π/4` and the quadrant
/// rotation is exact.
#[inline]
pub fn e(turns: f64) -> Complex64 {
    let f = frac(turns);
    let quadrant = (f * 4.0).round();
    // Sterbenz: f and quadrant/4 are within a factor of two unless quadrant = 0.
    let g = f - quadrant * 0.25;
    let (s, c) = (TAU * g).sin_cos();
    match quadrant as u8 & 3 {
        0 => Complex64::new(c, s),
        1 => Complex64::new(-s, c),
        2 => Complex64::new(-c, -s),
        _ => Complex64::new(s, -c),
    }
}

/// Phase of the Weyl term `n x + n² t`, reduced mod 1.
#[inline]
pub fn quadratic_phase(n: u64, x: f64, t: f64) -> f64 {
    frac(frac_mul(n, x) + frac_mul(n * n, t))
}
