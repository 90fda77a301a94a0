//! Generalized quadratic Gauss sums
//!
//! ```text
//! S(a, b, q) = Σ_{n=1}^{q} e((a n² + b n) / q),     gcd(a, q) = 1.
//! ```
//!
//! [`gauss_sum_direct`] evaluates the sum from exact residues and
//! [`gauss_magnitude_closed_form`] returns the magnitude predicted by
//! `q mod 4` and the parity of `b`. The two are independent and each is a
//! check on the other.
//!
//! # Parity of `b`
//!
//! The closed form splits on whether `b` is even or odd. When `q` is odd the
//! parity of `b mod q` is meaningless (`b` and `b + q` have opposite parity
//! but the same sum), so [`GaussSumParams`] keys the split on the integer `b`
//! exactly as given. For odd `q` both classes give `√q`, so the choice never
//! changes a magnitude; it only decides which label a row carries.

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::expsum::e;
use crate::sum::ComplexCompensatedSum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(b: i64) -> Self {
        if b.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Residues `b` for which `S(a, b, q)` does not vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParityClass {
    All,
    Even,
    Odd,
}

impl ParityClass {
    pub fn admits(self, b: i64) -> bool {
        match self {
            ParityClass::All => true,
            ParityClass::Even => Parity::of(b) == Parity::Even,
            ParityClass::Odd => Parity::of(b) == Parity::Odd,
        }
    }
}

/// Validated `(a, b, q)` with `gcd(a, q) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaussSumParams {
    a: i64,
    b: i64,
    q: u64,
}

impl GaussSumParams {
    pub fn new(a: i64, b: i64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(crate::error::invalid("modulus q must be positive"));
        }
        if q > i64::MAX as u64 {
            return Err(crate::error::invalid("modulus q does not fit in i64"));
        }
        let gcd = (a.rem_euclid(q as i64) as u64).gcd(&q);
        if gcd != 1 {
            return Err(Error::NotCoprime { a, q, gcd });
        }
        Ok(Self { a, b, q })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    /// `b` as given, before reduction.
    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn a_mod(&self) -> u64 {
        self.a.rem_euclid(self.q as i64) as u64
    }

    pub fn b_mod(&self) -> u64 {
        self.b.rem_euclid(self.q as i64) as u64
    }

    /// Parity of the given `b` (see the module docs).
    pub fn parity(&self) -> Parity {
        Parity::of(self.b)
    }
}

/// `e(r/q)` for `r = 0..q`, built once per modulus.
#[derive(Debug, Clone)]
pub struct RootsOfUnity {
    q: u64,
    table: Vec<Complex64>,
}

impl RootsOfUnity {
    pub fn new(q: u64) -> Self {
        assert!(q >= 1, "modulus must be positive");
        let table = (0..q).map(|r| e(r as f64 / q as f64)).collect();
        Self { q, table }
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn get(&self, r: u64) -> Complex64 {
        self.table[(r % self.q) as usize]
    }

    /// `Σ_{n=c+1}^{c+q} e((a n² + b n)/q)`.
    ///
    /// The residues `(a n² + b n) mod q` are counted exactly, then each
    /// root of unity is weighted by its count, so the result depends only on
    /// the multiset of residues. In particular it is bit-identical for any
    /// shift `c` and for `b` and `b + q`.
    pub fn sum_from(&self, p: &GaussSumParams, c: i64) -> Complex64 {
        assert_eq!(p.q, self.q, "table built for a different modulus");
        let q = self.q;
        let mut counts = vec![0u64; q as usize];
        let a = p.a_mod();
        let b = p.b_mod();
        let start = (c as i128 + 1).rem_euclid(q as i128) as u64;
        // r(n) = a n² + b n; r(n+1) - r(n) = a(2n + 1) + b.
        let mut r = mul_mod(a, mul_mod(start, start, q), q);
        r = (r + mul_mod(b, start, q)) % q;
        let mut d = (mul_mod(a, (2 * start as u128 % q as u128) as u64 + 1, q) + b) % q;
        let two_a = mul_mod(2, a, q);
        // r, d, two_a < q, so one conditional subtraction reduces each sum
        for _ in 0..q {
            counts[r as usize] += 1;
            r += d;
            if r >= q {
                r -= q;
            }
            d += two_a;
            if d >= q {
                d -= q;
            }
        }
        let mut acc = ComplexCompensatedSum::new();
        for (residue, &count) in counts.iter().enumerate() {
            if count != 0 {
                acc.add(self.table[residue] * count as f64);
            }
        }
        acc.value()
    }
}

fn mul_mod(x: u64, y: u64, q: u64) -> u64 {
    ((x as u128 * y as u128) % q as u128) as u64
}

/// `S(a, b, q) = Σ_{n=1}^{q} e((a n² + b n)/q)`.
///
/// ```
/// use weyl_lab::gauss::{gauss_sum_direct, GaussSumParams};
///
/// let s = gauss_sum_direct(&GaussSumParams::new(1, 0, 3).unwrap());
/// assert!(s.re.abs() < 1e-15 && (s.im - 3f64.sqrt()).abs() < 1e-15);
/// ```
pub fn gauss_sum_direct(p: &GaussSumParams) -> Complex64 {
    RootsOfUnity::new(p.q).sum_from(p, 0)
}

/// Magnitude of `S(a, b, q)` from `q mod 4` and the parity of `b`:
///
/// | | q odd | q ≡ 2 (mod 4) | q ≡ 0 (mod 4) |
/// |---|---|---|---|
/// | b even | √q | 0 | √(2q) |
/// | b odd | √q | √(2q) | 0 |
pub fn gauss_magnitude_closed_form(p: &GaussSumParams) -> f64 {
    let q = p.q as f64;
    match (p.q % 4, p.parity()) {
        (1 | 3, _) => q.sqrt(),
        (2, Parity::Even) | (0, Parity::Odd) => 0.0,
        (_, _) => (2.0 * q).sqrt(),
    }
}

/// Which `b` give a nonvanishing sum for modulus `q`.
pub fn admissible_b(q: u64) -> ParityClass {
    match q % 4 {
        0 => ParityClass::Even,
        2 => ParityClass::Odd,
        _ => ParityClass::All,
    }
}
