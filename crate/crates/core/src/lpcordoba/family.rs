use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expsum::TrigPoly;

/// Seed of the fixed families used by the regression checks.
pub const DEFAULT_FAMILY_SEED: u64 = 0x5eed_2024;

/// Frequency support of a random polynomial of degree `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    /// `-d ..= d`.
    Trig,
    /// `0 ..= d`, an algebraic polynomial in `z = e(θ)`.
    Analytic,
}

/// Generator for member `index` of the family `seed`. Each member has its
/// own ChaCha stream, so members can be built in any order.
pub fn member_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Degree `degree` polynomial with coefficients uniform in the unit square.
/// The top coefficient(s) are kept away from zero so the degree is exact.
pub fn random_poly(rng: &mut impl Rng, degree: u64, support: Support) -> TrigPoly {
    let d = degree as i64;
    let lo = match support {
        Support::Trig => -d,
        Support::Analytic => 0,
    };
    let mut p = TrigPoly::new();
    for n in lo..=d {
        let mut c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if n.unsigned_abs() == degree && c.norm() < 0.1 {
            c += Complex64::new(0.5, 0.0);
        }
        p.add_term(n, c);
    }
    p
}

/// `count` polynomials with degrees uniform in `min_degree..=max_degree`.
pub fn random_family(seed: u64, count: usize, min_degree: u64, max_degree: u64, support: Support) -> Vec<TrigPoly> {
    (0..count as u64)
        .map(|i| {
            let mut rng = member_rng(seed, i);
            let degree = rng.gen_range(min_degree..=max_degree);
            random_poly(&mut rng, degree, support)
        })
        .collect()
}
