use rayon::prelude::*;

use super::dyadic::{default_norm_grid, lp_norm, square_function_norm};
use super::family::{random_family, Support};
use crate::error::Result;

/// `square_function_norm / ‖P‖_α` for each member of the family `seed`:
/// `count` trigonometric polynomials of degree `1..=max_degree`.
pub fn comparability_ratios(seed: u64, count: usize, max_degree: u64, alpha: f64) -> Result<Vec<f64>> {
    random_family(seed, count, 1, max_degree, Support::Trig)
        .par_iter()
        .map(|p| {
            let grid = default_norm_grid(p.degree());
            Ok(square_function_norm(p, alpha, &grid)? / lp_norm(p, alpha, &grid)?)
        })
        .collect()
}

/// Range of [`comparability_ratios`] for the default family
/// (`DEFAULT_FAMILY_SEED`, 100 members, degree ≤ 256), as `(alpha, low, high)`.
/// Measured extremes are 0.94604..0.96749 at `α = 2.5` and 0.90061..0.94215
/// at `α = 3`; the bounds round them outward by about `1e-3`.
pub const COMPARABILITY_BOUNDS: [(f64, f64, f64); 2] = [(2.5, 0.945, 0.968), (3.0, 0.899, 0.943)];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_family_is_comparable() {
        let r = comparability_ratios(1, 12, 40, 3.0).unwrap();
        assert_eq!(r.len(), 12);
        assert!(r.iter().all(|v| (0.5..2.0).contains(v)));
        // α = 2: blockwise Parseval makes the ratio 1.
        for v in comparability_ratios(1, 12, 40, 2.0).unwrap() {
            assert!((v - 1.0).abs() < 1e-9);
        }
    }
}
