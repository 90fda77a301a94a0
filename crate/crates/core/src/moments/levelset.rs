use super::quadrature::map_row_chunks;
use crate::budget::WorkBudget;
use crate::error::{invalid, Result};
use crate::expsum::GridSpec;

/// Default side of the level-set grid.
pub const DEFAULT_LEVELSET_POINTS: usize = 2048;

/// Fraction of the nodes of `grid_x × grid_t` at which
/// `a√N ≤ |S_N(x, t)| ≤ b√N`.
///
/// `a = 0` is allowed and admits zeros of `S_N`. Comparisons are made on
/// `|S_N|²` against `a²N` and `b²N`.
pub fn level_set_fraction(
    n: u64,
    a: f64,
    b: f64,
    grid_x: &GridSpec,
    grid_t: &GridSpec,
    budget: &WorkBudget,
) -> Result<f64> {
    if n == 0 {
        return Err(invalid("N must be positive"));
    }
    if !(a >= 0.0 && a < b && b.is_finite()) {
        return Err(invalid(format!("need 0 <= a < b, got a = {a}, b = {b}")));
    }
    budget.check(grid_x.points() as u128 * grid_t.points() as u128)?;
    let lo = a * a * n as f64;
    let hi = b * b * n as f64;
    let counts = map_row_chunks(n, grid_t, grid_x, grid_t.points(), || 0u64, |row, count| {
        *count += row.iter().filter(|z| (lo..=hi).contains(&z.norm_sqr())).count() as u64;
    });
    let total: u64 = counts.iter().sum();
    Ok(total as f64 / (grid_x.points() as f64 * grid_t.points() as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expsum::{weyl_sum, TorusPoint};

    #[test]
    fn full_range_and_domain() {
        let g = GridSpec::midpoint(64);
        let b = WorkBudget::default();
        // |S_N| ≤ N = √N · √N.
        assert_eq!(level_set_fraction(16, 0.0, 4.0 + 1e-9, &g, &g, &b).unwrap(), 1.0);
        assert!(level_set_fraction(16, 1.1, 0.9, &g, &g, &b).is_err());
        assert!(level_set_fraction(16, -1.0, 0.9, &g, &g, &b).is_err());
        assert!(level_set_fraction(0, 0.5, 0.9, &g, &g, &b).is_err());
    }

    #[test]
    fn matches_pointwise_count() {
        let (n, a, b) = (11u64, 0.9, 1.1);
        let gx = GridSpec::midpoint(40);
        let gt = GridSpec::midpoint(56);
        let frac = level_set_fraction(n, a, b, &gx, &gt, &WorkBudget::default()).unwrap();
        let mut hits = 0;
        for t in gt.nodes() {
            for x in gx.nodes() {
                let r = weyl_sum(n, TorusPoint::new(x, t)).norm() / (n as f64).sqrt();
                if (a..=b).contains(&r) {
                    hits += 1;
                }
            }
        }
        assert_eq!(frac, hits as f64 / (40.0 * 56.0));
    }
}
