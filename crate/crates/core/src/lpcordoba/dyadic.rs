use std::collections::BTreeMap;

use crate::error::{invalid, Result};
use crate::expsum::{trigpoly_eval_grid, Aliasing, GridSpec, TrigPoly};
use crate::expsum::mean_abs_pow;

/// Index of the Littlewood–Paley block holding frequency `n`.
///
/// `j > 0` holds `2^j ≤ n < 2^(j+1)`, `j < 0` holds
/// `-2^|j| < n ≤ -2^(|j|-1)`, and `j = 0` holds `{0, 1}`.
pub fn dyadic_index(n: i64) -> i32 {
    match n {
        0 | 1 => 0,
        n if n > 1 => n.ilog2() as i32,
        n => -(n.unsigned_abs().ilog2() as i32 + 1),
    }
}

/// The pieces `S_j(P)` of a polynomial, keyed by block index.
#[derive(Debug, Clone, PartialEq)]
pub struct DyadicBlocks {
    pub blocks: BTreeMap<i32, TrigPoly>,
    pub source_degree: u64,
}

impl DyadicBlocks {
    /// `Σ_j S_j(P)`. Blocks have disjoint supports, so this reproduces the
    /// source coefficients exactly.
    pub fn reassemble(&self) -> TrigPoly {
        self.blocks.values().flat_map(|b| b.iter()).collect()
    }

    pub fn indices(&self) -> Vec<i32> {
        self.blocks.keys().copied().collect()
    }
}

/// Splits `P` into dyadic frequency blocks.
///
/// ```
/// use weyl_lab::expsum::TrigPoly;
/// use weyl_lab::lpcordoba::dyadic_split;
///
/// let p = TrigPoly::from_real((1..=5).map(|n| (n, 1.0)));
/// let blocks = dyadic_split(&p);
/// assert_eq!(blocks.indices(), vec![0, 1, 2]);
/// assert_eq!(blocks.reassemble(), p);
/// ```
pub fn dyadic_split(p: &TrigPoly) -> DyadicBlocks {
    let mut blocks: BTreeMap<i32, TrigPoly> = BTreeMap::new();
    for (n, c) in p.iter() {
        blocks.entry(dyadic_index(n)).or_default().add_term(n, c);
    }
    DyadicBlocks { blocks, source_degree: p.degree() }
}

/// Midpoint grid of `64 · degree` points (at least 64).
pub fn default_norm_grid(degree: u64) -> GridSpec {
    GridSpec::midpoint((64 * degree.max(1)) as usize)
}

fn check_exponent(alpha: f64, min: f64) -> Result<()> {
    if alpha.is_finite() && alpha >= min {
        Ok(())
    } else {
        Err(invalid(format!("exponent {alpha} is below {min}")))
    }
}

/// `‖P‖_α` by the midpoint rule on `grid`, which must not alias.
pub fn lp_norm(p: &TrigPoly, alpha: f64, grid: &GridSpec) -> Result<f64> {
    check_exponent(alpha, f64::MIN_POSITIVE)?;
    let values = trigpoly_eval_grid(p, grid, Aliasing::Forbid)?;
    Ok(mean_abs_pow(&values, alpha).powf(1.0 / alpha))
}

/// `‖(Σ_j |S_j(P)|²)^(1/2)‖_α` for `α > 1`.
pub fn square_function_norm(p: &TrigPoly, alpha: f64, grid: &GridSpec) -> Result<f64> {
    if !(alpha > 1.0 && alpha.is_finite()) {
        return Err(invalid(format!("alpha = {alpha} must exceed 1")));
    }
    let mut square = vec![0.0; grid.points()];
    for block in dyadic_split(p).blocks.values() {
        let values = trigpoly_eval_grid(block, grid, Aliasing::Forbid)?;
        for (s, v) in square.iter_mut().zip(&values) {
            *s += v.norm_sqr();
        }
    }
    let g = square.len();
    let mean = crate::sum::chunked_sum(g, |k| square[k].powf(0.5 * alpha)) / g as f64;
    Ok(mean.powf(1.0 / alpha))
}
