//! Littlewood–Paley and Bernstein machinery for quadratic-spectrum
//! polynomials.
//!
//! [`dyadic_split`] cuts a polynomial into frequency blocks
//! `2^j ≤ n < 2^(j+1)` (block 0 holds `{0, 1}`, negative blocks mirror the
//! positive ones), and [`square_function_norm`] measures
//! `(Σ_j |S_j(P)|²)^(1/2)`. [`bernstein_check`] compares derivative norms
//! with the falling-factorial bound, and [`cordoba_ratio`] evaluates the
//! weighted `L^α / ℓ²` ratio for `Σ k^(2ℓ) a_k e(k²θ)` with decreasing
//! `a_k`.
//!
//! Random families come from per-member ChaCha streams, so a family is the
//! same for a given seed no matter how it is traversed.

mod bernstein;
mod comparability;
mod cordoba;
mod dyadic;
mod family;

pub use bernstein::{
    bernstein_battery, bernstein_check, derivative, falling_factorial, BatteryRow, BernsteinRecord, Derivative,
};
pub use comparability::{comparability_ratios, COMPARABILITY_BOUNDS};
pub use cordoba::{
    cordoba_ratio, cordoba_ratio_with, quadratic_block_split, quadratic_poly, summation_by_parts, QuadraticBlock,
    RationalPoly,
};
pub use dyadic::{default_norm_grid, dyadic_index, dyadic_split, lp_norm, square_function_norm, DyadicBlocks};
pub use family::{member_rng, random_family, random_poly, Support, DEFAULT_FAMILY_SEED};
