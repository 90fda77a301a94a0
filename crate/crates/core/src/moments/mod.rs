//! `L^α` norms of Weyl sums.
//!
//! Even moments are Diophantine counts ([`moment_exact_even`]); other
//! exponents use the midpoint rule on grids fine enough to resolve every
//! oscillation of `S_N` ([`moment_quadrature`]). The remaining operations
//! build on those two: rational scans for `sup_x`, Rudin ratios for
//! quadratic-spectrum polynomials, log-log exponent fits, and level sets of
//! `|S_N|/√N`.
//!
//! The fourth moment is `2N² - N`: two pairs with equal sums and equal sums
//! of squares are the same pair.
//!
//! ```
//! use weyl_lab::moments::{moment_exact_even, moment_quadrature, NormMode, QuadratureOptions};
//!
//! let exact = moment_exact_even(32, 2).unwrap() as f64;
//! let quad = moment_quadrature(32, 4.0, &NormMode::Double, &QuadratureOptions::default()).unwrap();
//! assert_eq!(exact, 2016.0);
//! assert!((quad.value / exact - 1.0).abs() < 1e-9);
//! ```

mod exact;
mod fit;
mod levelset;
mod quadrature;
mod rudin;
mod scan;

pub use exact::{moment_exact_even, moment_exact_even_capped, DEFAULT_K3_CAP};
pub use fit::{fit_exponent, fit_power_law, FitResult};
pub use levelset::{level_set_fraction, DEFAULT_LEVELSET_POINTS};
pub use quadrature::{
    moment_quadrature, moment_quadrature_multi, standard_t_grid, standard_x_grid, NormMode, NormSample,
    QuadratureOptions, DEFAULT_MAX_DOUBLE_N,
};
pub(crate) use rudin::lp_ratio;
pub use rudin::{rudin_ratio, rudin_ratio_sup, rudin_ratio_with, CoeffMode};
pub use scan::{default_candidates, marginal_sup_scan, MarginalScan, RationalX};
