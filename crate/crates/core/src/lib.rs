//! Numerical laboratory for quadratic Weyl sums.
//!
//! The crate evaluates `S_N(x, t) = Σ_{n≤N} e(nx + n²t)` and the objects
//! built around it: generalized Gauss sums, the major-arc decomposition of the
//! torus, `L^α` norms of `S_N` (exactly for even `α`, by quadrature
//! otherwise), growth-exponent fits, totient summatory asymptotics, and a
//! Littlewood–Paley toolkit for quadratic-spectrum polynomials.
//!
//! | module | contents |
//! |---|---|
//! | [`expsum`] | Weyl sums, trigonometric polynomials, grid evaluation |
//! | [`gauss`] | generalized Gauss sums and their closed-form magnitudes |
//! | [`circle`] | major arcs, disjointness, center law, Fresnel integrals |
//! | [`moments`] | exact and quadrature moments, Rudin ratios, fits |
//! | [`arith`] | sieves, zeta constants, Bernoulli numbers, totient sums |
//! | [`lpcordoba`] | dyadic blocks, square functions, Bernstein checks |
//!
//! All scans reduce in a fixed, index-keyed order so results do not depend
//! on the number of worker threads.

pub mod arith;
pub mod budget;
pub mod circle;
mod error;
pub mod expsum;
pub mod gauss;
pub mod lpcordoba;
pub mod moments;
pub mod sum;

pub use budget::WorkBudget;
pub use error::{Error, Result};
