//! The guide's chapters, compiled so `cargo test --doc` runs every listing.
//!
//! One module per chapter keeps failures traceable to their source file.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/weyl-sums.md")]
pub mod weyl_sums {}

#[doc = include_str!("../../../book/src/arcs.md")]
pub mod arcs {}

#[doc = include_str!("../../../book/src/moments.md")]
pub mod moments {}

#[doc = include_str!("../../../book/src/arithmetic.md")]
pub mod arithmetic {}

#[doc = include_str!("../../../book/src/littlewood-paley.md")]
pub mod littlewood_paley {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
