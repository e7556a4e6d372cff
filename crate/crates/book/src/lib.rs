//! The guide in `book/` is plain mdbook, which cannot resolve crate
//! dependencies when testing listings. Each chapter is pulled in here as
//! the docs of an empty module, so `cargo test` runs every listing as a
//! doctest against the real library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/cut-sets.md")]
pub mod cut_sets {}
#[doc = include_str!("../../../book/src/fuzzy-sets.md")]
pub mod fuzzy_sets {}
#[doc = include_str!("../../../book/src/time-changes.md")]
pub mod time_changes {}
#[doc = include_str!("../../../book/src/metrics.md")]
pub mod metrics {}
#[doc = include_str!("../../../book/src/example-family.md")]
pub mod example_family {}
#[doc = include_str!("../../../book/src/theorem-check.md")]
pub mod theorem_check {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
