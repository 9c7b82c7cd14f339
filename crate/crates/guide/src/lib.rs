//! The book's chapters, included as doc comments so that every code
//! block in `book/src/` compiles and runs under `cargo test --doc`.
//! One module per chapter keeps test failures attributable to a file.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/orders.md")]
pub mod orders {}

#[doc = include_str!("../../../book/src/cyclotomic.md")]
pub mod cyclotomic {}

#[doc = include_str!("../../../book/src/recovery.md")]
pub mod recovery {}

#[doc = include_str!("../../../book/src/coincidences.md")]
pub mod coincidences {}

#[doc = include_str!("../../../book/src/geometry.md")]
pub mod geometry {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
