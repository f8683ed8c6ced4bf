//! Guide listings.
//!
//! Each chapter of `book/src` is included as the doc comment of a module, so
//! `cargo test --doc` compiles and runs every code block in the guide.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/margins.md")]
pub mod margins {}
#[doc = include_str!("../../../book/src/basis.md")]
pub mod basis {}
#[doc = include_str!("../../../book/src/comeans.md")]
pub mod comeans {}
#[doc = include_str!("../../../book/src/density.md")]
pub mod density {}
#[doc = include_str!("../../../book/src/inference.md")]
pub mod inference {}
#[doc = include_str!("../../../book/src/benchmarks.md")]
pub mod benchmarks {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
