//! The chapters of the guide under `book/`, pulled in as doc comments so
//! that `cargo test` compiles and runs every listing against the library.
//!
//! mdbook cannot link its examples against a crate, rustdoc can. One module
//! per chapter keeps a failing doctest traceable to its chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/model.md")]
pub mod model {}

#[doc = include_str!("../../../book/src/wolff.md")]
pub mod wolff {}

#[doc = include_str!("../../../book/src/statistics.md")]
pub mod statistics {}

#[doc = include_str!("../../../book/src/binder.md")]
pub mod binder {}

#[doc = include_str!("../../../book/src/workflow.md")]
pub mod workflow {}
