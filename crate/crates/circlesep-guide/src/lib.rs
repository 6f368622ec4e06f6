//! The book under `book/`, kept honest: each chapter is attached here as
//! module documentation, so every fenced Rust block in the prose compiles
//! and runs as a doc-test of this crate. If the library drifts from the
//! book, `cargo test` says so.

#[doc = include_str!("../../../README.md")]
pub mod readme {}

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/exact-arithmetic.md")]
pub mod exact_arithmetic {}

#[doc = include_str!("../../../book/src/separating-circles.md")]
pub mod separating_circles {}

#[doc = include_str!("../../../book/src/avoidant-circles.md")]
pub mod avoidant_circles {}

#[doc = include_str!("../../../book/src/voronoi-graphs.md")]
pub mod voronoi_graphs {}

#[doc = include_str!("../../../book/src/deformations.md")]
pub mod deformations {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
