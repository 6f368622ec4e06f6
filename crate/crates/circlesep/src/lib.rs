//! Exact computational geometry for configurations of rational dots on the
//! unit sphere: which circles separate them, what the higher-order bicolored
//! Voronoi graphs look like, and how those graphs rearrange when the dots
//! move.
//!
//! Everything combinatorial is decided in exact rational arithmetic — the
//! configurations live at rational points of the sphere (as stereographic
//! lifts of rational planar points), and every side-of-circle question is
//! the sign of a determinant over `BigRational`. Floating point appears
//! only in presentation output (numeric circle centers, SVG drawings).
//!
//! The main entry points:
//!
//! - [`geom::DotConfig`] — a validated configuration of distinct dots;
//! - [`circles`] — counting circles through three dots by how they split
//!   the rest, with the matching closed forms;
//! - [`separable`] — which `k`-subsets can be cut off by a circle through
//!   no dots, decided twice (a sweep and an independent feasibility oracle);
//! - [`voronoi::build_graph`] — the order-`k` bicolored Voronoi graph,
//!   assembled purely from side predicates;
//! - [`dynamics::move_sequence`] — deform one configuration into another
//!   and classify every combinatorial change on the way;
//! - [`io`] / [`export`] — JSON, DOT and SVG output;
//! - [`sample`] — seeded random configurations for experiments and tests.

pub mod circles;
pub mod dotset;
pub mod dynamics;
pub mod export;
pub mod geom;
pub mod io;
pub mod poly;
pub mod rat;
pub mod sample;
pub mod separable;
pub mod voronoi;

mod error;

pub use error::Error;
