//! Non-zero component graphs of finite vector spaces.
//!
//! The vertices of `G(V)` are the non-zero vectors of an `n`-dimensional
//! space over a `q`-element field; two vertices are adjacent when their
//! expansions in the standard basis share a basis vector with non-zero
//! coefficient. This crate builds these graphs, computes their automorphism
//! groups with two independent engines, and computes or bounds their
//! distinguishing numbers, with checkable reports for each structural claim.

pub mod cli;
pub mod distinguishing;
pub mod error;
pub mod graph;
pub mod report;
pub mod symmetry;
pub mod vectorspace;

pub use error::{Error, Result};
pub use graph::NzcGraph;
pub use vectorspace::{SpaceParams, Skeleton, Vector, DEFAULT_VERTEX_CAP};
