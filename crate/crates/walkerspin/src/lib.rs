//! Exact spin-coefficient calculus for four-dimensional neutral-signature metrics,
//! with Walker metrics as the main subject.

#![allow(clippy::needless_range_loop)]

pub mod expr;
pub mod poly;
pub mod spin;
pub mod walker;
pub mod curvature;
pub mod sample;
pub mod geometry;
pub mod nullgeom;
pub mod congruence;
pub mod heavenly;
pub mod cli;
