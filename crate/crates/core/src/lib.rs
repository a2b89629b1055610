//! Exact laboratory for billiard words in the unit cube.
//!
//! The crate traces unfolded billiard trajectories in the direction
//! `(r, 1/φ, 1/φ²)`, codes them over `{a, b, c}`, measures factor complexity,
//! and rebuilds the words from a coded circle translation.

#![allow(clippy::result_large_err, clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod acceptance;
pub mod billiard;
pub mod directional;
pub mod exactnum;
pub mod linalg;
pub mod returns;
pub mod rotation;
pub mod words;

pub use exactnum::{FieldNumber, Rational};
