//! Gelfand-Tsetlin pattern arrays on triangular, trapezoidal and rectangular
//! shapes, with the Gog and GOGAm family predicates, canonical completions,
//! the left-trapezoid bijections for widths one and two, pruned exhaustive
//! enumeration, and a verification harness.
//!
//! Conventions used throughout: rows are indexed `i = n` (top) down to `1`
//! (bottom), row `i` owning cells `(i, j)` with `j` increasing to the right.
//! Every entry is a positive integer. An array is GT-valid when each entry
//! lies weakly between its two upper neighbours wherever those neighbours
//! exist, which makes rows weakly increase left to right and columns (the
//! NW-SE diagonals of fixed `j`) weakly increase downwards.

// Cells are addressed as `g[i][j]` with 1-based coordinates throughout;
// index-based loops intentionally mirror that notation.
#![allow(clippy::needless_range_loop)]

pub mod bijection;
pub mod checks;
pub mod fixtures;
pub mod gog;
pub mod gogam;
pub mod pattern;
pub mod search;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Rows or entries inconsistent with the declared shape.
    #[error("malformed pattern: {0}")]
    Malformed(String),
    /// Text or JSON input could not be decoded.
    #[error("parse error: {0}")]
    Parse(String),
    /// Shape parameters out of range (`k > n`, `k + l > n + 1`, ...).
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    /// Two-pattern operation applied to differently shaped patterns.
    #[error("shape mismatch: {0} vs {1}")]
    ShapeMismatch(pattern::Shape, pattern::Shape),
    /// Input fails the precondition of the requested operation; the message
    /// names the violated predicate.
    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use pattern::{Cell, Pattern, Shape, ShapeKind};
