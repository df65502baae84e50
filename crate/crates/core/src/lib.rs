//! Exact computations around iterated Nash blowups: Gröbner bases over the
//! rationals, singular loci and differential frames of affine charts, Nash
//! towers and their fractional-ideal ladders, and formal arcs lifted through
//! the tower.

pub mod algebra;
pub mod arcs;
pub mod error;
pub mod geometry;
pub mod groebner;
pub mod nash;
pub mod text;

pub use error::{Error, Result};
