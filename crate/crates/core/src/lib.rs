//! Formal group laws over exact rationals, Tate-valued Frobenius coordinates,
//! and the E_n obstruction series of complex orientations.
//!
//! Every coefficient reported by the library is exact: series carry the region
//! in which their stored terms are known, and operations propagate it.

pub mod cli;
pub mod error;
pub mod fgl;
pub mod frobenius;
pub mod obstruction;
pub mod ring;
pub mod series;

pub use error::{Error, Result};
