#![no_std]
//! Multi-logarithmic differential forms, multi-residues and freeness tests for
//! reduced complete intersections, built on an exact standard-basis engine
//! over the rationals, globally or in the localization at the origin.

extern crate alloc;
#[cfg(any(feature = "std", test))]
extern crate std;

pub mod algebra;
pub mod curves;
mod error;
pub mod gb;
pub mod logarithmic;
pub mod resolution;

pub use error::{Error, Result};
