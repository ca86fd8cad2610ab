//! Topological persistence for real-valued 0-cochains, circle-valued maps and
//! almost integral 1-cocycles on finite simplicial complexes.
//!
//! Everything is computed over the two-element field with exact rational
//! arithmetic. The crate is `no_std` and only needs `alloc`.
//!
//! The pipeline, bottom up:
//!
//! * [`complex`] stores simplicial complexes, cell orders and incidence matrices.
//! * [`cochain`] handles 0- and 1-cochains, cocycle checks and the angle
//!   assignment turning an almost integral cocycle into a circle-valued map.
//! * [`derive`] builds the cell complexes of levels, half spaces, bands and
//!   level cuts directly from the incidence structure of the simplicial complex.
//! * [`unroll`] builds finite pieces of the infinite cyclic cover of a
//!   circle-valued map.
//! * [`reduce`] is the column reduction, pair extraction and the relative
//!   reduction used for simultaneous persistence.
//! * [`persist`] assembles standard, level, circle and cocycle persistence.
//! * [`oracle`] holds independent dense-elimination witnesses, the exact
//!   sequence solver and the level-to-sublevel recovery.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cochain;
pub mod complex;
pub mod derive;
mod error;
pub mod oracle;
pub mod persist;
pub mod rational;
pub mod reduce;
pub mod unroll;

pub use error::{Error, Result};
pub use rational::Rational;
