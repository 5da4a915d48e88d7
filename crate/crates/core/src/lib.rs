//! Toric Bruhat intervals and their moment polytopes.
//!
//! The crate decides when the open Richardson variety of an interval `[v,w]`
//! in `S_n` is a torus, builds the Marsh-Rietsch wiring graph of a reduced
//! word, reads flag minors off non-intersecting path collections and assembles
//! moment polytopes from summand polytopes with exact rational arithmetic.

pub mod bitset;
pub mod classify;
pub mod families;
pub mod geometry;
pub mod io;
pub mod moment;
pub mod mrgraph;
pub mod perm;
pub mod plabic;
pub mod poly;
pub mod poset;
pub mod positroid;
pub mod subset;

mod error;

pub use error::{Error, Result};
pub use perm::{BruhatInterval, CoverEdge, Permutation, RPolynomial};
pub use subset::Subset;
