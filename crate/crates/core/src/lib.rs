//! Exact difference operators over rational function fields: skew monoid
//! rings, invariants under reflection groups, certification of Galois
//! orders, and Gelfand-Zeitlin weight modules at generic characters.

pub mod arith;
pub mod cert;
pub mod error;
pub mod families;
pub mod gz;
pub mod lattice;
pub mod sample;
pub mod setting;
pub mod skew;
pub mod symmetry;

pub use error::{Error, Result};
