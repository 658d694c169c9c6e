//! Exact computations on surfaces `c(x)·z = q(x, y)`: their automorphism groups,
//! derivations, and the isotropy group of a derivation.

pub mod autgroup;
pub mod dalgebra;
pub mod derivation;
pub mod error;
mod fmt_util;
pub mod isotropy;
pub mod lattice;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod random;
pub mod scalars;
pub mod selftest;

pub use error::{Error, Result};
