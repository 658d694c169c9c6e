//! Coefficient fields: rationals, cyclotomic fields and rational functions in one parameter.

mod cyclotomic;
mod ratfunc;
mod rational;
mod ring;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, Cyclotomic};
pub use ratfunc::RationalFunction;
pub use rational::{rational, Rational};
pub use ring::{Field, Ring, ScalarField};

/// The scalar type used throughout the algebra layer.
pub type Scalar = Cyclotomic;
