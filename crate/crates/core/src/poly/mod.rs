//! Dense polynomial types: univariate, bivariate in `x, y`, raw trivariate in
//! `x, y, z`, and Laurent polynomials in the torus coordinates.

mod bi;
mod laurent;
mod tri;
mod uni;

pub use bi::BiPoly;
pub use laurent::LaurentPoly;
pub use tri::TriPoly;
pub use uni::UniPoly;
