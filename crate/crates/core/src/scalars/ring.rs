use std::fmt;

use super::{Cyclotomic, Rational};

/// Commutative ring with identity, the minimal interface polynomials need.
///
/// Method names shadow the `std::ops` traits on purpose; those traits are not
/// in the prelude, so calls resolve here unless a module imports them.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` when `self` is not a unit.
    fn inv(&self) -> Option<Self>;
    fn from_rational(r: &Rational) -> Self;

    fn from_int(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(v.into()))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Integer power; negative exponents need a unit.
    fn powi(&self, k: i64) -> Option<Self> {
        if k >= 0 {
            Some(self.pow(k as u64))
        } else {
            self.inv().map(|i| i.pow(k.unsigned_abs()))
        }
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|i| self.mul(&i))
    }
}

/// A ring in which every nonzero element is a unit.
pub trait Field: Ring {}

/// Fields that contain every cyclotomic number.
pub trait ScalarField: Field + fmt::Display {
    fn from_scalar(s: &Cyclotomic) -> Self;
}
