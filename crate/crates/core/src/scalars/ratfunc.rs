use std::fmt;

use super::{Cyclotomic, Field, Rational, Ring, ScalarField};
use crate::fmt_util::is_compound;
use crate::poly::UniPoly;

/// Quotient `num/den` in the parameter `t`, with coprime parts and monic `den`.
#[derive(Clone, PartialEq, Debug)]
pub struct RationalFunction<F> {
    num: UniPoly<F>,
    den: UniPoly<F>,
}

impl<F: Field> RationalFunction<F> {
    /// `None` when `den` is zero.
    pub fn new(num: UniPoly<F>, den: UniPoly<F>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::from_poly(UniPoly::zero()));
        }
        let g = num.gcd(&den);
        let num = num.divmod(&g).ok()?.0;
        let den = den.divmod(&g).ok()?.0;
        let lc = den.lc()?.inv()?;
        Some(RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn from_poly(p: UniPoly<F>) -> Self {
        RationalFunction {
            num: p,
            den: UniPoly::one(),
        }
    }

    /// The parameter `t` itself.
    pub fn t() -> Self {
        Self::from_poly(UniPoly::x())
    }

    pub fn num(&self) -> &UniPoly<F> {
        &self.num
    }

    pub fn den(&self) -> &UniPoly<F> {
        &self.den
    }

    /// Value at `t = v`; `None` at a pole.
    pub fn eval(&self, v: &F) -> Option<F> {
        self.num.eval(v).div(&self.den.eval(v))
    }
}

impl<F: Field> Ring for RationalFunction<F> {
    fn zero() -> Self {
        Self::from_poly(UniPoly::zero())
    }
    fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::new(self.num.add(&rhs.num), self.den.clone()).expect("nonzero den");
        }
        Self::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
        .expect("nonzero den")
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        Self::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den)).expect("nonzero den")
    }
    fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Self::new(self.den.clone(), self.num.clone())
    }
    fn from_rational(r: &Rational) -> Self {
        Self::from_poly(UniPoly::constant(F::from_rational(r)))
    }
}

impl<F: Field> Field for RationalFunction<F> {}

impl ScalarField for RationalFunction<Cyclotomic> {
    fn from_scalar(s: &Cyclotomic) -> Self {
        Self::from_poly(UniPoly::constant(s.clone()))
    }
}

impl<F: Field + fmt::Display> fmt::Display for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num.display_in("t");
        if self.den.is_constant() {
            return f.write_str(&num);
        }
        let den = self.den.display_in("t");
        let wrap = |s: String| if is_compound(&s) || s.contains('*') { format!("({s})") } else { s };
        write!(f, "{}/{}", wrap(num), wrap(den))
    }
}
