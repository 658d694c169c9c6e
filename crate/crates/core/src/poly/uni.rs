use std::fmt;

use crate::error::{Error, Result};
use crate::fmt_util::{power, render_sum};
use crate::scalars::{Field, Ring};

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct UniPoly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Default for UniPoly<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Ring> UniPoly<R> {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn x() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn monomial(c: R, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![R::zero(); k + 1];
        coeffs[k] = c;
        UniPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self::from_coeffs(v.iter().map(|&c| R::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    /// Multiplicity of 0 as a root.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(R::neg).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, v: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc.mul(v).add(c))
    }

    /// `p(e·x)`.
    pub fn compose_scale_x(&self, e: &R) -> Self {
        let mut ek = R::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.mul(&ek));
            ek = ek.mul(e);
        }
        Self::from_coeffs(coeffs)
    }

    /// `p(x + t)`.
    pub fn taylor_shift(&self, t: &R) -> Self {
        let lin = Self::from_coeffs(vec![t.clone(), R::one()]);
        self.compose(&lin)
    }

    /// `p(q(x))` by Horner.
    pub fn compose(&self, q: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(q).add(&Self::constant(c.clone())))
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&R::from_int(i as i64)))
                .collect(),
        )
    }

    /// Euclidean division; the divisor's leading coefficient must be a unit.
    pub fn divmod(&self, d: &Self) -> Result<(Self, Self)> {
        let lc_inv = d
            .lc()
            .ok_or(Error::DivisionByZero)?
            .inv()
            .ok_or(Error::ZeroDivisor)?;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quo = vec![R::zero(); rem.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = rem[k + dd].mul(&lc_inv);
            if c.is_zero() {
                continue;
            }
            for (i, b) in d.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].sub(&c.mul(b));
            }
            quo[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quo), Self::from_coeffs(rem)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divmod(d)?.1)
    }

    /// `self / d` when the division is exact.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divmod(d).ok()?;
        r.is_zero().then_some(q)
    }

    /// Number of times `d` divides `self`, capped at `cap`.
    pub fn multiplicity_of(&self, d: &Self, cap: usize) -> usize {
        if self.is_zero() {
            return cap;
        }
        let mut cur = self.clone();
        let mut k = 0;
        while k < cap {
            match cur.exact_div(d) {
                Some(q) => {
                    cur = q;
                    k += 1;
                }
                None => break,
            }
        }
        k
    }

    /// Coefficient of degree n-1 vanishes, where n is the degree.
    pub fn is_centered(&self) -> bool {
        match self.degree() {
            None | Some(0) => true,
            Some(n) => self.coeffs[n - 1].is_zero(),
        }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> UniPoly<S> {
        UniPoly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// Pads or truncates to exactly `len` coefficients.
    pub fn to_dense(&self, len: usize) -> Vec<R> {
        let mut v = self.coeffs.clone();
        v.resize(len, R::zero());
        v
    }
}

impl<F: Field> UniPoly<F> {
    pub fn monic(&self) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor over a field");
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl<R: Ring + fmt::Display> UniPoly<R> {
    pub fn display_in(&self, var: &str) -> String {
        let terms: Vec<(String, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.to_string(), power(var, i)))
            .collect();
        render_sum(&terms)
    }
}

impl<R: Ring + fmt::Display> fmt::Display for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rational, Rational};

    type P = UniPoly<Rational>;

    #[test]
    fn arithmetic_and_display() {
        let c = P::from_ints(&[-1, 0, 1]);
        assert_eq!(c.to_string(), "x^2-1");
        assert_eq!(c.taylor_shift(&rational(1, 1)).to_string(), "x^2+2*x");
        assert_eq!(c.compose_scale_x(&rational(2, 1)).to_string(), "4*x^2-1");
        assert_eq!(c.derivative().to_string(), "2*x");
        let (q, r) = P::from_ints(&[1, 2, 3, 4]).divmod(&c).unwrap();
        assert_eq!(q.to_string(), "4*x+3");
        assert_eq!(r.to_string(), "6*x+4");
        assert_eq!(P::from_coeffs(vec![rational(1, 2), rational(-1, 3)]).to_string(), "-1/3*x+1/2");
    }

    #[test]
    fn gcd_and_multiplicity() {
        let a = P::from_ints(&[-1, 0, 1]);
        let b = P::from_ints(&[1, 2, 1]);
        assert_eq!(a.gcd(&b), P::from_ints(&[1, 1]));
        let x2 = P::from_ints(&[0, 0, 1]);
        assert_eq!(P::from_ints(&[0, 0, 0, 0, 0, 1]).multiplicity_of(&x2, 5), 2);
        assert_eq!(P::from_ints(&[0, 0, 0, 0, 1]).multiplicity_of(&x2, 1), 1);
    }
}
