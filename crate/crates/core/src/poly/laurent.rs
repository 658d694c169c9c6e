use std::collections::BTreeMap;
use std::fmt;

use crate::fmt_util::{join_factors, render_sum};
use crate::lattice::Lattice;
use crate::scalars::{Rational, Ring};

/// Laurent polynomial in the torus coordinates `e, u`, i.e. a finite linear
/// combination of characters `e^a u^b`.
#[derive(Clone, PartialEq, Debug)]
pub struct LaurentPoly<F> {
    terms: BTreeMap<(i64, i64), F>,
}

impl<F: Ring> LaurentPoly<F> {
    pub fn monomial(c: F, a: i64, b: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        LaurentPoly { terms }
    }

    pub fn character(a: i64, b: i64) -> Self {
        Self::monomial(F::one(), a, b)
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn terms(&self) -> &BTreeMap<(i64, i64), F> {
        &self.terms
    }

    fn add_term(&mut self, key: (i64, i64), c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(slot) => {
                *slot = slot.add(&c);
                if slot.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    /// Merges characters congruent modulo `lat`, keeping canonical representatives.
    pub fn reduce(&self, lat: &Lattice) -> Self {
        let mut out = Self::zero();
        for (&k, c) in &self.terms {
            out.add_term(lat.reduce(k), c.clone());
        }
        out
    }

    pub fn eval(&self, e: &F, u: &F) -> Option<F> {
        let mut acc = F::zero();
        for (&(a, b), c) in &self.terms {
            acc = acc.add(&c.mul(&e.powi(a)?).mul(&u.powi(b)?));
        }
        Some(acc)
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero();
        for (&k, v) in &self.terms {
            out.add_term(k, v.mul(c));
        }
        out
    }
}

impl<F: Ring> Ring for LaurentPoly<F> {
    fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }
    fn one() -> Self {
        Self::constant(F::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, c.clone());
        }
        out
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1.mul(c2));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }
    /// Only monomials with invertible coefficient are units.
    fn inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&(a, b), c) = self.terms.iter().next()?;
        Some(Self::monomial(c.inv()?, -a, -b))
    }
    fn from_rational(r: &Rational) -> Self {
        Self::constant(F::from_rational(r))
    }
}

fn char_text(a: i64, b: i64) -> String {
    let part = |v: &str, k: i64| match k {
        0 => String::new(),
        1 => v.to_string(),
        k if k < 0 => format!("{v}^({k})"),
        _ => format!("{v}^{k}"),
    };
    join_factors(&[part("e", a), part("u", b)])
}

impl<F: Ring + fmt::Display> fmt::Display for LaurentPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, String)> = self
            .terms
            .iter()
            .rev()
            .map(|(&(a, b), c)| (c.to_string(), char_text(a, b)))
            .collect();
        f.write_str(&render_sum(&terms))
    }
}
