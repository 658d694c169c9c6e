use std::collections::BTreeMap;
use std::fmt;

use crate::fmt_util::{join_factors, power, render_sum};
use crate::poly::{TriPoly, UniPoly};
use crate::scalars::{Ring, Scalar};

pub type Poly = UniPoly<Scalar>;

/// Element of the algebra written in the basis `ȳ^i z̄^j` (`i < d`) over `k[x̄]`,
/// keyed by `(i, j)`.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct AlgebraElement {
    pub(crate) terms: BTreeMap<(usize, usize), Poly>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_x_poly(Poly::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_x_poly(Poly::constant(c))
    }

    pub fn from_x_poly(p: Poly) -> Self {
        Self::term(p, 0, 0)
    }

    /// `p(x̄)·ȳ^i·z̄^j`; the caller guarantees `i < d`.
    pub fn term(p: Poly, i: usize, j: usize) -> Self {
        let mut out = Self::zero();
        out.add_term(p, i, j);
        out
    }

    pub fn x() -> Self {
        Self::from_x_poly(Poly::x())
    }

    pub fn y() -> Self {
        Self::term(Poly::one(), 1, 0)
    }

    pub fn z() -> Self {
        Self::term(Poly::one(), 0, 1)
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize), Poly> {
        &self.terms
    }

    pub fn coeff(&self, i: usize, j: usize) -> Poly {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, p: Poly, i: usize, j: usize) {
        if p.is_zero() {
            return;
        }
        match self.terms.get_mut(&(i, j)) {
            Some(slot) => {
                *slot = slot.add(&p);
                if slot.is_zero() {
                    self.terms.remove(&(i, j));
                }
            }
            None => {
                self.terms.insert((i, j), p);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), p) in &rhs.terms {
            out.add_term(p.clone(), i, j);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        AlgebraElement {
            terms: self.terms.iter().map(|(k, p)| (*k, p.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        for (&(i, j), p) in &self.terms {
            out.add_term(p.scale(c), i, j);
        }
        out
    }

    /// Multiplication by an element of `k[x̄]` keeps the normal form.
    pub fn mul_x_poly(&self, f: &Poly) -> Self {
        let mut out = Self::zero();
        for (&(i, j), p) in &self.terms {
            out.add_term(p.mul(f), i, j);
        }
        out
    }

    /// Coefficientwise exact division by a polynomial in `x̄`.
    pub fn exact_div_x_poly(&self, f: &Poly) -> Option<Self> {
        let mut out = Self::zero();
        for (&(i, j), p) in &self.terms {
            out.add_term(p.exact_div(f)?, i, j);
        }
        Some(out)
    }

    /// The element as a polynomial in `x̄` alone, if it is one.
    pub fn as_x_poly(&self) -> Option<Poly> {
        match self.terms.len() {
            0 => Some(Poly::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn z_degree(&self) -> Option<usize> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn y_degree(&self) -> Option<usize> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn to_tripoly(&self) -> TriPoly<Scalar> {
        let mut out = TriPoly::zero();
        for (&(i, j), p) in &self.terms {
            out.add_term(p.clone(), i, j);
        }
        out
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| std::cmp::Reverse((j, i)));
        let mut terms = Vec::new();
        for (i, j) in keys {
            let p = &self.terms[&(i, j)];
            let basis = join_factors(&[power("y", i), power("z", j)]);
            let nonzero: Vec<(usize, &Scalar)> =
                p.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            if basis.is_empty() {
                for (k, c) in nonzero.into_iter().rev() {
                    terms.push((c.to_string(), power("x", k)));
                }
            } else if nonzero.len() == 1 {
                let (k, c) = nonzero[0];
                terms.push((c.to_string(), join_factors(&[power("x", k), basis])));
            } else {
                terms.push((p.to_string(), basis));
            }
        }
        f.write_str(&render_sum(&terms))
    }
}
