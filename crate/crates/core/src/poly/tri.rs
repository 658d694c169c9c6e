use std::collections::BTreeMap;
use std::fmt;

use super::{BiPoly, UniPoly};
use crate::fmt_util::{join_factors, power, render_sum};
use crate::scalars::Ring;

/// Polynomial in `x, y, z` keyed by `(y-degree, z-degree)`.
#[derive(Clone, PartialEq, Debug)]
pub struct TriPoly<R> {
    terms: BTreeMap<(usize, usize), UniPoly<R>>,
}

impl<R: Ring> Default for TriPoly<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Ring> TriPoly<R> {
    pub fn zero() -> Self {
        TriPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: R) -> Self {
        Self::term(UniPoly::constant(c), 0, 0)
    }

    /// `p(x) · y^i · z^j`.
    pub fn term(p: UniPoly<R>, i: usize, j: usize) -> Self {
        let mut out = Self::zero();
        out.add_term(p, i, j);
        out
    }

    pub fn x() -> Self {
        Self::term(UniPoly::x(), 0, 0)
    }

    pub fn y() -> Self {
        Self::term(UniPoly::one(), 1, 0)
    }

    pub fn z() -> Self {
        Self::term(UniPoly::one(), 0, 1)
    }

    pub fn from_bipoly(b: &BiPoly<R>) -> Self {
        let mut out = Self::zero();
        for (i, p) in b.ycoeffs().iter().enumerate() {
            out.add_term(p.clone(), i, 0);
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize), UniPoly<R>> {
        &self.terms
    }

    pub fn add_term(&mut self, p: UniPoly<R>, i: usize, j: usize) {
        if p.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_default();
        *slot = slot.add(&p);
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn deg_z(&self) -> Option<usize> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn deg_y(&self) -> Option<usize> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.terms.values().filter_map(UniPoly::degree).max()
    }

    /// Total degree, with `x`, `y` and `z` each of weight one.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms
            .iter()
            .filter_map(|(&(i, j), p)| p.degree().map(|dx| dx + i + j))
            .max()
    }

    pub fn to_bipoly(&self) -> Option<BiPoly<R>> {
        if self.deg_z().unwrap_or(0) > 0 {
            return None;
        }
        let n = self.deg_y().map_or(0, |d| d + 1);
        let mut ycoeffs = vec![UniPoly::zero(); n];
        for (&(i, _), p) in &self.terms {
            ycoeffs[i] = p.clone();
        }
        Some(BiPoly::from_ycoeffs(ycoeffs))
    }

    pub fn to_unipoly(&self) -> Option<UniPoly<R>> {
        self.to_bipoly().and_then(|b| b.as_uni())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), p) in &rhs.terms {
            out.add_term(p.clone(), i, j);
        }
        out
    }

    pub fn neg(&self) -> Self {
        TriPoly {
            terms: self.terms.iter().map(|(k, p)| (*k, p.neg())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i1, j1), p1) in &self.terms {
            for (&(i2, j2), p2) in &rhs.terms {
                out.add_term(p1.mul(p2), i1 + i2, j1 + j2);
            }
        }
        out
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero();
        for (&(i, j), p) in &self.terms {
            out.add_term(p.scale(c), i, j);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(R::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Simultaneous substitution `x → x + t`, `y → y_img`, `z → z_img`.
    pub fn substitute(&self, t: &R, y_img: &Self, z_img: &Self) -> Self {
        let max_i = self.deg_y().unwrap_or(0);
        let max_j = self.deg_z().unwrap_or(0);
        let mut ypow = vec![Self::constant(R::one())];
        for k in 0..max_i {
            ypow.push(ypow[k].mul(y_img));
        }
        let mut zpow = vec![Self::constant(R::one())];
        for k in 0..max_j {
            zpow.push(zpow[k].mul(z_img));
        }
        let mut out = Self::zero();
        for (&(i, j), p) in &self.terms {
            let shifted = Self::term(p.taylor_shift(t), 0, 0);
            out = out.add(&shifted.mul(&ypow[i]).mul(&zpow[j]));
        }
        out
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S + Copy) -> TriPoly<S> {
        let mut out = TriPoly::zero();
        for (&(i, j), p) in &self.terms {
            out.add_term(p.map(f), i, j);
        }
        out
    }
}

impl<R: Ring + fmt::Display> fmt::Display for TriPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| std::cmp::Reverse((j, i)));
        let mut terms = Vec::new();
        for (i, j) in keys {
            for (k, c) in self.terms[&(i, j)].coeffs().iter().enumerate().rev() {
                if !c.is_zero() {
                    let mono = join_factors(&[power("x", k), power("y", i), power("z", j)]);
                    terms.push((c.to_string(), mono));
                }
            }
        }
        f.write_str(&render_sum(&terms))
    }
}
