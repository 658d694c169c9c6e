use std::fmt;

use super::UniPoly;
use crate::error::Result;
use crate::fmt_util::{join_factors, power, render_sum};
use crate::scalars::Ring;

/// Polynomial in `x, y` stored as coefficients of powers of `y`, each a polynomial in `x`.
#[derive(Clone, PartialEq, Debug)]
pub struct BiPoly<R> {
    ycoeffs: Vec<UniPoly<R>>,
}

impl<R: Ring> Default for BiPoly<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Ring> BiPoly<R> {
    pub fn zero() -> Self {
        BiPoly { ycoeffs: Vec::new() }
    }

    pub fn from_ycoeffs(mut ycoeffs: Vec<UniPoly<R>>) -> Self {
        while ycoeffs.last().is_some_and(|p| p.is_zero()) {
            ycoeffs.pop();
        }
        BiPoly { ycoeffs }
    }

    pub fn from_uni(p: UniPoly<R>) -> Self {
        Self::from_ycoeffs(vec![p])
    }

    pub fn constant(c: R) -> Self {
        Self::from_uni(UniPoly::constant(c))
    }

    pub fn x() -> Self {
        Self::from_uni(UniPoly::x())
    }

    pub fn y() -> Self {
        Self::monomial(R::one(), 0, 1)
    }

    /// `c · x^i · y^j`.
    pub fn monomial(c: R, i: usize, j: usize) -> Self {
        let mut ycoeffs = vec![UniPoly::zero(); j + 1];
        ycoeffs[j] = UniPoly::monomial(c, i);
        Self::from_ycoeffs(ycoeffs)
    }

    /// `p(x) · y^j`.
    pub fn uni_times_y(p: UniPoly<R>, j: usize) -> Self {
        let mut ycoeffs = vec![UniPoly::zero(); j + 1];
        ycoeffs[j] = p;
        Self::from_ycoeffs(ycoeffs)
    }

    pub fn ycoeffs(&self) -> &[UniPoly<R>] {
        &self.ycoeffs
    }

    pub fn ycoeff(&self, j: usize) -> UniPoly<R> {
        self.ycoeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.ycoeffs.is_empty()
    }

    pub fn deg_y(&self) -> Option<usize> {
        self.ycoeffs.len().checked_sub(1)
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.ycoeffs.iter().filter_map(UniPoly::degree).max()
    }

    /// The polynomial as an element of `k[x]`, if `y` does not occur.
    pub fn as_uni(&self) -> Option<UniPoly<R>> {
        match self.ycoeffs.len() {
            0 => Some(UniPoly::zero()),
            1 => Some(self.ycoeffs[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.ycoeffs.len().max(rhs.ycoeffs.len());
        Self::from_ycoeffs((0..n).map(|j| self.ycoeff(j).add(&rhs.ycoeff(j))).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        BiPoly {
            ycoeffs: self.ycoeffs.iter().map(UniPoly::neg).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![UniPoly::zero(); self.ycoeffs.len() + rhs.ycoeffs.len() - 1];
        for (i, a) in self.ycoeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.ycoeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Self::from_ycoeffs(out)
    }

    pub fn mul_uni(&self, p: &UniPoly<R>) -> Self {
        Self::from_ycoeffs(self.ycoeffs.iter().map(|c| c.mul(p)).collect())
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_ycoeffs(self.ycoeffs.iter().map(|p| p.scale(c)).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(R::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative_y(&self) -> Self {
        Self::from_ycoeffs(
            self.ycoeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, p)| p.scale(&R::from_int(j as i64)))
                .collect(),
        )
    }

    pub fn derivative_x(&self) -> Self {
        Self::from_ycoeffs(self.ycoeffs.iter().map(UniPoly::derivative).collect())
    }

    /// `q(e·x, y)`.
    pub fn compose_scale_x(&self, e: &R) -> Self {
        Self::from_ycoeffs(self.ycoeffs.iter().map(|p| p.compose_scale_x(e)).collect())
    }

    /// `q(x + t, y)`.
    pub fn taylor_shift_x(&self, t: &R) -> Self {
        Self::from_ycoeffs(self.ycoeffs.iter().map(|p| p.taylor_shift(t)).collect())
    }

    /// `q(e·x, u·y + h(x))`.
    pub fn compose_affine_y(&self, e: &R, u: &R, h: &UniPoly<R>) -> Self {
        let lin = Self::from_ycoeffs(vec![h.clone(), UniPoly::constant(u.clone())]);
        let mut out = Self::zero();
        let mut lin_pow = Self::constant(R::one());
        for (j, p) in self.ycoeffs.iter().enumerate() {
            if j > 0 {
                lin_pow = lin_pow.mul(&lin);
            }
            if !p.is_zero() {
                out = out.add(&lin_pow.mul_uni(&p.compose_scale_x(e)));
            }
        }
        out
    }

    /// `q(x, y)` with `y` replaced by a polynomial in `x`.
    pub fn eval_y(&self, w: &UniPoly<R>) -> UniPoly<R> {
        self.ycoeffs
            .iter()
            .rev()
            .fold(UniPoly::zero(), |acc, p| acc.mul(w).add(p))
    }

    /// Coefficientwise Euclidean division in `x`.
    pub fn divmod_in_x(&self, c: &UniPoly<R>) -> Result<(Self, Self)> {
        let mut quo = Vec::with_capacity(self.ycoeffs.len());
        let mut rem = Vec::with_capacity(self.ycoeffs.len());
        for p in &self.ycoeffs {
            let (q, r) = p.divmod(c)?;
            quo.push(q);
            rem.push(r);
        }
        Ok((Self::from_ycoeffs(quo), Self::from_ycoeffs(rem)))
    }

    pub fn exact_div_uni(&self, c: &UniPoly<R>) -> Option<Self> {
        let (q, r) = self.divmod_in_x(c).ok()?;
        r.is_zero().then_some(q)
    }

    /// Leading `y`-coefficient is a nonzero constant.
    pub fn is_quasi_monic(&self) -> bool {
        self.ycoeffs.last().is_some_and(|p| p.degree() == Some(0))
    }

    /// Coefficient of `y^{d-1}` vanishes.
    pub fn is_centered_in_y(&self) -> bool {
        match self.deg_y() {
            None | Some(0) => true,
            Some(d) => self.ycoeffs[d - 1].is_zero(),
        }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S + Copy) -> BiPoly<S> {
        BiPoly::from_ycoeffs(self.ycoeffs.iter().map(|p| p.map(f)).collect())
    }
}

impl<R: Ring + fmt::Display> fmt::Display for BiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (j, p) in self.ycoeffs.iter().enumerate().rev() {
            for (i, c) in p.coeffs().iter().enumerate().rev() {
                if !c.is_zero() {
                    terms.push((c.to_string(), join_factors(&[power("x", i), power("y", j)])));
                }
            }
        }
        f.write_str(&render_sum(&terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rational, Rational};

    type B = BiPoly<Rational>;
    type P = UniPoly<Rational>;

    #[test]
    fn display_orders_by_y_then_x() {
        let q = B::y().pow(2).add(&B::x().scale(&rational(4, 1))).sub(&B::constant(rational(4, 1)));
        assert_eq!(q.to_string(), "y^2+4*x-4");
        let r = B::monomial(rational(2, 1), 2, 1).add(&B::monomial(rational(1, 1), 4, 0));
        assert_eq!(r.to_string(), "2*x^2*y+x^4");
    }

    #[test]
    fn affine_substitution() {
        // (y^2 + x)(2x, 3y + x) = 9y^2 + 6xy + x^2 + 2x
        let q = B::y().pow(2).add(&B::x());
        let two = rational(2, 1);
        let s = q.compose_affine_y(&two, &rational(3, 1), &P::x());
        assert_eq!(s.to_string(), "9*y^2+6*x*y+x^2+2*x");
        assert!(q.is_quasi_monic() && q.is_centered_in_y());
        assert_eq!(q.eval_y(&P::x()), P::from_ints(&[0, 1, 1]));
    }
}
