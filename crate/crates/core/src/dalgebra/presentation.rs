use std::collections::BTreeMap;
use std::fmt;

use super::element::{AlgebraElement, Poly};
use crate::error::{Error, Result};
use crate::poly::{BiPoly, TriPoly};
use crate::scalars::{Ring, Scalar};

/// The surface `c(x)·z = q(x, y)` together with the data needed for normal forms.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    c: Poly,
    q: BiPoly<Scalar>,
    n: usize,
    d: usize,
    qd_inv: Scalar,
    /// `q` without its top `y`-term.
    rest: BiPoly<Scalar>,
    dq_dy: BiPoly<Scalar>,
    dq_dx: BiPoly<Scalar>,
}

impl Presentation {
    /// Requires `deg c >= 2`, `deg_y q >= 2` and a constant leading `y`-coefficient.
    pub fn new(c: Poly, q: BiPoly<Scalar>) -> Result<Self> {
        let n = c.degree().unwrap_or(0);
        if n < 2 {
            return Err(Error::DegreeTooSmall(format!("deg c = {n}, need at least 2")));
        }
        let d = q.deg_y().unwrap_or(0);
        if d < 2 {
            return Err(Error::DegreeTooSmall(format!("deg_y q = {d}, need at least 2")));
        }
        if !q.is_quasi_monic() {
            return Err(Error::NotQuasiMonic);
        }
        let qd = q.ycoeff(d).coeff(0);
        let qd_inv = qd.inv().ok_or(Error::NotQuasiMonic)?;
        let mut rest_coeffs = q.ycoeffs().to_vec();
        rest_coeffs.pop();
        Ok(Presentation {
            n,
            d,
            qd_inv,
            rest: BiPoly::from_ycoeffs(rest_coeffs),
            dq_dy: q.derivative_y(),
            dq_dx: q.derivative_x(),
            c,
            q,
        })
    }

    pub fn c(&self) -> &Poly {
        &self.c
    }

    pub fn q(&self) -> &BiPoly<Scalar> {
        &self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dq_dy(&self) -> &BiPoly<Scalar> {
        &self.dq_dy
    }

    pub fn dq_dx(&self) -> &BiPoly<Scalar> {
        &self.dq_dx
    }

    /// `c` centered, `q` centered in `y`, and `deg_x q < deg c`.
    pub fn reduced_form_checks(&self) -> (bool, bool, bool) {
        (
            self.c.is_centered(),
            self.q.is_centered_in_y(),
            self.q.deg_x().is_none_or(|dx| dx < self.n),
        )
    }

    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = self.reduced_form_checks();
        a && b && c
    }

    /// Rewrites a polynomial in `x, y, z` into the basis `ȳ^i z̄^j`, `i < d`, using
    /// `ȳ^d = (c·z̄ − rest)/q_d`.
    pub fn normalize(&self, raw: &TriPoly<Scalar>) -> AlgebraElement {
        let mut work: BTreeMap<(usize, usize), Poly> = raw.terms().clone();
        while let Some((&(i, j), _)) = work.last_key_value() {
            if i < self.d {
                break;
            }
            let p = work.remove(&(i, j)).expect("key present").scale(&self.qd_inv);
            let mut push = |key: (usize, usize), v: Poly| {
                if v.is_zero() {
                    return;
                }
                let slot = work.entry(key).or_default();
                *slot = slot.add(&v);
                if slot.is_zero() {
                    work.remove(&key);
                }
            };
            push((i - self.d, j + 1), p.mul(&self.c));
            for (k, r) in self.rest.ycoeffs().iter().enumerate() {
                if !r.is_zero() {
                    push((i - self.d + k, j), p.mul(r).neg());
                }
            }
        }
        AlgebraElement { terms: work }
    }

    pub fn from_bipoly(&self, b: &BiPoly<Scalar>) -> AlgebraElement {
        self.normalize(&TriPoly::from_bipoly(b))
    }

    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut raw = TriPoly::zero();
        for (&(i1, j1), p1) in a.terms() {
            for (&(i2, j2), p2) in b.terms() {
                raw.add_term(p1.mul(p2), i1 + i2, j1 + j2);
            }
        }
        self.normalize(&raw)
    }

    pub fn pow(&self, a: &AlgebraElement, k: u32) -> AlgebraElement {
        let mut acc = AlgebraElement::one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// `max(i + d·j)` over the support.
    pub fn xi_degree(&self, a: &AlgebraElement) -> Result<usize> {
        a.terms()
            .keys()
            .map(|&(i, j)| i + self.d * j)
            .max()
            .ok_or(Error::ZeroElement)
    }

    /// Images `(ξx̄, ξȳ, ξz̄) = (0, c, ∂q/∂y)` of the standard derivation.
    pub fn standard_images(&self) -> [AlgebraElement; 3] {
        [
            AlgebraElement::zero(),
            AlgebraElement::from_x_poly(self.c.clone()),
            self.from_bipoly(&self.dq_dy),
        ]
    }

    /// The defining polynomial `c·z − q`.
    pub fn defining_polynomial(&self) -> TriPoly<Scalar> {
        TriPoly::term(self.c.clone(), 0, 1).sub(&TriPoly::from_bipoly(&self.q))
    }

    /// Applies `x̄ ↦ e·x̄`, `ȳ ↦ y_img`, `z̄ ↦ z_img` to an element.
    pub fn substitute(
        &self,
        a: &AlgebraElement,
        e: &Scalar,
        y_img: &AlgebraElement,
        z_img: &AlgebraElement,
    ) -> AlgebraElement {
        let max_i = a.y_degree().unwrap_or(0);
        let max_j = a.z_degree().unwrap_or(0);
        let mut ypow = vec![AlgebraElement::one()];
        for k in 0..max_i {
            ypow.push(self.mul(&ypow[k], y_img));
        }
        let mut zpow = vec![AlgebraElement::one()];
        for k in 0..max_j {
            zpow.push(self.mul(&zpow[k], z_img));
        }
        let mut out = AlgebraElement::zero();
        for (&(i, j), p) in a.terms() {
            let yz = self.mul(&ypow[i], &zpow[j]);
            out = out.add(&yz.mul_x_poly(&p.compose_scale_x(e)));
        }
        out
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*z = {}", self.c, self.q)
    }
}
