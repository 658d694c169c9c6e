use std::fmt;
use std::sync::Arc;

use super::group::relations_of;
use crate::dalgebra::{AlgebraElement, Poly, Presentation};
use crate::error::{Error, Result};
use crate::scalars::{rational, Ring, Scalar};

/// `σ(x̄) = e·x̄`, `σ(ȳ) = u·ȳ + c(x̄)·ℓ(x̄)` on a reduced presentation.
#[derive(Clone, Debug)]
pub struct Automorphism {
    pres: Arc<Presentation>,
    e: Scalar,
    u: Scalar,
    ell: Poly,
}

/// Images of the three generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Images {
    pub x: AlgebraElement,
    pub y: AlgebraElement,
    pub z: AlgebraElement,
}

pub(crate) fn satisfies_relations(p: &Presentation, e: &Scalar, u: &Scalar) -> bool {
    relations_of(p).iter().all(|&(a, b)| match (e.powi(a), u.powi(b)) {
        (Some(x), Some(y)) => x.mul(&y).is_one(),
        _ => false,
    })
}

impl Automorphism {
    pub fn new(pres: Arc<Presentation>, e: Scalar, u: Scalar, ell: Poly) -> Result<Self> {
        if !pres.is_reduced() {
            return Err(Error::NotReducedForm);
        }
        if e.is_zero() || u.is_zero() || !satisfies_relations(&pres, &e, &u) {
            return Err(Error::NotInGroup);
        }
        Ok(Automorphism { pres, e, u, ell })
    }

    pub fn identity(pres: Arc<Presentation>) -> Result<Self> {
        Self::new(pres, Scalar::one(), Scalar::one(), Poly::zero())
    }

    /// `exp(ℓ(x̄)·ξ)`.
    pub fn exp_lnd(pres: Arc<Presentation>, ell: Poly) -> Result<Self> {
        Self::new(pres, Scalar::one(), Scalar::one(), ell)
    }

    /// The diagonal automorphism `(e, u, 0)`.
    pub fn phi(pres: Arc<Presentation>, e: Scalar, u: Scalar) -> Result<Self> {
        Self::new(pres, e, u, Poly::zero())
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn e(&self) -> &Scalar {
        &self.e
    }

    pub fn u(&self) -> &Scalar {
        &self.u
    }

    pub fn ell(&self) -> &Poly {
        &self.ell
    }

    /// `h = c·ℓ`.
    pub fn h(&self) -> Poly {
        self.pres.c().mul(&self.ell)
    }

    pub fn images(&self) -> Result<Images> {
        Ok(Images {
            x: AlgebraElement::x().scale(&self.e),
            y: AlgebraElement::y()
                .scale(&self.u)
                .add(&AlgebraElement::from_x_poly(self.h())),
            z: derive_z_image(self)?,
        })
    }

    pub fn apply_with(&self, images: &Images, a: &AlgebraElement) -> AlgebraElement {
        self.pres.substitute(a, &self.e, &images.y, &images.z)
    }

    pub fn apply(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        Ok(self.apply_with(&self.images()?, a))
    }

    fn same_presentation(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.pres, &other.pres) || *self.pres == *other.pres {
            Ok(())
        } else {
            Err(Error::PresentationMismatch)
        }
    }

    /// `self ∘ other`: `(e₁e₂, u₁u₂, u₂·ℓ₁(x) + e₁^n·ℓ₂(e₁x))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.same_presentation(other)?;
        let n = self.pres.n() as u64;
        let ell = self
            .ell
            .scale(&other.u)
            .add(&other.ell.compose_scale_x(&self.e).scale(&self.e.pow(n)));
        Ok(Automorphism {
            pres: self.pres.clone(),
            e: self.e.mul(&other.e),
            u: self.u.mul(&other.u),
            ell,
        })
    }

    /// `(e⁻¹, u⁻¹, −u⁻¹e⁻ⁿ·ℓ(x/e))`.
    pub fn inverse(&self) -> Self {
        let e_inv = self.e.inv().expect("e is a unit");
        let u_inv = self.u.inv().expect("u is a unit");
        let n = self.pres.n() as u64;
        let factor = u_inv.mul(&e_inv.pow(n)).neg();
        Automorphism {
            pres: self.pres.clone(),
            ell: self.ell.compose_scale_x(&e_inv).scale(&factor),
            e: e_inv,
            u: u_inv,
        }
    }

    pub fn psi(&self) -> (Scalar, Scalar) {
        (self.e.clone(), self.u.clone())
    }

    /// `(ℓ', (e, u))` with `self = exp(ℓ'ξ) ∘ φ(e, u)`, so `ℓ' = ℓ/u`.
    pub fn factor(&self) -> (Poly, (Scalar, Scalar)) {
        let u_inv = self.u.inv().expect("u is a unit");
        (self.ell.scale(&u_inv), self.psi())
    }

    /// `deg ℓ`, with 0 for `ℓ = 0`.
    pub fn filtration_index(&self) -> usize {
        self.ell.degree().unwrap_or(0)
    }

    /// For `ψ(σ) = (1, 1)`, sums the logarithm series of `σ − id` on the
    /// generators and returns `ℓ` when the result is `ℓ(x̄)·ξ`.
    pub fn recognize_exponential(&self) -> Result<Option<Poly>> {
        if !self.e.is_one() || !self.u.is_one() {
            return Ok(None);
        }
        let images = self.images()?;
        let p = &self.pres;
        let log_on = |v: &AlgebraElement| -> Result<Option<AlgebraElement>> {
            // η = σ − id strictly lowers the ξ-degree, so the series stops
            // after at most deg_ξ(v) + 1 terms.
            let cap = p.xi_degree(v)? + 2;
            let mut acc = AlgebraElement::zero();
            let mut cur = v.clone();
            for k in 1..=cap {
                cur = self.apply_with(&images, &cur).sub(&cur);
                if cur.is_zero() {
                    return Ok(Some(acc));
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                let coef = Scalar::from(rational(sign, k as i64));
                acc = acc.add(&cur.scale(&coef));
            }
            Ok(None)
        };
        let (Some(dx), Some(dy), Some(dz)) = (
            log_on(&AlgebraElement::x())?,
            log_on(&AlgebraElement::y())?,
            log_on(&AlgebraElement::z())?,
        ) else {
            return Ok(None);
        };
        if !dx.is_zero() {
            return Ok(None);
        }
        let Some(ell) = dy.as_x_poly().and_then(|f| f.exact_div(p.c())) else {
            return Ok(None);
        };
        let expected = p.from_bipoly(p.dq_dy()).mul_x_poly(&ell);
        Ok((dz == expected).then_some(ell))
    }
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        self.same_presentation(other).is_ok()
            && self.e == other.e
            && self.u == other.u
            && self.ell == other.ell
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(e={}, u={}, ell={})", self.e, self.u, self.ell)
    }
}

/// `σ(z̄) = e^{−n}(u^d·z̄ + g(x̄, ȳ))` with `c·g = q(ex, uy + h) − u^d·q`.
pub fn derive_z_image(sigma: &Automorphism) -> Result<AlgebraElement> {
    let p = &sigma.pres;
    let (e, u) = (&sigma.e, &sigma.u);
    let ud = u.pow(p.d() as u64);
    let f = p
        .q()
        .compose_affine_y(e, u, &sigma.h())
        .sub(&p.q().scale(&ud));
    let g = f.exact_div_uni(p.c()).ok_or(Error::InexactDivision)?;
    let e_n_inv = e.powi(-(p.n() as i64)).ok_or(Error::DivisionByZero)?;
    Ok(AlgebraElement::z()
        .scale(&ud)
        .add(&p.from_bipoly(&g))
        .scale(&e_n_inv))
}
