use std::fmt;

use super::element::{AlgebraElement, Poly};
use super::Presentation;
use crate::error::{Error, Result};
use crate::poly::{BiPoly, TriPoly};
use crate::scalars::{Ring, Scalar};

/// Substitution `x → x + t`, `y → y + w(x)`, `z → z + s(x, y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangularMap {
    pub t: Scalar,
    pub w: Poly,
    pub s: BiPoly<Scalar>,
}

impl TriangularMap {
    pub fn identity() -> Self {
        TriangularMap {
            t: Scalar::zero(),
            w: Poly::zero(),
            s: BiPoly::zero(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.t.is_zero() && self.w.is_zero() && self.s.is_zero()
    }

    pub fn apply(&self, p: &TriPoly<Scalar>) -> TriPoly<Scalar> {
        let y_img = TriPoly::y().add(&TriPoly::term(self.w.clone(), 0, 0));
        let z_img = TriPoly::z().add(&TriPoly::from_bipoly(&self.s));
        p.substitute(&self.t, &y_img, &z_img)
    }

    /// `x → x − t`, `y → y − w(x − t)`, `z → z − s(x − t, y − w(x − t))`.
    pub fn inverse(&self) -> Self {
        let t = self.t.neg();
        let w_back = self.w.taylor_shift(&t);
        let lin = BiPoly::from_ycoeffs(vec![w_back.neg(), Poly::one()]);
        let mut s = BiPoly::zero();
        let mut lin_pow = BiPoly::constant(Scalar::one());
        for (j, p) in self.s.ycoeffs().iter().enumerate() {
            if j > 0 {
                lin_pow = lin_pow.mul(&lin);
            }
            s = s.add(&lin_pow.mul_uni(&p.taylor_shift(&t)));
        }
        TriangularMap {
            t,
            w: w_back.neg(),
            s: s.neg(),
        }
    }

    /// Image of an element under the isomorphism `source → target` induced by the map.
    pub fn transport(
        &self,
        target: &Presentation,
        a: &AlgebraElement,
    ) -> AlgebraElement {
        target.normalize(&self.apply(&a.to_tripoly()))
    }
}

impl fmt::Display for TriangularMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x -> x+({}), y -> y+({}), z -> z+({})", self.t, self.w, self.s)
    }
}

/// Moves `(c, q)` to reduced form: center `c`, center `q` in `y`, then reduce
/// `q` modulo `c`. Returns the new presentation and the substitution `T` with
/// `T(c·z − q) = c̃·z − q̃`.
pub fn reduce_to_reduced_form(c: &Poly, q: &BiPoly<Scalar>) -> Result<(Presentation, TriangularMap)> {
    // Validates degrees and quasi-monicity.
    Presentation::new(c.clone(), q.clone())?;
    let n = c.degree().expect("validated");
    let d = q.deg_y().expect("validated");
    let cn = c.coeff(n);
    let t = c
        .coeff(n - 1)
        .neg()
        .div(&cn.mul(&Scalar::from_int(n as i64)))
        .ok_or(Error::DivisionByZero)?;
    let c_red = c.taylor_shift(&t);
    let q1 = q.taylor_shift_x(&t);
    let qd = q1.ycoeff(d).coeff(0);
    let w = q1
        .ycoeff(d - 1)
        .scale(&qd.mul(&Scalar::from_int(d as i64)).inv().ok_or(Error::NotQuasiMonic)?)
        .neg();
    let q2 = q1.compose_affine_y(&Scalar::one(), &Scalar::one(), &w);
    let (s, q_red) = q2.divmod_in_x(&c_red)?;
    let pres = Presentation::new(c_red, q_red)?;
    Ok((pres, TriangularMap { t, w, s }))
}
