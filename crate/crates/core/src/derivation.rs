//! k-derivations of the algebra, stored through their values on `x̄, ȳ, z̄`.

use std::fmt;
use std::sync::Arc;

use crate::autgroup::Automorphism;
use crate::dalgebra::{AlgebraElement, Poly, Presentation, TriangularMap};
use crate::error::{Error, Result};
use crate::linalg;
use crate::parse::ShapeSpec;
use crate::poly::BiPoly;
use crate::scalars::{Ring, Scalar};

#[derive(Clone, Debug)]
pub struct Derivation {
    pres: Arc<Presentation>,
    dx: AlgebraElement,
    dy: AlgebraElement,
    dz: AlgebraElement,
}

/// `c^k·δ(x̄) = f1(x̄, ȳ)` and `c^k·δ(ȳ) = f2(x̄, ȳ)` with `k` as small as possible.
#[derive(Clone, Debug, PartialEq)]
pub struct ClearedDerivation {
    pub k: usize,
    pub f1: BiPoly<Scalar>,
    pub f2: BiPoly<Scalar>,
}

/// `c′·δx·z̄ + c·δz − ∂ₓq·δx − ∂ᵧq·δy`, which must vanish for the triple to
/// descend to the quotient.
pub fn leibniz_residual(
    p: &Presentation,
    dx: &AlgebraElement,
    dy: &AlgebraElement,
    dz: &AlgebraElement,
) -> AlgebraElement {
    let c_prime = p.c().derivative();
    let z_part = p.mul(&dx.mul_x_poly(&c_prime), &AlgebraElement::z());
    let qx = p.mul(&p.from_bipoly(p.dq_dx()), dx);
    let qy = p.mul(&p.from_bipoly(p.dq_dy()), dy);
    z_part.add(&dz.mul_x_poly(p.c())).sub(&qx).sub(&qy)
}

impl Derivation {
    pub fn validate(
        pres: Arc<Presentation>,
        dx: AlgebraElement,
        dy: AlgebraElement,
        dz: AlgebraElement,
    ) -> Result<Self> {
        let residual = leibniz_residual(&pres, &dx, &dy, &dz);
        if !residual.is_zero() {
            return Err(Error::NotADerivation {
                residual: residual.to_string(),
            });
        }
        Ok(Derivation { pres, dx, dy, dz })
    }

    /// `ξ = (0, c, ∂ᵧq)`.
    pub fn standard(pres: Arc<Presentation>) -> Self {
        let [dx, dy, dz] = pres.standard_images();
        Derivation { pres, dx, dy, dz }
    }

    /// `δx̄ = g`, `δȳ = a·ȳ + b`, with `δz̄` solved from the relation.
    pub fn from_shape(pres: Arc<Presentation>, shape: &ShapeSpec) -> Result<Self> {
        let dx = AlgebraElement::from_x_poly(shape.g.clone());
        let dy = AlgebraElement::term(shape.a.clone(), 1, 0)
            .add(&AlgebraElement::from_x_poly(shape.b.clone()));
        let need = leibniz_residual(&pres, &dx, &dy, &AlgebraElement::zero()).neg();
        let dz = need.exact_div_x_poly(pres.c()).ok_or(Error::NotExtendable)?;
        Ok(Derivation { pres, dx, dy, dz })
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn dx(&self) -> &AlgebraElement {
        &self.dx
    }

    pub fn dy(&self) -> &AlgebraElement {
        &self.dy
    }

    pub fn dz(&self) -> &AlgebraElement {
        &self.dz
    }

    pub fn images(&self) -> [&AlgebraElement; 3] {
        [&self.dx, &self.dy, &self.dz]
    }

    pub fn is_zero(&self) -> bool {
        self.dx.is_zero() && self.dy.is_zero() && self.dz.is_zero()
    }

    /// Leibniz rule on the normal form.
    pub fn apply(&self, a: &AlgebraElement) -> AlgebraElement {
        let p = &self.pres;
        let max_i = a.y_degree().unwrap_or(0);
        let max_j = a.z_degree().unwrap_or(0);
        let mut ypow = vec![AlgebraElement::one()];
        for k in 0..max_i {
            ypow.push(p.mul(&ypow[k], &AlgebraElement::y()));
        }
        let mut zpow = vec![AlgebraElement::one()];
        for k in 0..max_j {
            zpow.push(p.mul(&zpow[k], &AlgebraElement::z()));
        }
        let mut out = AlgebraElement::zero();
        for (&(i, j), f) in a.terms() {
            let mono = p.mul(&ypow[i], &zpow[j]);
            out = out.add(&p.mul(&mono, &self.dx).mul_x_poly(&f.derivative()));
            if i > 0 {
                let t = p.mul(&p.mul(&ypow[i - 1], &zpow[j]), &self.dy);
                out = out.add(&t.mul_x_poly(f).scale(&Scalar::from_int(i as i64)));
            }
            if j > 0 {
                let t = p.mul(&p.mul(&ypow[i], &zpow[j - 1]), &self.dz);
                out = out.add(&t.mul_x_poly(f).scale(&Scalar::from_int(j as i64)));
            }
        }
        out
    }

    /// `ℓ` with `self = ℓ(x̄)·ξ`, if the derivation has that form. Every locally
    /// nilpotent derivation does, and these are all locally nilpotent.
    pub fn is_lnd(&self) -> Option<Poly> {
        if !self.dx.is_zero() {
            return None;
        }
        let ell = self.dy.as_x_poly()?.exact_div(self.pres.c())?;
        let expected = self.pres.from_bipoly(self.pres.dq_dy()).mul_x_poly(&ell);
        (self.dz == expected).then_some(ell)
    }

    /// `(g, a, b)` when `δx̄ ∈ k[x̄]` and `δȳ = a·ȳ + b`.
    pub fn shape(&self) -> Option<ShapeSpec> {
        let g = self.dx.as_x_poly()?;
        if self.dy.terms().keys().any(|&k| k != (0, 0) && k != (1, 0)) {
            return None;
        }
        Some(ShapeSpec {
            g,
            a: self.dy.coeff(1, 0),
            b: self.dy.coeff(0, 0),
        })
    }

    /// In `A[1/c] = k[x, 1/c][y]` an element is `N(x, y)/c^K`; `c^k` clears it
    /// exactly when `c^{K−k}` divides every coefficient of `N`.
    pub fn clear_z(&self) -> ClearedDerivation {
        let (n1, k1) = self.over_c_power(&self.dx);
        let (n2, k2) = self.over_c_power(&self.dy);
        let k = minimal_exponent(&n1, k1, self.pres.c()).max(minimal_exponent(&n2, k2, self.pres.c()));
        let clear = |num: &BiPoly<Scalar>, big_k: usize| {
            if big_k >= k {
                num.exact_div_uni(&self.pres.c().pow((big_k - k) as u32))
                    .expect("minimal exponent divides")
            } else {
                num.mul_uni(&self.pres.c().pow((k - big_k) as u32))
            }
        };
        ClearedDerivation {
            k,
            f1: clear(&n1, k1),
            f2: clear(&n2, k2),
        }
    }

    /// `(N, K)` with `a = N/c^K` after substituting `z̄ = q/c`.
    fn over_c_power(&self, a: &AlgebraElement) -> (BiPoly<Scalar>, usize) {
        let p = &self.pres;
        let big_k = a.z_degree().unwrap_or(0);
        let mut num = BiPoly::zero();
        for (&(i, j), f) in a.terms() {
            let t = BiPoly::uni_times_y(f.mul(&p.c().pow((big_k - j) as u32)), i);
            num = num.add(&t.mul(&p.q().pow(j as u32)));
        }
        (num, big_k)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Derivation {
            pres: self.pres.clone(),
            dx: self.dx.scale(s),
            dy: self.dy.scale(s),
            dz: self.dz.scale(s),
        }
    }

    /// `w·δ` for an element `w`.
    pub fn scale_by(&self, w: &AlgebraElement) -> Self {
        let p = &self.pres;
        Derivation {
            pres: p.clone(),
            dx: p.mul(w, &self.dx),
            dy: p.mul(w, &self.dy),
            dz: p.mul(w, &self.dz),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if *self.pres != *other.pres {
            return Err(Error::PresentationMismatch);
        }
        Ok(Derivation {
            pres: self.pres.clone(),
            dx: self.dx.add(&other.dx),
            dy: self.dy.add(&other.dy),
            dz: self.dz.add(&other.dz),
        })
    }

    /// `σ∘δ∘σ⁻¹`.
    pub fn conjugate(&self, sigma: &Automorphism) -> Result<Self> {
        if **sigma.presentation() != *self.pres {
            return Err(Error::PresentationMismatch);
        }
        let inv = sigma.inverse();
        let inv_images = inv.images()?;
        let images = sigma.images()?;
        let on = |v: &AlgebraElement| sigma.apply_with(&images, &self.apply(v));
        Ok(Derivation {
            pres: self.pres.clone(),
            dx: on(&inv_images.x),
            dy: on(&inv_images.y),
            dz: on(&inv_images.z),
        })
    }

    /// Moves the derivation along `T: A_source → A_target`, `δ̃ = T∘δ∘T⁻¹`.
    pub fn transport(&self, t: &TriangularMap, target: Arc<Presentation>) -> Self {
        let back = t.inverse();
        let on = |v: AlgebraElement| t.transport(&target, &self.apply(&back.transport(&self.pres, &v)));
        Derivation {
            dx: on(AlgebraElement::x()),
            dy: on(AlgebraElement::y()),
            dz: on(AlgebraElement::z()),
            pres: target,
        }
    }
}

fn minimal_exponent(num: &BiPoly<Scalar>, big_k: usize, c: &Poly) -> usize {
    let mult = num
        .ycoeffs()
        .iter()
        .map(|f| f.multiplicity_of(c, big_k))
        .min()
        .unwrap_or(big_k);
    big_k - mult
}

impl PartialEq for Derivation {
    fn eq(&self, other: &Self) -> bool {
        *self.pres == *other.pres && self.dx == other.dx && self.dy == other.dy && self.dz == other.dz
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dx={}; dy={}; dz={}", self.dx, self.dy, self.dz)
    }
}

/// Basis of the shapes `(g, a, b)` with all degrees `≤ max_deg` that extend to
/// derivations.
pub fn extendable_shapes(p: &Presentation, max_deg: usize) -> Vec<ShapeSpec> {
    let width = max_deg + 1;
    let ncols = 3 * width;
    let unit = |col: usize| {
        let mono = Poly::monomial(Scalar::one(), col % width);
        let zero = Poly::zero();
        let (g, a, b) = match col / width {
            0 => (mono, zero.clone(), zero),
            1 => (zero.clone(), mono, zero),
            _ => (zero.clone(), zero, mono),
        };
        ShapeSpec { g, a, b }
    };
    // Column `col` lists the remainders mod c of every coefficient of the residual.
    let mut columns: Vec<Vec<((usize, usize, usize), Scalar)>> = Vec::with_capacity(ncols);
    for col in 0..ncols {
        let s = unit(col);
        let dx = AlgebraElement::from_x_poly(s.g);
        let dy = AlgebraElement::term(s.a, 1, 0).add(&AlgebraElement::from_x_poly(s.b));
        let r = leibniz_residual(p, &dx, &dy, &AlgebraElement::zero());
        let mut entries = Vec::new();
        for (&(i, j), f) in r.terms() {
            let rem = f.rem(p.c()).expect("c is nonzero");
            for (m, v) in rem.coeffs().iter().enumerate() {
                entries.push(((i, j, m), v.clone()));
            }
        }
        columns.push(entries);
    }
    let mut keys: Vec<(usize, usize, usize)> = columns.iter().flatten().map(|(k, _)| *k).collect();
    keys.sort_unstable();
    keys.dedup();
    let mut rows = vec![vec![Scalar::zero(); ncols]; keys.len()];
    for (col, entries) in columns.iter().enumerate() {
        for (k, v) in entries {
            let r = keys.binary_search(k).expect("key collected");
            rows[r][col] = v.clone();
        }
    }
    linalg::kernel(rows, ncols)
        .into_iter()
        .map(|v| ShapeSpec {
            g: Poly::from_coeffs(v[..width].to_vec()),
            a: Poly::from_coeffs(v[width..2 * width].to_vec()),
            b: Poly::from_coeffs(v[2 * width..].to_vec()),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_bipoly, parse_poly, parse_shape, parse_unipoly};

    fn pres(c: &str, q: &str) -> Arc<Presentation> {
        Arc::new(Presentation::new(parse_unipoly(c).unwrap(), parse_bipoly(q).unwrap()).unwrap())
    }

    fn el(p: &Presentation, s: &str) -> AlgebraElement {
        p.normalize(&parse_poly(s).unwrap())
    }

    fn shape(p: &Arc<Presentation>, s: &str) -> Result<Derivation> {
        Derivation::from_shape(p.clone(), &parse_shape(s).unwrap())
    }

    #[test]
    fn validation() {
        let p = pres("x^2", "y^2");
        let xi = Derivation::standard(p.clone());
        assert!(Derivation::validate(p.clone(), xi.dx.clone(), xi.dy.clone(), xi.dz.clone()).is_ok());
        let ex = Derivation::validate(p.clone(), el(&p, "x"), el(&p, "3*y+x^2"), el(&p, "4*z+2*y"));
        assert!(ex.is_ok());
        let bad = Derivation::validate(p.clone(), el(&p, "1"), el(&p, "0"), el(&p, "0"));
        match bad {
            Err(Error::NotADerivation { residual }) => assert_eq!(residual, "2*x*z"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn shapes() {
        let p = pres("x^2", "y^2");
        assert_eq!(shape(&p, "g=x;a=3;b=x^2").unwrap().dz.to_string(), "4*z+2*y");
        assert_eq!(shape(&p, "a=1").unwrap().dz.to_string(), "2*z");
        assert_eq!(shape(&p, "b=x^2").unwrap(), Derivation::standard(p.clone()));
        assert!(matches!(shape(&p, "g=1"), Err(Error::NotExtendable)));
        let d = shape(&p, "g=x;a=3;b=x^2").unwrap();
        assert_eq!(d.shape(), Some(parse_shape("g=x;a=3;b=x^2").unwrap()));
        let q = pres("x^3-x", "y^3+x*y+1");
        for s in extendable_shapes(&q, 3) {
            assert!(Derivation::from_shape(q.clone(), &s).is_ok());
        }
    }

    #[test]
    fn lnd_pattern() {
        let p = pres("x^2", "y^2");
        let xi = Derivation::standard(p.clone());
        assert_eq!(xi.is_lnd(), Some(Poly::one()));
        assert_eq!(shape(&p, "g=x;a=3;b=x^2").unwrap().is_lnd(), None);
        assert_eq!(xi.scale_by(&AlgebraElement::z()).is_lnd(), None);
        let lx = xi.scale_by(&el(&p, "x+1"));
        assert_eq!(lx.is_lnd(), Some(parse_unipoly("x+1").unwrap()));
    }

    #[test]
    fn clearing_z() {
        let p = pres("x^2", "y^2");
        let c = shape(&p, "g=x;a=3;b=x^2").unwrap().clear_z();
        assert_eq!((c.k, c.f1.to_string(), c.f2.to_string()), (0, "x".into(), "3*y+x^2".into()));
        let xi = Derivation::standard(p.clone());
        let c = xi.clear_z();
        assert_eq!((c.k, c.f1.to_string(), c.f2.to_string()), (0, "0".into(), "x^2".into()));
        // x̄²z̄ = ȳ² already lies in k[x̄, ȳ].
        let c = xi.scale_by(&AlgebraElement::z()).clear_z();
        assert_eq!((c.k, c.f1.to_string(), c.f2.to_string()), (0, "0".into(), "y^2".into()));
        let c = shape(&p, "g=x;a=3;b=x^2").unwrap().scale_by(&AlgebraElement::z()).clear_z();
        assert_eq!((c.k, c.f1.to_string(), c.f2.to_string()), (1, "x*y^2".into(), "3*y^3+x^2*y^2".into()));
    }

    #[test]
    fn conjugation() {
        let p = pres("x^2", "y^2");
        let d = shape(&p, "g=x;a=3;b=x^2").unwrap();
        let id = Automorphism::identity(p.clone()).unwrap();
        assert_eq!(d.conjugate(&id).unwrap(), d);
        let two = Scalar::from_int(2);
        let three = Scalar::from_int(3);
        let sigma = Automorphism::new(p.clone(), two.clone(), three.clone(), parse_unipoly("x+1").unwrap()).unwrap();
        let xi = Derivation::standard(p.clone());
        let factor = Scalar::from_int(4).div(&three).unwrap();
        assert_eq!(xi.conjugate(&sigma).unwrap(), xi.scale(&factor));
        // u = e², ℓ = 0 lies in the isotropy group of the example derivation.
        let tau = Automorphism::phi(p.clone(), two.clone(), Scalar::from_int(4)).unwrap();
        assert_eq!(d.conjugate(&tau).unwrap(), d);
    }

    #[test]
    fn transport_follows_reduction() {
        let c = parse_unipoly("x^2+2*x").unwrap();
        let q = parse_bipoly("y^2+x^3").unwrap();
        let src = Arc::new(Presentation::new(c.clone(), q.clone()).unwrap());
        let (tgt, t) = crate::dalgebra::reduce_to_reduced_form(&c, &q).unwrap();
        let tgt = Arc::new(tgt);
        let xi = Derivation::standard(src);
        let moved = xi.transport(&t, tgt.clone());
        assert!(Derivation::validate(tgt.clone(), moved.dx.clone(), moved.dy.clone(), moved.dz.clone()).is_ok());
        assert_eq!(moved.is_lnd(), Some(Poly::one()));
    }
}
