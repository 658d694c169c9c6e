//! `Aut(A) = SAut(A) ⋊ G_{c,q}` for a reduced presentation: automorphism triples,
//! their composition law, and the diagonal group `G_{c,q}`.

mod automorphism;
mod group;

pub use automorphism::{derive_z_image, Automorphism, Images};
pub use group::{relations_of, DiagonalizableGroup};

use crate::dalgebra::Presentation;
use crate::error::{Error, Result};

/// `G_{c,q}` for a reduced presentation.
pub fn group_of(p: &Presentation) -> Result<DiagonalizableGroup> {
    if !p.is_reduced() {
        return Err(Error::NotReducedForm);
    }
    Ok(DiagonalizableGroup::from_relations(&relations_of(p)))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::dalgebra::{AlgebraElement, Poly};
    use crate::parse::{parse_bipoly, parse_unipoly};
    use crate::scalars::{Cyclotomic, Ring, Scalar};

    fn pres(c: &str, q: &str) -> Arc<Presentation> {
        Arc::new(Presentation::new(parse_unipoly(c).unwrap(), parse_bipoly(q).unwrap()).unwrap())
    }

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    fn poly(t: &str) -> Poly {
        parse_unipoly(t).unwrap()
    }

    #[test]
    fn worked_groups() {
        let g = group_of(&pres("x^2", "y^2")).unwrap();
        assert_eq!((g.invariants(), g.dimension(), g.structure()), ((0, 0), 2, "Gm x Gm".to_string()));
        let g = group_of(&pres("x^2-1", "y^2+x")).unwrap();
        assert_eq!(g.relations(), &[(2, 0), (1, -2)]);
        assert_eq!(g.invariants(), (1, 4));
        assert_eq!(g.structure(), "Z/4");
        let pts = g.sample_points(100, &[s(2)]);
        assert_eq!(pts.len(), 4);
        for (e, u) in &pts {
            assert_eq!(*e, u.mul(u));
            assert!(u.pow(4).is_one());
        }
        let g = group_of(&pres("x^3", "y^2+x")).unwrap();
        assert_eq!((g.invariants(), g.structure()), ((1, 0), "Gm".to_string()));
        let pts = g.sample_points(10, &[s(2)]);
        assert!(pts.contains(&(s(4), s(2))));
        let full = group_of(&pres("x^2", "y^2")).unwrap();
        assert!(full.sample_points(10, &[s(2), s(3)]).contains(&(s(2), s(3))));
        assert_eq!(
            group_of(&Presentation::new(poly("x^2+x"), parse_bipoly("y^2").unwrap()).unwrap()),
            Err(Error::NotReducedForm)
        );
    }

    #[test]
    fn z_images() {
        let p = pres("x^2", "y^2");
        let one = Automorphism::new(p.clone(), s(1), s(1), poly("1")).unwrap();
        assert_eq!(derive_z_image(&one).unwrap().to_string(), "z+2*y+x^2");
        let d = Automorphism::phi(p.clone(), s(2), s(3)).unwrap();
        assert_eq!(derive_z_image(&d).unwrap().to_string(), "9/4*z");
        let id = Automorphism::identity(p.clone()).unwrap();
        assert_eq!(derive_z_image(&id).unwrap(), AlgebraElement::z());
        let bad = Automorphism::phi(pres("x^2-1", "y^2+x"), s(2), s(1));
        assert!(matches!(bad, Err(Error::NotInGroup)));
    }

    #[test]
    fn composition_law_matches_maps() {
        let p = pres("x^2", "y^2");
        let a = Automorphism::new(p.clone(), s(2), s(1), Poly::zero()).unwrap();
        let b = Automorphism::new(p.clone(), s(1), s(1), poly("1")).unwrap();
        let ab = a.compose(&b).unwrap();
        assert_eq!(ab, Automorphism::new(p.clone(), s(2), s(1), poly("4")).unwrap());
        let sigma = Automorphism::new(p.clone(), s(3), s(-2), poly("x^2-x+5")).unwrap();
        let tau = Automorphism::new(p.clone(), Cyclotomic::root_of_unity(3, 1), s(5), poly("2*x")).unwrap();
        let st = sigma.compose(&tau).unwrap();
        for v in [AlgebraElement::x(), AlgebraElement::y(), AlgebraElement::z()] {
            let direct = sigma.apply(&tau.apply(&v).unwrap()).unwrap();
            assert_eq!(st.apply(&v).unwrap(), direct);
        }
        let inv = sigma.inverse();
        assert_eq!(sigma.compose(&inv).unwrap(), Automorphism::identity(p.clone()).unwrap());
        let (ell, (e, u)) = sigma.factor();
        let re = Automorphism::exp_lnd(p.clone(), ell)
            .unwrap()
            .compose(&Automorphism::phi(p.clone(), e, u).unwrap())
            .unwrap();
        assert_eq!(re, sigma);
    }

    #[test]
    fn exponentials() {
        let p = pres("x^2", "y^2");
        for t in ["x", "x^2+1", "0"] {
            let sigma = Automorphism::exp_lnd(p.clone(), poly(t)).unwrap();
            assert_eq!(sigma.recognize_exponential().unwrap(), Some(poly(t)));
        }
        let phi = Automorphism::phi(p.clone(), s(-1), s(1)).unwrap();
        assert_eq!(phi.recognize_exponential().unwrap(), None);
        assert_eq!(Automorphism::exp_lnd(p.clone(), poly("x^3")).unwrap().filtration_index(), 3);
        assert_eq!(Automorphism::identity(p).unwrap().filtration_index(), 0);
    }
}
