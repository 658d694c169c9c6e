//! The algebra `k[x, y, z]/(c(x)·z − q(x, y))`: normal forms, multiplication,
//! the ξ-degree, and the change of coordinates to reduced form.

mod element;
mod presentation;
mod reduce;

pub use element::{AlgebraElement, Poly};
pub use presentation::Presentation;
pub use reduce::{reduce_to_reduced_form, TriangularMap};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_bipoly, parse_poly, parse_unipoly};

    fn pres(c: &str, q: &str) -> Presentation {
        Presentation::new(parse_unipoly(c).unwrap(), parse_bipoly(q).unwrap()).unwrap()
    }

    #[test]
    fn worked_reduction() {
        let c = parse_unipoly("x^2+2*x").unwrap();
        let q = parse_bipoly("y^2+x^3").unwrap();
        let (p, t) = reduce_to_reduced_form(&c, &q).unwrap();
        assert_eq!((p.c().to_string(), p.q().to_string()), ("x^2-1".into(), "y^2+4*x-4".into()));
        assert_eq!((t.t.to_string(), t.w.to_string(), t.s.to_string()), ("-1".into(), "0".into(), "x-3".into()));
        let lhs = t.apply(&parse_poly("(x^2+2*x)*z-y^2-x^3").unwrap());
        assert_eq!(lhs.to_string(), "x^2*z-z-y^2-4*x+4");
        assert_eq!(lhs, p.defining_polynomial());
    }

    #[test]
    fn reduction_centers_y() {
        let c = parse_unipoly("x^2-1").unwrap();
        let q = parse_bipoly("y^2+2*x*y+5*x^2").unwrap();
        let (p, t) = reduce_to_reduced_form(&c, &q).unwrap();
        assert_eq!(p.c().to_string(), "x^2-1");
        assert_eq!(p.q().to_string(), "y^2+4");
        assert!(p.is_reduced());
        assert_eq!(t.w.to_string(), "-x");
        assert_eq!(t.s.to_string(), "4");
        let lhs = t.apply(&parse_poly("(x^2-1)*z-(y^2+2*x*y+5*x^2)").unwrap());
        assert_eq!(lhs, p.defining_polynomial());
    }

    #[test]
    fn validation_errors() {
        let e = Presentation::new(parse_unipoly("x").unwrap(), parse_bipoly("y^2").unwrap());
        assert!(matches!(e, Err(crate::Error::DegreeTooSmall(_))));
        let e = Presentation::new(parse_unipoly("x^2").unwrap(), parse_bipoly("y").unwrap());
        assert!(matches!(e, Err(crate::Error::DegreeTooSmall(_))));
        let e = Presentation::new(parse_unipoly("x^2").unwrap(), parse_bipoly("x*y^2+1").unwrap());
        assert!(matches!(e, Err(crate::Error::NotQuasiMonic)));
    }

    #[test]
    fn normal_form_and_degree() {
        let p = pres("x^2", "y^2");
        let y = AlgebraElement::y();
        let y2 = p.mul(&y, &y);
        assert_eq!(y2.to_string(), "x^2*z");
        let z = AlgebraElement::z();
        assert_eq!(p.xi_degree(&p.mul(&y, &z)).unwrap(), 3);
        assert!(p.xi_degree(&AlgebraElement::zero()).is_err());
        let q = pres("x^2-1", "2*y^3+x*y+1");
        let y3 = p_pow(&q, 3);
        assert_eq!(y3.to_string(), "(1/2*x^2-1/2)*z-1/2*x*y-1/2");
    }

    fn p_pow(p: &Presentation, k: u32) -> AlgebraElement {
        p.pow(&AlgebraElement::y(), k)
    }

    #[test]
    fn inverse_map_round_trips() {
        let c = parse_unipoly("x^3+3*x^2+2").unwrap();
        let q = parse_bipoly("y^3+x*y^2+x^4*y+7").unwrap();
        let (_, t) = reduce_to_reduced_form(&c, &q).unwrap();
        let ti = t.inverse();
        for s in ["x", "y", "z", "x*y*z+y^2"] {
            let v = parse_poly(s).unwrap();
            assert_eq!(t.apply(&ti.apply(&v)), v, "{s}");
            assert_eq!(ti.apply(&t.apply(&v)), v, "{s}");
        }
    }
}
