use std::sync::Arc;

use super::*;
use crate::dalgebra::{AlgebraElement, Presentation};
use crate::parse::{parse_bipoly, parse_shape, parse_unipoly};

fn pres(c: &str, q: &str) -> Arc<Presentation> {
    Arc::new(Presentation::new(parse_unipoly(c).unwrap(), parse_bipoly(q).unwrap()).unwrap())
}

fn shape(p: &Arc<Presentation>, s: &str) -> Derivation {
    Derivation::from_shape(p.clone(), &parse_shape(s).unwrap()).unwrap()
}

fn poly(s: &str) -> Poly {
    parse_unipoly(s).unwrap()
}

fn s(v: i64) -> Scalar {
    Scalar::from_int(v)
}

fn example() -> Derivation {
    shape(&pres("x^2", "y^2"), "g=x;a=3;b=x^2")
}

#[test]
fn commutation_checks() {
    let d = example();
    let p = d.presentation().clone();
    assert!(commutes(&Automorphism::identity(p.clone()).unwrap(), &d).unwrap());
    let sigma = Automorphism::new(p.clone(), s(2), s(3), poly("-1")).unwrap();
    assert!(commutes(&sigma, &d).unwrap());
    assert!(!commutes(&Automorphism::phi(p.clone(), s(2), s(3)).unwrap(), &d).unwrap());
}

#[test]
fn degree_bounds() {
    let cd = example().clear_z();
    let b = degree_bound(&cd, 2).unwrap();
    assert_eq!((b.case, b.bound, b.rigid.clone()), (BoundCase::F2Ydeg1, 3, Some(s(3))));
    let manual = |k, f1: &str, f2: &str| ClearedDerivation {
        k,
        f1: parse_bipoly(f1).unwrap(),
        f2: parse_bipoly(f2).unwrap(),
    };
    let b = degree_bound(&manual(0, "y", "x"), 2).unwrap();
    assert_eq!((b.case, b.bound), (BoundCase::F1Nonconstant, 0));
    let b = degree_bound(&manual(1, "0", "x^2*y^2"), 2).unwrap();
    assert_eq!((b.case, b.bound), (BoundCase::F2YdegGe2, 2));
    let b = degree_bound(&manual(0, "x", "x^3+1"), 2).unwrap();
    assert_eq!((b.case, b.bound), (BoundCase::BothUnivariate, 4));
    assert_eq!(degree_bound(&manual(0, "0", "x^2"), 2), Err(Error::IsLocallyNilpotent));
}

#[test]
fn homogeneous_solutions() {
    assert_eq!(solve_homogeneous(&poly("3"), &poly("x"), &poly("x^2")).unwrap(), Some(poly("x")));
    assert_eq!(solve_homogeneous(&poly("1"), &poly("0"), &poly("x^2")).unwrap(), None);
    assert_eq!(solve_homogeneous(&poly("2"), &poly("x"), &poly("x^3")).unwrap(), None);
    assert_eq!(solve_homogeneous(&poly("0"), &poly("0"), &poly("x^2")), Err(Error::BothZero));
    // Not an integer ratio: no cancellation possible.
    assert_eq!(solve_homogeneous(&poly("5/2"), &poly("x"), &poly("x^2")).unwrap(), None);
}

#[test]
fn sections() {
    let (a, g, b, c) = (poly("3"), poly("x"), poly("x^2"), poly("x^2"));
    for (e, u) in [(2, 3), (-1, 5), (3, 1)] {
        let ell = solve_section(&a, &g, &b, &c, &s(e), &s(u), Some(3), 1).unwrap().unwrap();
        assert_eq!(ell, Poly::constant(s(u - e * e)), "({e}, {u})");
    }
    assert_eq!(solve_section(&a, &g, &b, &c, &s(1), &s(1), Some(3), 1).unwrap(), Some(Poly::zero()));
    let zero_b = solve_section(&a, &g, &Poly::zero(), &c, &s(2), &s(7), Some(3), 1).unwrap();
    assert_eq!(zero_b, Some(Poly::zero()));
    let bad = solve_section(&poly("x+1"), &g, &b, &c, &s(2), &s(3), Some(3), 1);
    assert!(matches!(bad, Err(Error::PreconditionViolated(_))));
}

#[test]
fn worked_isotropy() {
    let d = example();
    let desc = isotropy_structure(&d).unwrap();
    assert_eq!(desc.kernel_dim, 1);
    assert_eq!(desc.kernel_generator, Some(poly("x")));
    assert_eq!(desc.m, Some(3));
    assert_eq!(desc.theta.invariants(), (0, 0));
    assert_eq!(desc.dim, 3);
    assert!(!desc.section.is_empty());
    for pt in &desc.section {
        assert_eq!(pt.ell, Poly::constant(pt.u.sub(&pt.e.mul(&pt.e))));
    }
}

#[test]
fn scaling_derivation_isotropy() {
    let p = pres("x^2", "y^2");
    let d = shape(&p, "a=1");
    assert_eq!(d.dz().to_string(), "2*z");
    let desc = isotropy_structure(&d).unwrap();
    assert_eq!((desc.kernel_dim, desc.dim), (0, 2));
    assert!(matches!(isotropy_structure(&Derivation::standard(p)), Err(Error::IsLocallyNilpotent)));
}

#[test]
fn non_shape_isotropy() {
    let p = pres("x^2", "y^2");
    let d = Derivation::standard(p.clone()).scale_by(&AlgebraElement::z());
    let desc = isotropy_structure(&d).unwrap();
    assert_eq!(desc.bound.case, BoundCase::F2YdegGe2);
    assert_eq!((desc.kernel_dim, desc.dim), (0, 1));
    assert!(desc.contains(&s(5), &s(1)));
    assert!(!desc.contains(&s(1), &s(2)));
}

fn check_agreement(d: &Derivation, cfg: &OracleConfig) -> usize {
    let desc = isotropy_structure(d).unwrap();
    let scan = oracle_scan(d, cfg).unwrap();
    let mut members = 0;
    for cand in &scan {
        assert_eq!(cand.is_member(), desc.contains(&cand.e, &cand.u), "({}, {}) for {d}", cand.e, cand.u);
        for sigma in &cand.members {
            assert!(sigma.h().degree().unwrap_or(0) <= desc.bound.bound);
            members += 1;
        }
    }
    members
}

#[test]
fn oracle_agrees_on_worked_cases() {
    let cfg = OracleConfig {
        torus_values: vec![s(2), s(3)],
        torsion_bound: 3,
        degree_slack: 2,
    };
    let d = example();
    assert!(check_agreement(&d, &cfg) > 0);
    let found = oracle_enumerate(&d, &[s(2), s(3)], 1).unwrap();
    let expected = Automorphism::new(d.presentation().clone(), s(2), s(3), poly("-1")).unwrap();
    assert!(found.contains(&expected));
    let p = pres("x^2", "y^2");
    let d0 = shape(&p, "g=x;a=3;b=x^2").scale_by(&AlgebraElement::z());
    check_agreement(&d0, &cfg);
    check_agreement(&Derivation::standard(p.clone()).scale_by(&AlgebraElement::z()), &cfg);
    let q = pres("x^2-1", "y^2+x");
    for sp in crate::derivation::extendable_shapes(&q, 2).iter().take(3) {
        let d = Derivation::from_shape(q.clone(), sp).unwrap();
        if d.is_lnd().is_none() {
            check_agreement(&d, &cfg);
        }
    }
}
