use std::sync::Arc;

use danielewski::autgroup::{group_of, Automorphism};
use danielewski::dalgebra::{reduce_to_reduced_form, AlgebraElement, Poly, Presentation};
use danielewski::derivation::{extendable_shapes, leibniz_residual, Derivation};
use danielewski::isotropy::{commutes, isotropy_structure, oracle_scan, OracleConfig};
use danielewski::lattice::{smith_normal_form, Lattice};
use danielewski::parse::{parse_poly, parse_scalar};
use danielewski::poly::{BiPoly, TriPoly};
use danielewski::random;
use danielewski::scalars::{Cyclotomic, Ring, Scalar};
use danielewski::Error;
use proptest::prelude::*;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn cyclotomic(seed: u64) -> Scalar {
    let mut r = rng(seed);
    let n = [1u32, 3, 4, 5, 6, 8, 12][r.random_range(0..7)];
    let mut acc = Scalar::zero();
    for k in 0..3 {
        acc = acc.add(&Cyclotomic::root_of_unity(n, k).mul(&random::scalar(&mut r, 4)));
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cyclotomic_field_laws(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (a, b, c) = (cyclotomic(a), cyclotomic(b), cyclotomic(c));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), Scalar::zero());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
        prop_assert_eq!(a.minimal(), a.clone());
        prop_assert_eq!(parse_scalar(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn polynomial_division(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random::poly(&mut r, 7, 6, 0.8);
        let mut d = random::poly(&mut r, 3, 6, 0.8);
        if d.is_zero() {
            d = Poly::one();
        }
        let (q, rem) = a.divmod(&d).unwrap();
        prop_assert_eq!(q.mul(&d).add(&rem), a.clone());
        prop_assert!(rem.degree().is_none_or(|r| r < d.degree().unwrap()));
        prop_assert_eq!(a.mul(&d).exact_div(&d), Some(a));
    }

    #[test]
    fn smith_form_is_a_factorization(rows in prop::collection::vec((-9i64..10, -9i64..10), 0..5)) {
        let s = smith_normal_form(&rows);
        let (d1, d2) = s.diag;
        prop_assert!(d1 >= 0 && d2 >= 0);
        prop_assert!(d1 == 0 && d2 == 0 || d1 != 0 && (d2 % d1 == 0));
        // P·M·Q must be diag(d1, d2) padded with zero rows.
        let mq: Vec<[i64; 2]> = rows
            .iter()
            .map(|&(a, b)| {
                [a * s.q[0][0] + b * s.q[1][0], a * s.q[0][1] + b * s.q[1][1]]
            })
            .collect();
        for (i, prow) in s.p.iter().enumerate() {
            let got = [0, 1].map(|j| prow.iter().zip(&mq).map(|(p, m)| p * m[j]).sum::<i64>());
            let want = match i {
                0 => [d1, 0],
                1 => [0, d2],
                _ => [0, 0],
            };
            prop_assert_eq!(got, want);
        }
        let lat = Lattice::from_generators(&rows);
        for &v in &rows {
            prop_assert!(lat.contains(v));
            prop_assert_eq!(lat.reduce(v), (0, 0));
        }
    }

    #[test]
    fn reduction_is_an_isomorphism(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.random_range(2..=4);
        let d = r.random_range(2..=3);
        let (c, q) = random::raw_presentation(&mut r, n, d, 4);
        let (p, t) = reduce_to_reduced_form(&c, &q).unwrap();
        prop_assert!(p.is_reduced());
        let lhs = t.apply(&TriPoly::term(c.clone(), 0, 1).sub(&TriPoly::from_bipoly(&q)));
        prop_assert_eq!(lhs, p.defining_polynomial());
        let back = t.inverse();
        for v in ["x", "y", "z", "x*y^2*z-3"] {
            let v = parse_poly(v).unwrap();
            prop_assert_eq!(back.apply(&t.apply(&v)), v);
        }
        let (p2, t2) = reduce_to_reduced_form(p.c(), p.q()).unwrap();
        prop_assert_eq!(p2, p);
        prop_assert!(t2.is_identity());
    }

    #[test]
    fn composition_law_matches_maps(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random::any_reduced(&mut r, 3, 3, 3);
        let pts = random::group_points(&p);
        let s = random::automorphism(&mut r, &p, &pts, 3, 3);
        let t = random::automorphism(&mut r, &p, &pts, 3, 3);
        let st = s.compose(&t).unwrap();
        let el = random::element(&mut r, &p, 2, 3);
        prop_assert_eq!(st.apply(&el).unwrap(), s.apply(&t.apply(&el).unwrap()).unwrap());
        prop_assert_eq!(s.compose(&s.inverse()).unwrap(), Automorphism::identity(p.clone()).unwrap());
        // Automorphisms preserve the ξ-degree up to the defining relation.
        prop_assert_eq!(p.xi_degree(&s.apply(&AlgebraElement::z()).unwrap()).unwrap(), p.d());
    }

    #[test]
    fn group_points_satisfy_relations(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random::any_reduced(&mut r, 4, 4, 3);
        let g = group_of(&p).unwrap();
        prop_assert!(g.dimension() <= 2);
        for (e, u) in random::group_points(&p) {
            prop_assert!(g.contains(&e, &u));
            prop_assert!(Automorphism::phi(p.clone(), e, u).is_ok());
        }
    }
}

fn shape_derivation(r: &mut ChaCha8Rng, p: &Arc<Presentation>) -> Option<Derivation> {
    let basis = extendable_shapes(p, 2);
    if basis.is_empty() {
        return None;
    }
    let s = &basis[r.random_range(0..basis.len())];
    Some(Derivation::from_shape(p.clone(), s).unwrap().scale(&random::nonzero_scalar(r, 3)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn validate_rejects_perturbations(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random::any_reduced(&mut r, 3, 3, 3);
        let Some(d) = shape_derivation(&mut r, &p) else { return Ok(()) };
        let [dx, dy, dz] = d.images().map(Clone::clone);
        prop_assert!(Derivation::validate(p.clone(), dx.clone(), dy.clone(), dz.clone()).is_ok());
        let bump = random::element(&mut r, &p, 1, 3);
        if !bump.is_zero() {
            let bad = Derivation::validate(p.clone(), dx, dy, dz.add(&bump));
            prop_assert!(matches!(bad, Err(Error::NotADerivation { .. })), "{:?}", bad);
        }
    }

    #[test]
    fn clear_z_is_exact_and_minimal(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random::any_reduced(&mut r, 3, 3, 3);
        let Some(base) = shape_derivation(&mut r, &p) else { return Ok(()) };
        let s = base.shape().unwrap();
        let cd0 = base.clear_z();
        prop_assert_eq!(cd0.k, 0);
        prop_assert_eq!(cd0.f1, BiPoly::from_uni(s.g.clone()));
        prop_assert_eq!(cd0.f2, BiPoly::from_ycoeffs(vec![s.b.clone(), s.a.clone()]));
        let w = random::element(&mut r, &p, 2, 3);
        let d = base.scale_by(&w);
        let cd = d.clear_z();
        let ck = AlgebraElement::from_x_poly(p.c().pow(cd.k as u32));
        prop_assert_eq!(p.from_bipoly(&cd.f1), p.mul(&ck, d.dx()));
        prop_assert_eq!(p.from_bipoly(&cd.f2), p.mul(&ck, d.dy()));
        if cd.k > 0 {
            // With one factor of c fewer, some coefficient is no longer a polynomial.
            let c_less = p.c().pow(cd.k as u32 - 1);
            let pieces = [cd.f1.ycoeffs(), cd.f2.ycoeffs()].concat();
            prop_assert!(pieces.iter().any(|f| f.mul(&c_less).exact_div(&p.c().pow(cd.k as u32)).is_none()));
        }
    }

    #[test]
    fn lnd_is_conjugation_stable(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random::any_reduced(&mut r, 3, 3, 3);
        let pts = random::group_points(&p);
        let ell = random::poly(&mut r, 3, 3, 0.7);
        let d = Derivation::standard(p.clone()).scale_by(&AlgebraElement::from_x_poly(ell.clone()));
        let sigma = random::automorphism(&mut r, &p, &pts, 2, 3);
        let conj = d.conjugate(&sigma).unwrap();
        let (e, u) = sigma.psi();
        let factor = e.pow(p.n() as u64).div(&u).unwrap();
        let want = ell.compose_scale_x(&e).scale(&factor);
        prop_assert_eq!(conj.is_lnd(), Some(want));
        prop_assert!(leibniz_residual(&p, conj.dx(), conj.dy(), conj.dz()).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Non-shape derivations `w·δ`: the structure and the oracle agree and the
    /// section commutes.
    #[test]
    fn general_isotropy_matches_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random::any_reduced(&mut r, 3, 2, 2);
        let Some(base) = shape_derivation(&mut r, &p) else { return Ok(()) };
        let w = [AlgebraElement::y(), AlgebraElement::z(), AlgebraElement::x()][r.random_range(0..3)].clone();
        let d = base.scale_by(&w);
        if d.is_lnd().is_some() {
            return Ok(());
        }
        let desc = match isotropy_structure(&d) {
            Ok(desc) => desc,
            Err(Error::UnsupportedResidual(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(format!("{e} for {d} on {p}"))),
        };
        prop_assert!(desc.dim <= 3);
        for pt in &desc.section {
            let sigma = Automorphism::new(p.clone(), pt.e.clone(), pt.u.clone(), pt.ell.clone()).unwrap();
            prop_assert!(commutes(&sigma, &d).unwrap());
        }
        let cfg = OracleConfig { torus_values: vec![Scalar::from_int(2), Scalar::from_int(-1)], torsion_bound: 4, degree_slack: 1 };
        for cand in oracle_scan(&d, &cfg).unwrap() {
            prop_assert_eq!(cand.is_member(), desc.contains(&cand.e, &cand.u), "({}, {}) for {} on {}", cand.e, cand.u, d, p);
        }
    }

    #[test]
    fn display_parses_back(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random::any_reduced(&mut r, 3, 3, 4);
        let el = random::element(&mut r, &p, 3, 4);
        prop_assert_eq!(p.normalize(&parse_poly(&el.to_string()).unwrap()), el);
        let q = p.q().to_string();
        prop_assert_eq!(&parse_poly(&q).unwrap().to_bipoly().unwrap(), p.q());
    }
}
