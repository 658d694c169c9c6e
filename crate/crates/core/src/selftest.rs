//! The nine acceptance checks, each run from a fixed seed and timed.

use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::autgroup::{group_of, Automorphism, DiagonalizableGroup};
use crate::dalgebra::{reduce_to_reduced_form, AlgebraElement, Poly, Presentation};
use crate::derivation::{extendable_shapes, Derivation};
use crate::isotropy::{isotropy_structure, oracle_scan, OracleConfig};
use crate::parse::{parse_bipoly, parse_shape, parse_unipoly, ShapeSpec};
use crate::poly::TriPoly;
use crate::random;
use crate::scalars::{rational, Cyclotomic, Ring, Scalar};

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {}: {} - {} ({}; {:.2}s)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

pub const TITLES: [&str; 9] = [
    "worked isotropy example",
    "splitting of the automorphism group",
    "exponential round trip",
    "group structure against brute force",
    "conjugation of the standard derivation",
    "isotropy against the oracle",
    "degree bound on oracle members",
    "reduction to reduced form",
    "xi-degree grading",
];

const LIMITS: [Option<u64>; 9] = [Some(5), Some(30), None, None, None, Some(300), None, None, None];

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lift<T>(r: crate::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{}: {e}", e.name()))
}

fn rng_for(seed: u64, id: u8) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (u64::from(id) << 56))
}

fn pres(c: &str, q: &str) -> std::result::Result<Arc<Presentation>, String> {
    let c = lift(parse_unipoly(c))?;
    let q = lift(parse_bipoly(q))?;
    Ok(Arc::new(lift(Presentation::new(c, q))?))
}

fn worked_example() -> std::result::Result<Derivation, String> {
    let p = pres("x^2", "y^2")?;
    lift(Derivation::from_shape(p, &lift(parse_shape("g=x;a=3;b=x^2"))?))
}

fn criterion_1() -> Check {
    let d = worked_example()?;
    let desc = lift(isotropy_structure(&d))?;
    ensure(desc.kernel_dim == 1, || format!("kernel_dim {}", desc.kernel_dim))?;
    let l0 = desc.kernel_generator.clone().unwrap_or_default();
    ensure(l0 == Poly::x(), || format!("l0 = {l0}"))?;
    ensure(desc.m == Some(3), || format!("m = {:?}", desc.m))?;
    ensure(desc.theta.invariants() == (0, 0), || format!("theta {}", desc.theta))?;
    ensure(desc.dim == 3, || format!("dim {}", desc.dim))?;
    ensure(!desc.section.is_empty(), || "no section samples".into())?;
    for pt in &desc.section {
        let want = Poly::constant(pt.u.sub(&pt.e.mul(&pt.e)));
        ensure(pt.ell == want, || format!("section at ({}, {}) is {}", pt.e, pt.u, pt.ell))?;
    }
    Ok(format!(
        "kernel_dim=1 l0=x m=3 theta={} dim=3, {} section points",
        desc.theta,
        desc.section.len()
    ))
}

/// `(e, u)` read off the action on `x̄` and `ȳ`.
fn psi_from_map(sigma: &Automorphism, tau: &Automorphism) -> crate::Result<(Scalar, Scalar)> {
    let x_img = sigma.apply(&tau.apply(&AlgebraElement::x())?)?;
    let y_img = sigma.apply(&tau.apply(&AlgebraElement::y())?)?;
    Ok((x_img.coeff(0, 0).coeff(1), y_img.coeff(1, 0).coeff(0)))
}

fn criterion_2(seed: u64) -> Check {
    let mut rng = rng_for(seed, 2);
    let mut count = 0;
    for _ in 0..10 {
        let p = random::any_reduced(&mut rng, 4, 4, 5);
        let pts = random::group_points(&p);
        for _ in 0..20 {
            let sigma = random::automorphism(&mut rng, &p, &pts, 4, 5);
            let tau = random::automorphism(&mut rng, &p, &pts, 4, 5);
            let (ell, (e, u)) = sigma.factor();
            let phi = lift(Automorphism::phi(p.clone(), e.clone(), u.clone()))?;
            let back = lift(lift(Automorphism::exp_lnd(p.clone(), ell))?.compose(&phi))?;
            ensure(back == sigma, || format!("factor/recompose changed {sigma}"))?;
            ensure(phi.psi() == (e, u), || format!("psi(phi) differs for {sigma}"))?;
            let composed = lift(sigma.compose(&tau))?;
            let (se, su) = sigma.psi();
            let (te, tu) = tau.psi();
            let product = (se.mul(&te), su.mul(&tu));
            ensure(composed.psi() == product, || format!("psi not multiplicative at {sigma}, {tau}"))?;
            ensure(lift(psi_from_map(&sigma, &tau))? == product, || {
                format!("composite map of {sigma}, {tau} has the wrong (e, u)")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} triples on 10 presentations"))
}

fn criterion_3(seed: u64) -> Check {
    let mut rng = rng_for(seed, 3);
    let mut presentations = Vec::new();
    for _ in 0..5 {
        presentations.push(random::any_reduced(&mut rng, 4, 3, 5));
    }
    for i in 0..100 {
        let p = &presentations[i % presentations.len()];
        let len = rng.random_range(0..=6);
        let ell = random::poly(&mut rng, len, 5, 0.7);
        let sigma = lift(Automorphism::exp_lnd(p.clone(), ell.clone()))?;
        let got = lift(sigma.recognize_exponential())?;
        ensure(got.as_ref() == Some(&ell), || format!("exp({ell}) gave {got:?} on {p}"))?;
    }
    Ok("100 polynomials of degree <= 5".into())
}

fn satisfies_identities(p: &Presentation, e: &Scalar, u: &Scalar) -> bool {
    let n = p.n() as u64;
    let d = p.d() as u64;
    p.c().compose_scale_x(e) == p.c().scale(&e.pow(n))
        && p.q().compose_affine_y(e, u, &Poly::zero()) == p.q().scale(&u.pow(d))
}

fn contains_same(a: &[(Scalar, Scalar)], b: &[(Scalar, Scalar)]) -> bool {
    let distinct = |v: &[(Scalar, Scalar)]| v.iter().enumerate().all(|(i, x)| !v[..i].contains(x));
    a.len() == b.len() && distinct(a) && distinct(b) && a.iter().all(|x| b.contains(x))
}

/// `G[N]` two ways: every pair of `N`-th roots of unity tested against the
/// identities, and `s_i ∈ μ_{gcd(d_i, N)}` pushed through the parametrization.
fn torsion_agrees(p: &Presentation, g: &DiagonalizableGroup, order: i64) -> bool {
    let nn = order as u32;
    let mut brute = Vec::new();
    for i in 0..order {
        for j in 0..order {
            let e = Cyclotomic::root_of_unity(nn, i);
            let u = Cyclotomic::root_of_unity(nn, j);
            if satisfies_identities(p, &e, &u) {
                brute.push((e, u));
            }
        }
    }
    let (d1, d2) = g.invariants();
    let (g1, g2) = (d1.gcd(&order), d2.gcd(&order));
    let mut predicted = Vec::new();
    for k1 in 0..g1 {
        for k2 in 0..g2 {
            let s1 = Cyclotomic::root_of_unity(g1 as u32, k1);
            let s2 = Cyclotomic::root_of_unity(g2 as u32, k2);
            if let Some(pt) = g.point(&s1, &s2) {
                predicted.push(pt);
            }
        }
    }
    contains_same(&brute, &predicted)
}

fn criterion_4(seed: u64) -> Check {
    let mut rng = rng_for(seed, 4);
    let torus = [2, 3, -1].map(Scalar::from_int).to_vec();
    let torus = [torus, vec![Scalar::from(rational(1, 2))]].concat();
    let (mut sampled, mut torsion_checks) = (0, 0);
    for _ in 0..50 {
        let p = random::any_reduced(&mut rng, 4, 4, 3);
        let g = lift(group_of(&p))?;
        for (e, u) in g.sample_points(64, &torus) {
            ensure(satisfies_identities(&p, &e, &u), || format!("({e}, {u}) not in G for {p}"))?;
            sampled += 1;
        }
        // The full finite group when it is small enough, otherwise its
        // N-torsion for a few N.
        let orders: Vec<i64> = if g.is_finite() {
            vec![g.torsion_exponent()]
        } else {
            vec![2, 3, 4, 6]
        };
        for order in orders.into_iter().filter(|&o| o <= 12) {
            ensure(torsion_agrees(&p, &g, order), || format!("{order}-torsion of {g} mismatched for {p}"))?;
            torsion_checks += 1;
        }
    }
    Ok(format!("{sampled} sampled points, {torsion_checks} torsion enumerations"))
}

fn criterion_5(seed: u64) -> Check {
    let mut rng = rng_for(seed, 5);
    let mut count = 0;
    for _ in 0..10 {
        let p = random::any_reduced(&mut rng, 3, 3, 5);
        let pts = random::group_points(&p);
        let xi = Derivation::standard(p.clone());
        for _ in 0..10 {
            let sigma = random::automorphism(&mut rng, &p, &pts, 3, 5);
            let (e, u) = sigma.psi();
            let factor = e.pow(p.n() as u64).div(&u).expect("u is a unit");
            let conj = lift(xi.conjugate(&sigma))?;
            ensure(conj == xi.scale(&factor), || format!("conjugating by {sigma} gave {conj}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} automorphisms on 10 presentations"))
}

/// Random non-locally-nilpotent shape derivation: a presentation with
/// `n, d ≤ 3` (monomial half the time), then a sparse combination of
/// extendable shapes of degree `≤ 3`.
fn random_shape_derivation(rng: &mut ChaCha8Rng) -> Option<Derivation> {
    if rng.random_range(0..3) == 0 {
        // g = λx, a = λr, b = μx^n on x^n·z = y^d: a Ga kernel whenever r ≥ n.
        let n = rng.random_range(2..=3);
        let d = rng.random_range(2..=3);
        let r = rng.random_range(n - 1..=n + 1);
        let lambda = random::nonzero_scalar(rng, 3);
        let p = pres(&format!("x^{n}"), &format!("y^{d}")).ok()?;
        let shape = ShapeSpec {
            g: Poly::x().scale(&lambda),
            a: Poly::constant(lambda.mul(&Scalar::from_int(r as i64))),
            b: Poly::monomial(random::scalar(rng, 3), n),
        };
        return Derivation::from_shape(p, &shape).ok().filter(|d| d.is_lnd().is_none());
    }
    let p = if rng.random_bool(0.5) {
        let n = rng.random_range(2..=3);
        let d = rng.random_range(2..=3);
        pres(&format!("x^{n}"), &format!("y^{d}")).ok()?
    } else {
        random::any_reduced(rng, 3, 3, 3)
    };
    let basis = extendable_shapes(&p, 3);
    if basis.is_empty() {
        return None;
    }
    let mut acc: Option<Derivation> = None;
    for _ in 0..rng.random_range(1..=2) {
        let s = &basis[rng.random_range(0..basis.len())];
        let d = Derivation::from_shape(p.clone(), s).ok()?.scale(&random::nonzero_scalar(rng, 3));
        acc = Some(match acc {
            None => d,
            Some(a) => a.add(&d).ok()?,
        });
    }
    acc.filter(|d| d.is_lnd().is_none())
}

/// Criteria 6 and 7 share one oracle run.
fn criteria_6_7(seed: u64) -> (Check, Check) {
    let mut rng = rng_for(seed, 6);
    let cfg = OracleConfig {
        torus_values: vec![
            Scalar::from_int(2),
            Scalar::from_int(3),
            Scalar::from(rational(1, 2)),
            Scalar::from_int(-1),
        ],
        torsion_bound: 12,
        degree_slack: 2,
    };
    let mut derivations = vec![];
    if let Ok(d) = worked_example() {
        derivations.push(d);
    }
    let mut attempts = 0;
    while derivations.len() < 24 && attempts < 500 {
        attempts += 1;
        if let Some(d) = random_shape_derivation(&mut rng) {
            derivations.push(d);
        }
    }
    let (mut candidates, mut members, mut kernels) = (0, 0, 0);
    let mut bound_failure = None;
    for d in &derivations {
        let desc = match isotropy_structure(d) {
            Ok(desc) => desc,
            Err(e) => return (Err(format!("{d} on {}: {}", d.presentation(), e.name())), Err("not run".into())),
        };
        if desc.dim > 3 || (desc.kernel_dim == 0 && desc.dim > 2) {
            return (Err(format!("dim {} for {d}", desc.dim)), Err("not run".into()));
        }
        kernels += desc.kernel_dim;
        let scan = match oracle_scan(d, &cfg) {
            Ok(s) => s,
            Err(e) => return (Err(format!("oracle on {d}: {}", e.name())), Err("not run".into())),
        };
        for cand in &scan {
            candidates += 1;
            if cand.is_member() != desc.contains(&cand.e, &cand.u) {
                return (
                    Err(format!(
                        "({}, {}) for {d} on {}: oracle {}, structure {}",
                        cand.e,
                        cand.u,
                        d.presentation(),
                        cand.is_member(),
                        desc.contains(&cand.e, &cand.u)
                    )),
                    Err("not run".into()),
                );
            }
            for sigma in &cand.members {
                members += 1;
                let deg = sigma.h().degree().unwrap_or(0);
                if deg > desc.bound.bound && bound_failure.is_none() {
                    bound_failure = Some(format!("deg h = {deg} > {} for {sigma} and {d}", desc.bound));
                }
            }
        }
    }
    let six = if derivations.len() < 20 {
        Err(format!("only {} derivations generated", derivations.len()))
    } else {
        Ok(format!(
            "{} derivations, {candidates} candidates, {kernels} with a Ga kernel",
            derivations.len()
        ))
    };
    let seven = match bound_failure {
        Some(f) => Err(f),
        None => Ok(format!("{members} oracle members within the bound")),
    };
    (six, seven)
}

fn criterion_8(seed: u64) -> Check {
    let mut rng = rng_for(seed, 8);
    let worked = (lift(parse_unipoly("x^2+2*x"))?, lift(parse_bipoly("y^2+x^3"))?);
    let mut cases = vec![worked];
    while cases.len() < 101 {
        let n = rng.random_range(2..=4);
        let d = rng.random_range(2..=4);
        cases.push(random::raw_presentation(&mut rng, n, d, 5));
    }
    for (i, (c, q)) in cases.iter().enumerate() {
        let (p, t) = lift(reduce_to_reduced_form(c, q))?;
        ensure(p.reduced_form_checks() == (true, true, true), || format!("({c}, {q}) reduced to {p}"))?;
        let lhs = t.apply(&TriPoly::term(c.clone(), 0, 1).sub(&TriPoly::from_bipoly(q)));
        ensure(lhs == p.defining_polynomial(), || format!("T(cz-q) != c~z-q~ for ({c}, {q})"))?;
        if i == 0 {
            let want = (lift(parse_unipoly("x^2-1"))?, lift(parse_bipoly("y^2+4*x-4"))?);
            ensure((p.c().clone(), p.q().clone()) == want, || format!("worked instance gave {p}"))?;
        }
    }
    Ok("worked instance and 100 random pairs".into())
}

fn criterion_9(seed: u64) -> Check {
    let mut rng = rng_for(seed, 9);
    let mut presentations = Vec::new();
    for _ in 0..10 {
        presentations.push(random::any_reduced(&mut rng, 4, 4, 5));
    }
    for p in &presentations {
        for i in 0..p.d() {
            for j in 0..4 {
                let m = AlgebraElement::term(Poly::one(), i, j);
                let deg = lift(p.xi_degree(&m))?;
                ensure(deg == i + p.d() * j, || format!("deg of y^{i} z^{j} is {deg} on {p}"))?;
            }
        }
    }
    for k in 0..200 {
        let p = &presentations[k % presentations.len()];
        let a = random::element(&mut rng, p, 3, 5);
        let b = random::element(&mut rng, p, 3, 5);
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let (da, db) = (lift(p.xi_degree(&a))?, lift(p.xi_degree(&b))?);
        let dab = lift(p.xi_degree(&p.mul(&a, &b)))?;
        ensure(dab == da + db, || format!("deg({a} * {b}) = {dab} != {da} + {db}"))?;
    }
    Ok("monomials and 200 random products".into())
}

fn finish(id: u8, check: Check, elapsed: Duration) -> CriterionReport {
    let limit = LIMITS[id as usize - 1];
    let (mut passed, mut detail) = match check {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if let Some(secs) = limit {
        if elapsed > Duration::from_secs(secs) {
            passed = false;
            detail = format!("{detail}; exceeded {secs}s");
        }
    }
    CriterionReport {
        id,
        title: TITLES[id as usize - 1],
        passed,
        detail,
        elapsed,
    }
}

fn timed(f: impl FnOnce() -> Check) -> (Check, Duration) {
    let start = Instant::now();
    let r = f();
    (r, start.elapsed())
}

/// Runs the criteria with ids in `only` (all when empty), in order.
pub fn run(seed: u64, only: &[u8]) -> Vec<CriterionReport> {
    let wanted = |id: u8| only.is_empty() || only.contains(&id);
    let mut out = Vec::new();
    for id in 1..=9u8 {
        if id == 7 {
            continue;
        }
        if id == 6 {
            if !wanted(6) && !wanted(7) {
                continue;
            }
            let start = Instant::now();
            let (six, seven) = criteria_6_7(seed);
            let elapsed = start.elapsed();
            if wanted(6) {
                out.push(finish(6, six, elapsed));
            }
            if wanted(7) {
                out.push(finish(7, seven, elapsed));
            }
            continue;
        }
        if !wanted(id) {
            continue;
        }
        let (check, elapsed) = timed(|| match id {
            1 => criterion_1(),
            2 => criterion_2(seed),
            3 => criterion_3(seed),
            4 => criterion_4(seed),
            5 => criterion_5(seed),
            8 => criterion_8(seed),
            _ => criterion_9(seed),
        });
        out.push(finish(id, check, elapsed));
    }
    out
}

/// Convenience for callers that only need a verdict.
pub fn all_passed(reports: &[CriterionReport]) -> bool {
    reports.iter().all(|r| r.passed)
}
