use std::sync::Arc;

use danielewski::autgroup::{group_of, Automorphism};
use danielewski::dalgebra::{reduce_to_reduced_form, Presentation, TriangularMap};
use danielewski::derivation::Derivation;
use danielewski::isotropy::{commutes, isotropy_structure_with, oracle_scan, IsotropyOptions, OracleConfig};
use danielewski::parse::{parse_bipoly, parse_poly, parse_scalar, parse_scalar_list, parse_shape, parse_unipoly, ShapeSpec};
use danielewski::scalars::{Ring, Scalar};
use danielewski::{selftest, Error};

use crate::report::Report;
use crate::{DerivationInput, Failure, Sampling, Surface, Triple};

type Outcome = Result<Report, Failure>;

/// The reduced presentation, plus the input one when reduction moved it.
struct Setup {
    pres: Arc<Presentation>,
    source: Arc<Presentation>,
    map: TriangularMap,
}

impl Setup {
    fn new(s: &Surface) -> Result<Self, Failure> {
        let c = parse_unipoly(&s.c)?;
        let q = parse_bipoly(&s.q)?;
        let source = Arc::new(Presentation::new(c.clone(), q.clone())?);
        let (pres, map) = reduce_to_reduced_form(&c, &q)?;
        Ok(Setup {
            pres: Arc::new(pres),
            source,
            map,
        })
    }

    /// Inputs given on a non-reduced surface are moved over, and the report says so.
    fn echo(&self, rep: &mut Report) {
        if !self.map.is_identity() {
            rep.push("reduced_from", &self.source)
                .push("reduced", &self.pres)
                .push("map", &self.map);
        }
    }

    fn derivation(&self, input: &DerivationInput) -> Result<Derivation, Failure> {
        let on_source = match (&input.shape, &input.dx, &input.dy, &input.dz) {
            (Some(shape), ..) => Derivation::from_shape(self.source.clone(), &parse_shape(shape)?)?,
            (None, Some(dx), Some(dy), Some(dz)) => {
                let el = |s: &str| -> Result<_, Failure> { Ok(self.source.normalize(&parse_poly(s)?)) };
                Derivation::validate(self.source.clone(), el(dx)?, el(dy)?, el(dz)?)?
            }
            _ => return Err(Failure::Parse("give --shape or all of --dx, --dy, --dz".into())),
        };
        Ok(if self.map.is_identity() {
            on_source
        } else {
            on_source.transport(&self.map, self.pres.clone())
        })
    }

    fn automorphism(&self, t: &Triple) -> Result<Automorphism, Failure> {
        let e = parse_scalar(&t.e)?;
        let u = parse_scalar(&t.u)?;
        let ell = parse_unipoly(&t.ell)?;
        Ok(Automorphism::new(self.pres.clone(), e, u, ell)?)
    }
}

fn show_shape(s: &ShapeSpec) -> String {
    format!("g={}; a={}; b={}", s.g, s.a, s.b)
}

fn pair(e: &Scalar, u: &Scalar) -> String {
    format!("({e}, {u})")
}

fn isotropy_options(s: &Sampling) -> Result<IsotropyOptions, Failure> {
    let torus_values = parse_scalar_list(&s.torus_values)?;
    if torus_values.is_empty() || torus_values.iter().any(Ring::is_zero) {
        return Err(Failure::Parse("torus values must be nonzero and not empty".into()));
    }
    Ok(IsotropyOptions {
        torus_values,
        ..IsotropyOptions::default()
    })
}

pub fn reduce(s: &Surface) -> Outcome {
    let setup = Setup::new(s)?;
    let mut rep = Report::new();
    let checks = |p: &Presentation| {
        let (a, b, c) = p.reduced_form_checks();
        format!("c centered {a}, q centered in y {b}, deg_x q < deg c {c}")
    };
    rep.push("reduced", &setup.pres)
        .push("input", &setup.source)
        .push("input_reduced", setup.map.is_identity())
        .push("input_checks", checks(&setup.source))
        .push("c", setup.pres.c())
        .push("q", setup.pres.q())
        .push("map", &setup.map)
        .push("checks", checks(&setup.pres));
    Ok(rep)
}

pub fn group(s: &Surface, torsion_bound: u32) -> Outcome {
    let setup = Setup::new(s)?;
    let g = group_of(&setup.pres)?;
    let mut rep = Report::new();
    rep.push("group", &g);
    setup.echo(&mut rep);
    let rels: Vec<String> = g.relations().iter().map(|(a, b)| format!("({a},{b})")).collect();
    let (d1, d2) = g.invariants();
    rep.push("relations", rels.join(" "))
        .push("invariants", format!("({d1},{d2})"))
        .push("dimension", g.dimension());
    let points = g.roots_of_unity_points(torsion_bound);
    if g.is_finite() {
        rep.push("points", points.len());
    } else {
        rep.push("points", "infinite")
            .push("listed", format!("{} of root-of-unity order <= {torsion_bound}", points.len()));
    }
    for (e, u) in &points {
        rep.push("point", pair(e, u));
    }
    Ok(rep)
}

pub fn autos(s: &Surface, t: &Triple) -> Outcome {
    let setup = Setup::new(s)?;
    let sigma = setup.automorphism(t)?;
    let images = sigma.images()?;
    let mut rep = Report::new();
    rep.push("automorphism", &sigma);
    setup.echo(&mut rep);
    let (e, u) = sigma.psi();
    rep.push("x", &images.x)
        .push("y", &images.y)
        .push("z", &images.z)
        .push("h", sigma.h())
        .push("psi", pair(&e, &u))
        .push("filtration_index", sigma.filtration_index())
        .push("inverse", sigma.inverse());
    Ok(rep)
}

pub fn factor(s: &Surface, t: &Triple) -> Outcome {
    let setup = Setup::new(s)?;
    let sigma = setup.automorphism(t)?;
    let (ell_prime, (e, u)) = sigma.factor();
    let recomposed = Automorphism::exp_lnd(setup.pres.clone(), ell_prime.clone())?
        .compose(&Automorphism::phi(setup.pres.clone(), e.clone(), u.clone())?)?;
    let mut rep = Report::new();
    rep.push("factor", format!("exp(({ell_prime})*xi) o phi{}", pair(&e, &u)));
    setup.echo(&mut rep);
    rep.push("ell_prime", &ell_prime)
        .push("e", &e)
        .push("u", &u)
        .push("recomposed", recomposed == sigma);
    match sigma.recognize_exponential()? {
        Some(ell) => rep.push("exponential", ell),
        None => rep.push("exponential", "none"),
    };
    Ok(rep)
}

pub fn derivation_check(s: &Surface, input: &DerivationInput) -> Outcome {
    let setup = Setup::new(s)?;
    let d = setup.derivation(input)?;
    let mut rep = Report::new();
    rep.push("derivation", true);
    setup.echo(&mut rep);
    rep.push("dx", d.dx()).push("dy", d.dy()).push("dz", d.dz());
    match d.shape() {
        Some(sh) => rep.push("shape", show_shape(&sh)),
        None => rep.push("shape", "none"),
    };
    rep.push("lnd", d.is_lnd().is_some());
    Ok(rep)
}

pub fn lnd(s: &Surface, input: &DerivationInput) -> Outcome {
    let setup = Setup::new(s)?;
    let d = setup.derivation(input)?;
    let ell = d.is_lnd();
    let mut rep = Report::new();
    rep.push("lnd", ell.is_some());
    setup.echo(&mut rep);
    if let Some(ell) = ell {
        rep.push("ell", ell);
    }
    Ok(rep)
}

pub fn clear_z(s: &Surface, input: &DerivationInput) -> Outcome {
    let setup = Setup::new(s)?;
    let cd = setup.derivation(input)?.clear_z();
    let mut rep = Report::new();
    rep.push("k", cd.k);
    setup.echo(&mut rep);
    rep.push("f1", &cd.f1).push("f2", &cd.f2);
    Ok(rep)
}

pub fn isotropy(s: &Surface, input: &DerivationInput, sampling: &Sampling) -> Outcome {
    let setup = Setup::new(s)?;
    let d = setup.derivation(input)?;
    let desc = isotropy_structure_with(&d, &isotropy_options(sampling)?)?;
    let mut rep = Report::new();
    rep.push("dim", desc.dim);
    setup.echo(&mut rep);
    let structure = match desc.kernel_dim {
        0 => desc.theta.structure(),
        _ => format!("Ga x| ({})", desc.theta),
    };
    let (d1, d2) = desc.theta.invariants();
    rep.push("structure", structure)
        .push("case", desc.bound.case)
        .push("bound", desc.bound.bound)
        .push("ell_degree", desc.ell_degree)
        .push("kernel_dim", desc.kernel_dim)
        .push(
            "kernel_generator",
            desc.kernel_generator.as_ref().map_or("none".to_string(), ToString::to_string),
        )
        .push("m", desc.m.map_or("none".to_string(), |m| m.to_string()))
        .push("theta", &desc.theta)
        .push("theta_relations", desc.theta_relations())
        .push("theta_invariants", format!("({d1},{d2})"))
        .push("residual_conditions", desc.residual_conditions)
        .push("certified_points", desc.certified_points);
    for p in &desc.section {
        rep.push("section", format!("e={}, u={}, ell={}", p.e, p.u, p.ell));
    }
    for w in &desc.warnings {
        rep.push("warning", w);
    }
    Ok(rep)
}

pub fn member(s: &Surface, input: &DerivationInput, e: &str, u: &str) -> Outcome {
    let setup = Setup::new(s)?;
    let d = setup.derivation(input)?;
    let (e, u) = (parse_scalar(e)?, parse_scalar(u)?);
    if !group_of(&setup.pres)?.contains(&e, &u) {
        return Err(Error::NotInGroup.into());
    }
    let desc = isotropy_structure_with(&d, &IsotropyOptions::default())?;
    let mut rep = Report::new();
    match desc.member(&e, &u)? {
        Some(sigma) => {
            rep.push("member", true);
            setup.echo(&mut rep);
            rep.push("automorphism", &sigma).push("commutes", commutes(&sigma, &d)?);
        }
        None => {
            rep.push("member", false);
            setup.echo(&mut rep);
        }
    }
    Ok(rep)
}

pub fn oracle(
    s: &Surface,
    input: &DerivationInput,
    sampling: &Sampling,
    torsion_bound: u32,
    degree_slack: usize,
) -> Outcome {
    let setup = Setup::new(s)?;
    let d = setup.derivation(input)?;
    let opts = isotropy_options(sampling)?;
    let cfg = OracleConfig {
        torus_values: opts.torus_values.clone(),
        torsion_bound,
        degree_slack,
    };
    let candidates = oracle_scan(&d, &cfg)?;
    let desc = isotropy_structure_with(&d, &opts)?;
    let disagreements: Vec<String> = candidates
        .iter()
        .filter(|c| c.is_member() != desc.contains(&c.e, &c.u))
        .map(|c| format!("{} oracle={} structure={}", pair(&c.e, &c.u), c.is_member(), !c.is_member()))
        .collect();
    let members: Vec<&Automorphism> = candidates.iter().flat_map(|c| &c.members).collect();
    let max_h = members.iter().filter_map(|m| m.h().degree()).max();
    let mut rep = Report::new();
    rep.push("agreement", disagreements.is_empty());
    setup.echo(&mut rep);
    rep.push("candidates", candidates.len())
        .push("members", members.len())
        .push("member_points", candidates.iter().filter(|c| c.is_member()).count())
        .push("bound", desc.bound.bound)
        .push("max_h_degree", max_h.map_or("none".to_string(), |m| m.to_string()))
        .push("disagreements", disagreements.len());
    for line in &disagreements {
        rep.push("disagreement", line);
    }
    if disagreements.is_empty() {
        Ok(rep)
    } else {
        Err(Failure::Unsuccessful(rep))
    }
}

pub fn selftest(seed: u64, only: &[u8]) -> Outcome {
    let reports = selftest::run(seed, only);
    let passed = reports.iter().filter(|r| r.passed).count();
    let mut rep = Report::new();
    let verdict = if selftest::all_passed(&reports) { "PASS" } else { "FAIL" };
    rep.push("selftest", format!("{verdict} ({passed}/{})", reports.len()))
        .push("seed", seed);
    for r in &reports {
        rep.push(
            &format!("criterion {}", r.id),
            format!(
                "{} - {} ({}; {:.2}s)",
                if r.passed { "PASS" } else { "FAIL" },
                r.title,
                r.detail,
                r.elapsed.as_secs_f64()
            ),
        );
    }
    if selftest::all_passed(&reports) {
        Ok(rep)
    } else {
        Err(Failure::Unsuccessful(rep))
    }
}
