//! The image `Θ ⊆ G_{c,q}` of the isotropy group under `σ ↦ (e, u)`.
//!
//! Every condition on `(e, u)` is a Laurent polynomial in the characters
//! `e^a·u^b`. On the subgroup cut out by a lattice `Λ`, two characters agree
//! exactly when they differ by an element of `Λ`, and distinct characters are
//! linearly independent, so a Laurent polynomial vanishes there iff it reduces
//! to zero modulo `Λ`. `Θ` is a subgroup, so it is cut out by the smallest
//! lattice on which every condition reduces to zero.

use std::collections::{BTreeMap, HashSet};

use super::equations::{operator_matrix, CommutationSystem};
use crate::autgroup::DiagonalizableGroup;
use crate::dalgebra::Poly;
use crate::derivation::ClearedDerivation;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg;
use crate::parse::ShapeSpec;
use crate::poly::{BiPoly, LaurentPoly, UniPoly};
use crate::scalars::{Cyclotomic, RationalFunction, Ring, Scalar};

pub(crate) type Laurent = LaurentPoly<Scalar>;

/// Monomial relations plus the remaining Laurent conditions.
#[derive(Clone, Debug)]
pub(crate) struct Conditions {
    pub base: Lattice,
    pub residual: Vec<Laurent>,
}

fn lift(p: &Poly) -> UniPoly<Laurent> {
    p.map(|c| Laurent::constant(c.clone()))
}

fn lift_bi(p: &BiPoly<Scalar>) -> BiPoly<Laurent> {
    p.map(|c| Laurent::constant(c.clone()))
}

fn e_char() -> Laurent {
    Laurent::character(1, 0)
}

fn u_char() -> Laurent {
    Laurent::character(0, 1)
}

fn push_coeffs(out: &mut Vec<Laurent>, p: &UniPoly<Laurent>) {
    out.extend(p.coeffs().iter().filter(|c| !c.is_zero()).cloned());
}

fn push_bi(out: &mut Vec<Laurent>, p: &BiPoly<Laurent>) {
    for col in p.ycoeffs() {
        push_coeffs(out, col);
    }
}

/// `g(ex) = e·g(x)`, `a(ex) = a(x)`, and solvability of
/// `a·h − g·h′ = u·b − b(ex)` in `h = c·ℓ`, `deg ℓ ≤ ell_deg`.
pub(crate) fn shape_conditions(group: &Lattice, s: &ShapeSpec, c: &Poly, ell_deg: usize) -> Conditions {
    let mut base = group.clone();
    for (i, gi) in s.g.coeffs().iter().enumerate() {
        if !gi.is_zero() {
            base = base.with((i as i64 - 1, 0));
        }
    }
    for (i, ai) in s.a.coeffs().iter().enumerate().skip(1) {
        if !ai.is_zero() {
            base = base.with((i as i64, 0));
        }
    }
    let rows_needed = s.b.degree().map_or(0, |d| d + 1);
    let mat = operator_matrix(&s.a, &s.g, c, ell_deg, rows_needed);
    // Right-hand side row i is b_i·(u − e^i); each character gets its own column.
    let rhs_rows: Vec<Laurent> = (0..mat.len())
        .map(|i| {
            let bi = s.b.coeff(i);
            u_char().sub(&Laurent::character(i as i64, 0)).scale(&bi)
        })
        .collect();
    let mut keys: Vec<(i64, i64)> = rhs_rows.iter().flat_map(|r| r.terms().keys().copied()).collect();
    keys.sort_unstable();
    keys.dedup();
    let rhs: Vec<Vec<Scalar>> = rhs_rows
        .iter()
        .map(|r| {
            keys.iter()
                .map(|k| r.terms().get(k).cloned().unwrap_or_else(Scalar::zero))
                .collect()
        })
        .collect();
    let red = linalg::rref(mat, ell_deg + 1, rhs);
    let residual = red.rhs[red.rank()..]
        .iter()
        .map(|row| {
            row.iter()
                .zip(&keys)
                .fold(Laurent::zero(), |acc, (v, &(a, b))| acc.add(&Laurent::monomial(v.clone(), a, b)))
        })
        .filter(|l| !l.is_zero())
        .collect();
    Conditions { base, residual }
}

/// Outside the shape case `h` is pinned down by the `y^{s−1}` coefficient of
/// the first (or second) condition; the rest must then hold identically.
pub(crate) fn general_conditions(group: &Lattice, cd: &ClearedDerivation, c: &Poly) -> Conditions {
    let n = c.degree().expect("c is nonconstant") as i64;
    let kn = cd.k as i64 * n;
    let f1_poly = cd.f1.deg_y().unwrap_or(0) >= 1;
    let (top_src, s) = if f1_poly {
        (&cd.f1, cd.f1.deg_y().expect("nonzero") as i64)
    } else {
        (&cd.f2, cd.f2.deg_y().expect("nonzero") as i64)
    };
    let top = top_src.ycoeff(s as usize);
    let sub = top_src.ycoeff(s as usize - 1);
    let mut base = group.clone();
    for (j, v) in top.coeffs().iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        base = if f1_poly {
            base.with((j as i64 - kn - 1, s))
        } else {
            base.with((j as i64 - kn, s - 1))
        };
    }
    if !f1_poly {
        for (j, v) in cd.f1.ycoeff(0).coeffs().iter().enumerate() {
            if !v.is_zero() {
                base = base.with((j as i64 - kn - 1, 0));
            }
        }
    }
    let e = e_char();
    let u = u_char();
    let sub_l = lift(&sub);
    let sub_scaled = sub_l.compose_scale_x(&e);
    // On the base group top(ex) = e^{kn+1}·u^{−s}·top(x) (first case) or
    // e^{kn}·u^{1−s}·top(x) (second case), which turns the coefficient
    // equation into an honest division by top(x).
    let u_s1 = Laurent::character(0, s - 1);
    let (num, den) = if f1_poly {
        let ek = Laurent::character(kn + 1, 0);
        (
            sub_l.scale(&ek).sub(&sub_scaled.scale(&u_s1)),
            Laurent::monomial(Scalar::from_int(s), kn + 1, -1),
        )
    } else {
        let ek = Laurent::character(kn, 1);
        (
            sub_l.scale(&ek).sub(&sub_scaled.scale(&u_s1)),
            Laurent::monomial(Scalar::from_int(s), kn, 0),
        )
    };
    let (quo, rem) = num.divmod(&lift(&top)).expect("top has a constant leading coefficient");
    let h = quo.scale(&den.inv().expect("monomial"));
    let mut residual = Vec::new();
    push_coeffs(&mut residual, &rem);
    let (_, h_rem) = h.divmod(&lift(c)).expect("c has a constant leading coefficient");
    push_coeffs(&mut residual, &h_rem);
    let f1 = lift_bi(&cd.f1);
    let f2 = lift_bi(&cd.f2);
    let ekn = Laurent::character(kn, 0);
    let p1 = f1.compose_affine_y(&e, &u, &h).sub(&f1.scale(&ekn.mul(&e)));
    let p2 = f2
        .compose_affine_y(&e, &u, &h)
        .sub(&f2.scale(&ekn.mul(&u)))
        .sub(&f1.mul_uni(&h.derivative()).scale(&ekn));
    push_bi(&mut residual, &p1);
    push_bi(&mut residual, &p2);
    Conditions { base, residual }
}

/// Smallest lattice containing `cond.base` modulo which every residual
/// condition vanishes. Each unresolved condition forces its first surviving
/// character to merge with another one, which gives a finite branching.
pub(crate) fn minimal_lattice(cond: &Conditions, budget: usize) -> Result<Lattice> {
    struct Search<'a> {
        residual: &'a [Laurent],
        seen: HashSet<Lattice>,
        terminals: Vec<Lattice>,
        budget: usize,
    }
    impl Search<'_> {
        fn visit(&mut self, lat: Lattice) -> Result<()> {
            if self.terminals.iter().any(|t| t.is_sublattice_of(&lat)) || !self.seen.insert(lat.clone()) {
                return Ok(());
            }
            if self.seen.len() > self.budget {
                return Err(Error::UnsupportedResidual(format!(
                    "lattice search exceeded {} nodes",
                    self.budget
                )));
            }
            let open = self.residual.iter().map(|r| r.reduce(&lat)).find(|r| !r.is_zero());
            let Some(open) = open else {
                self.terminals.retain(|t| !lat.is_sublattice_of(t));
                self.terminals.push(lat);
                return Ok(());
            };
            let keys: Vec<(i64, i64)> = open.terms().keys().copied().collect();
            let first = keys[0];
            for &other in &keys[1..] {
                self.visit(lat.with((first.0 - other.0, first.1 - other.1)))?;
            }
            Ok(())
        }
    }
    let mut search = Search {
        residual: &cond.residual,
        seen: HashSet::new(),
        terminals: Vec::new(),
        budget,
    };
    search.visit(cond.base.clone())?;
    let terminals = search.terminals;
    terminals
        .iter()
        .find(|t| terminals.iter().all(|o| t.is_sublattice_of(o)))
        .cloned()
        .ok_or_else(|| {
            Error::InvariantViolated(format!(
                "no smallest lattice among {} candidates",
                terminals.len()
            ))
        })
}

/// Cosets of `Θ` along each free direction, as `(e, u)` over `Q(ζ)(t)`.
pub(crate) fn generic_points(theta: &DiagonalizableGroup, finite_limit: usize) -> Vec<(RationalFunction<Cyclotomic>, RationalFunction<Cyclotomic>)> {
    type F = RationalFunction<Cyclotomic>;
    let free = theta.free_coordinates();
    let mut dirs: Vec<(i64, i64)> = free.iter().map(|&k| theta.direction(k)).collect();
    if dirs.len() == 2 {
        dirs.push((dirs[0].0 + dirs[1].0, dirs[0].1 + dirs[1].1));
    }
    let t = F::t();
    let mut out = Vec::new();
    for (e0, u0) in theta.roots_of_unity_points(1).into_iter().take(finite_limit) {
        for &(a, b) in &dirs {
            let e = F::from_poly(UniPoly::constant(e0.clone())).mul(&t.powi(a).expect("t is a unit"));
            let u = F::from_poly(UniPoly::constant(u0.clone())).mul(&t.powi(b).expect("t is a unit"));
            out.push((e, u));
        }
    }
    out
}

/// Re-solves the commutation conditions with the free torus coordinate kept
/// symbolic; a failure means a coset of `Θ` was wrongly admitted.
pub(crate) fn certify_generic(
    theta: &DiagonalizableGroup,
    cd: &ClearedDerivation,
    c: &Poly,
    ell_deg: usize,
    finite_limit: usize,
) -> Result<usize> {
    let system: CommutationSystem<RationalFunction<Cyclotomic>> = CommutationSystem::new(cd, c);
    let points = generic_points(theta, finite_limit);
    for (e, u) in &points {
        if system.solve(e, u, ell_deg)?.is_none() {
            return Err(Error::UnsupportedResidual(format!(
                "no generic solution along e = {e}, u = {u}"
            )));
        }
    }
    Ok(points.len())
}

/// Human-readable list of the relations cutting `Θ` out of `G_{c,q}`.
pub(crate) fn describe_relations(rels: &[(i64, i64)]) -> String {
    let parts: BTreeMap<(i64, i64), String> = rels
        .iter()
        .map(|&(a, b)| ((a, b), format!("{}=1", Laurent::character(a, b))))
        .collect();
    if parts.is_empty() {
        "none".to_string()
    } else {
        parts.into_values().collect::<Vec<_>>().join(", ")
    }
}
