use rayon::prelude::*;

use super::bound::degree_bound;
use super::equations::{commutes, CommutationSystem};
use crate::autgroup::{group_of, Automorphism};
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::scalars::Scalar;

#[derive(Clone, Debug)]
pub struct OracleConfig {
    pub torus_values: Vec<Scalar>,
    pub torsion_bound: u32,
    /// Extra degrees of `ℓ` searched beyond the degree bound, so that the
    /// bound itself gets tested.
    pub degree_slack: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            torus_values: vec![Scalar::from_int(2), Scalar::from_int(3)],
            torsion_bound: 12,
            degree_slack: 0,
        }
    }
}

/// One candidate `(e, u)` and the verified members above it.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub e: Scalar,
    pub u: Scalar,
    pub members: Vec<Automorphism>,
}

impl Candidate {
    pub fn is_member(&self) -> bool {
        !self.members.is_empty()
    }
}

/// Candidate points of `G_{c,q}`: roots of unity up to `torsion_bound` along
/// free directions, then the finite part times `torus_values`.
pub fn candidate_points(d: &Derivation, cfg: &OracleConfig) -> Result<Vec<(Scalar, Scalar)>> {
    let group = group_of(d.presentation())?;
    let mut points = group.roots_of_unity_points(cfg.torsion_bound.max(1));
    let torsion_count = points.len();
    for p in group.sample_points(usize::MAX, &cfg.torus_values) {
        if !points[..torsion_count].contains(&p) && !points[torsion_count..].contains(&p) {
            points.push(p);
        }
    }
    Ok(points)
}

/// Brute force: at each candidate, solve the finite system for `ℓ` and keep
/// whatever passes the direct commutation check. Members found are the
/// particular solution and its shifts by one and two times each kernel vector.
pub fn oracle_scan(d: &Derivation, cfg: &OracleConfig) -> Result<Vec<Candidate>> {
    if d.is_lnd().is_some() {
        return Err(Error::IsLocallyNilpotent);
    }
    let pres = d.presentation().clone();
    let cd = d.clear_z();
    let ell_deg = degree_bound(&cd, pres.n())?.ell_degree(pres.n()) + cfg.degree_slack;
    let system: CommutationSystem<Scalar> = CommutationSystem::new(&cd, pres.c());
    let points = candidate_points(d, cfg)?;
    points
        .into_par_iter()
        .map(|(e, u)| {
            let mut members = Vec::new();
            if let Some(fiber) = system.solve(&e, &u, ell_deg)? {
                let mut ells = vec![fiber.particular.clone()];
                for k in &fiber.kernel {
                    for t in [1, 2] {
                        ells.push(fiber.particular.add(&k.scale(&Scalar::from_int(t))));
                    }
                }
                for ell in ells {
                    let sigma = Automorphism::new(pres.clone(), e.clone(), u.clone(), ell)?;
                    if commutes(&sigma, d)? {
                        members.push(sigma);
                    }
                }
            }
            Ok(Candidate { e, u, members })
        })
        .collect()
}

pub fn oracle_enumerate(d: &Derivation, torus_values: &[Scalar], torsion_bound: u32) -> Result<Vec<Automorphism>> {
    let cfg = OracleConfig {
        torus_values: torus_values.to_vec(),
        torsion_bound,
        degree_slack: 0,
    };
    Ok(oracle_scan(d, &cfg)?
        .into_iter()
        .flat_map(|c| c.members)
        .collect())
}
