//! Isotropy groups `Aut(A, δ)` of non-locally-nilpotent derivations: degree
//! bounds, the linear equations for `h = c·ℓ`, the structure `Ga ⋊ Θ` or `Θ`,
//! and a brute-force oracle to check it against.

mod bound;
mod equations;
mod oracle;
mod theta;

pub use bound::{bound_case, degree_bound, BoundCase, DegreeBound};
pub use equations::{commutes, solve_homogeneous, solve_section, zero_multiplicity, CommutationSystem, Fiber};
pub use oracle::{candidate_points, oracle_enumerate, oracle_scan, Candidate, OracleConfig};

use crate::autgroup::{group_of, Automorphism, DiagonalizableGroup};
use crate::dalgebra::Poly;
use crate::derivation::{ClearedDerivation, Derivation};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::parse::ShapeSpec;
use crate::scalars::{rational, Ring, Scalar};

#[derive(Clone, Debug)]
pub struct IsotropyOptions {
    /// Values placed on each free torus coordinate when sampling the section.
    pub torus_values: Vec<Scalar>,
    pub sample_limit: usize,
    /// Node budget for the lattice search behind `Θ`.
    pub search_budget: usize,
    /// How many torsion cosets of `Θ` get the symbolic check.
    pub certify_limit: usize,
}

impl Default for IsotropyOptions {
    fn default() -> Self {
        IsotropyOptions {
            torus_values: vec![
                Scalar::from_int(2),
                Scalar::from_int(3),
                Scalar::from(rational(1, 2)),
                Scalar::from_int(-1),
            ],
            sample_limit: 8,
            search_budget: 20_000,
            certify_limit: 24,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SectionPoint {
    pub e: Scalar,
    pub u: Scalar,
    pub ell: Poly,
}

#[derive(Clone, Debug)]
pub struct IsotropyDescription {
    derivation: Derivation,
    shape: Option<ShapeSpec>,
    pub cleared: ClearedDerivation,
    pub bound: DegreeBound,
    /// Degree cap used for `ℓ`.
    pub ell_degree: usize,
    pub kernel_dim: usize,
    /// `ℓ₀`, with `h₀ = c·ℓ₀` spanning the solutions of `a·h − g·h′ = 0`.
    pub kernel_generator: Option<Poly>,
    /// Multiplicity of 0 as a root of `h₀`.
    pub m: Option<usize>,
    pub theta: DiagonalizableGroup,
    pub theta_lattice: Lattice,
    /// Laurent conditions that had to be resolved beyond the monomial ones.
    pub residual_conditions: usize,
    /// Symbolic points at which the free directions of `Θ` were re-solved.
    pub certified_points: usize,
    pub warnings: Vec<String>,
    pub section: Vec<SectionPoint>,
    pub dim: usize,
}

impl IsotropyDescription {
    pub fn derivation(&self) -> &Derivation {
        &self.derivation
    }

    /// Relations cutting `Θ` out of the torus, e.g. `e^2*u^(-1)=1`.
    pub fn theta_relations(&self) -> String {
        theta::describe_relations(self.theta.relations())
    }

    pub fn contains(&self, e: &Scalar, u: &Scalar) -> bool {
        self.theta.contains(e, u)
    }

    /// `ℓ_{e,u}` for `(e, u) ∈ Θ`, normalized by `h^{(m)}(0) = 0` when the
    /// kernel is nontrivial.
    pub fn section_ell(&self, e: &Scalar, u: &Scalar) -> Result<Option<Poly>> {
        let c = self.derivation.presentation().c();
        match &self.shape {
            Some(s) => solve_section(&s.a, &s.g, &s.b, c, e, u, self.m, self.ell_degree),
            None => {
                let system: CommutationSystem<Scalar> = CommutationSystem::new(&self.cleared, c);
                Ok(system.solve(e, u, self.ell_degree)?.map(|f| f.particular))
            }
        }
    }

    /// `σ_{e,u}` when `(e, u) ∈ Θ`.
    pub fn member(&self, e: &Scalar, u: &Scalar) -> Result<Option<Automorphism>> {
        if !self.contains(e, u) {
            return Ok(None);
        }
        let ell = self.section_ell(e, u)?.ok_or_else(|| {
            Error::InvariantViolated(format!("no section over ({e}, {u}) although it lies in the image"))
        })?;
        Ok(Some(Automorphism::new(self.derivation.presentation().clone(), e.clone(), u.clone(), ell)?))
    }

    /// `exp(μ·ℓ₀·ξ)` when the kernel is nontrivial.
    pub fn kernel_element(&self, mu: &Scalar) -> Result<Option<Automorphism>> {
        let Some(l0) = &self.kernel_generator else {
            return Ok(None);
        };
        Ok(Some(Automorphism::exp_lnd(
            self.derivation.presentation().clone(),
            l0.scale(mu),
        )?))
    }
}

pub fn isotropy_structure(d: &Derivation) -> Result<IsotropyDescription> {
    isotropy_structure_with(d, &IsotropyOptions::default())
}

pub fn isotropy_structure_with(d: &Derivation, opts: &IsotropyOptions) -> Result<IsotropyDescription> {
    let pres = d.presentation().clone();
    if !pres.is_reduced() {
        return Err(Error::NotReducedForm);
    }
    if d.is_lnd().is_some() {
        return Err(Error::IsLocallyNilpotent);
    }
    let c = pres.c();
    let n = pres.n();
    let cleared = d.clear_z();
    let bound = degree_bound(&cleared, n)?;
    let ell_degree = bound.ell_degree(n);
    let group = group_of(&pres)?;

    let (shape, kernel_generator, conditions) = if bound.case.is_shape() {
        let s = d
            .shape()
            .ok_or_else(|| Error::InvariantViolated("shape case without (g, a, b) form".into()))?;
        let l0 = solve_homogeneous(&s.a, &s.g, c)?;
        let cond = theta::shape_conditions(&group.lattice(), &s, c, ell_degree);
        (Some(s), l0, cond)
    } else {
        (None, None, theta::general_conditions(&group.lattice(), &cleared, c))
    };
    let kernel_dim = usize::from(kernel_generator.is_some());
    let m = kernel_generator.as_ref().map(|l| zero_multiplicity(&c.mul(l)));

    // The kernel of (e, u) is the fiber over (1, 1); both descriptions must agree.
    let system: CommutationSystem<Scalar> = CommutationSystem::new(&cleared, c);
    let at_one = system
        .solve(&Scalar::one(), &Scalar::one(), ell_degree)?
        .ok_or_else(|| Error::InvariantViolated("identity fails to commute".into()))?;
    if at_one.kernel.len() != kernel_dim || !at_one.particular.is_zero() {
        return Err(Error::InvariantViolated(format!(
            "kernel dimension {} over (1, 1), expected {kernel_dim}",
            at_one.kernel.len()
        )));
    }

    let theta_lattice = theta::minimal_lattice(&conditions, opts.search_budget)?;
    let theta = DiagonalizableGroup::from_relations(&theta_lattice.basis());
    let certified_points = theta::certify_generic(&theta, &cleared, c, ell_degree, opts.certify_limit)?;
    let mut warnings = Vec::new();
    if theta.torsion_order() as usize > opts.certify_limit && theta.dimension() > 0 {
        warnings.push(format!(
            "symbolic check covered {} of {} torsion cosets",
            opts.certify_limit,
            theta.torsion_order()
        ));
    }

    let mut desc = IsotropyDescription {
        derivation: d.clone(),
        shape,
        cleared,
        bound,
        ell_degree,
        kernel_dim,
        kernel_generator,
        m,
        residual_conditions: conditions.residual.len(),
        certified_points,
        theta_lattice,
        warnings,
        section: Vec::new(),
        dim: kernel_dim + theta.dimension(),
        theta,
    };

    let mut sigmas = Vec::new();
    for (e, u) in desc.theta.sample_points(opts.sample_limit, &opts.torus_values) {
        let sigma = desc
            .member(&e, &u)?
            .ok_or_else(|| Error::InvariantViolated(format!("sampled point ({e}, {u}) left the image")))?;
        if !commutes(&sigma, d)? {
            return Err(Error::InvariantViolated(format!("section over ({e}, {u}) does not commute")));
        }
        desc.section.push(SectionPoint { e, u, ell: sigma.ell().clone() });
        sigmas.push(sigma);
    }
    for pair in sigmas.windows(2) {
        let product = pair[0].compose(&pair[1])?;
        let direct = desc.member(product.e(), product.u())?;
        if direct.as_ref() != Some(&product) {
            return Err(Error::InvariantViolated(format!(
                "section is not multiplicative at {} and {}",
                pair[0], pair[1]
            )));
        }
    }
    if let Some(k) = desc.kernel_element(&Scalar::one())? {
        if !commutes(&k, d)? {
            return Err(Error::InvariantViolated("kernel generator does not commute".into()));
        }
    }
    if desc.dim > 3 || (desc.kernel_dim == 0 && desc.dim > 2) {
        return Err(Error::InvariantViolated(format!("dimension {} out of range", desc.dim)));
    }
    Ok(desc)
}

#[cfg(test)]
mod tests;
