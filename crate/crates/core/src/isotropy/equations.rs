use crate::autgroup::Automorphism;
use crate::dalgebra::{AlgebraElement, Poly};
use crate::derivation::{ClearedDerivation, Derivation};
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{BiPoly, UniPoly};
use crate::scalars::{Ring, Scalar, ScalarField};

/// `σ∘δ = δ∘σ` on `x̄, ȳ, z̄`.
pub fn commutes(sigma: &Automorphism, d: &Derivation) -> Result<bool> {
    if **sigma.presentation() != **d.presentation() {
        return Err(Error::PresentationMismatch);
    }
    let images = sigma.images()?;
    let gens = [AlgebraElement::x(), AlgebraElement::y(), AlgebraElement::z()];
    let sigma_gens = [&images.x, &images.y, &images.z];
    for (v, sv) in gens.iter().zip(sigma_gens) {
        if sigma.apply_with(&images, &d.apply(v)) != d.apply(sv) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Coefficients of `a·(c·x^j) − g·(c·x^j)′` for `j = 0..=max_deg`, as columns.
fn operator_columns(a: &Poly, g: &Poly, c: &Poly, max_deg: usize) -> Vec<Poly> {
    (0..=max_deg)
        .map(|j| {
            let h = c.shift(j);
            a.mul(&h).sub(&g.mul(&h.derivative()))
        })
        .collect()
}

pub(crate) fn column_matrix(cols: &[Poly]) -> Vec<Vec<Scalar>> {
    let rows = cols.iter().filter_map(|p| p.degree()).max().map_or(0, |d| d + 1);
    (0..rows)
        .map(|r| cols.iter().map(|p| p.coeff(r)).collect())
        .collect()
}

pub(crate) fn operator_matrix(a: &Poly, g: &Poly, c: &Poly, max_deg: usize, min_rows: usize) -> Vec<Vec<Scalar>> {
    let mut m = column_matrix(&operator_columns(a, g, c, max_deg));
    while m.len() < min_rows {
        m.push(vec![Scalar::zero(); max_deg + 1]);
    }
    m
}

/// `ℓ₀` generating `{ℓ : h = c·ℓ solves a·h − g·h′ = 0}`, made monic.
pub fn solve_homogeneous(a: &Poly, g: &Poly, c: &Poly) -> Result<Option<Poly>> {
    if a.is_zero() && g.is_zero() {
        return Err(Error::BothZero);
    }
    // Leading terms of a·h and g·h′ only cancel when deg g = deg a + 1 and
    // deg h = lc(a)/lc(g).
    let (Some(dg), Some(da)) = (g.degree(), a.degree()) else {
        return Ok(None);
    };
    if dg != da + 1 {
        return Ok(None);
    }
    let ratio = a.lc().expect("nonzero").div(g.lc().expect("nonzero")).expect("nonzero");
    let n = c.degree().expect("c is nonconstant");
    let Some(r) = ratio.to_positive_usize().filter(|&r| r >= n) else {
        return Ok(None);
    };
    let m = operator_matrix(a, g, c, r - n, 0);
    let ker = linalg::kernel(m, r - n + 1);
    match ker.len() {
        0 => Ok(None),
        1 => Ok(Some(Poly::from_coeffs(ker[0].clone()).monic())),
        k => Err(Error::InvariantViolated(format!("homogeneous solution space of dimension {k}"))),
    }
}

/// Multiplicity of 0 as a root of `h`.
pub fn zero_multiplicity(h: &Poly) -> usize {
    h.valuation().unwrap_or(0)
}

/// Solves `a·h − g·h′ = u·b(x) − b(e·x)` for `h = c·ℓ` with `deg ℓ ≤ max_degree`.
/// A one-dimensional kernel is removed by requiring `h^{(m)}(0) = 0`; with
/// `m = None` it is read off the kernel itself.
#[allow(clippy::too_many_arguments)]
pub fn solve_section(
    a: &Poly,
    g: &Poly,
    b: &Poly,
    c: &Poly,
    e: &Scalar,
    u: &Scalar,
    m: Option<usize>,
    max_degree: usize,
) -> Result<Option<Poly>> {
    if g.compose_scale_x(e) != g.scale(e) || a.compose_scale_x(e) != *a {
        return Err(Error::PreconditionViolated(
            "need g(e·x) = e·g(x) and a(e·x) = a(x)".into(),
        ));
    }
    let rhs = b.scale(u).sub(&b.compose_scale_x(e));
    let cols = operator_columns(a, g, c, max_degree);
    let rows = cols
        .iter()
        .filter_map(|p| p.degree())
        .chain(rhs.degree())
        .max()
        .map_or(0, |d| d + 1);
    let mat: Vec<Vec<Scalar>> = (0..rows)
        .map(|r| cols.iter().map(|p| p.coeff(r)).collect())
        .collect();
    let rhs_v: Vec<Scalar> = (0..rows).map(|r| rhs.coeff(r)).collect();
    let Some(sol) = linalg::solve(mat, max_degree + 1, rhs_v) else {
        return Ok(None);
    };
    let mut ell = Poly::from_coeffs(sol.particular);
    match sol.kernel.len() {
        0 => {}
        1 => {
            let ell0 = Poly::from_coeffs(sol.kernel[0].clone());
            let h0 = c.mul(&ell0);
            let m = m.unwrap_or_else(|| zero_multiplicity(&h0));
            let pivot = h0.coeff(m);
            if pivot.is_zero() {
                return Err(Error::PreconditionViolated(format!("h0 has no x^{m} term")));
            }
            let t = c.mul(&ell).coeff(m).div(&pivot).expect("nonzero");
            ell = ell.sub(&ell0.scale(&t));
        }
        k => return Err(Error::InvariantViolated(format!("section kernel of dimension {k}"))),
    }
    Ok(Some(ell))
}

/// Solutions `ℓ` of the commutation conditions at one point `(e, u)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Fiber<F> {
    pub particular: UniPoly<F>,
    pub kernel: Vec<UniPoly<F>>,
}

/// The commutation conditions for `σ = (e, u, ℓ)` written through the cleared
/// derivation:
/// `P1 = f1(ex, uy + h) − e^{kn+1}·f1` and `P2 = f2(ex, uy + h) − e^{kn}·u·f2 − e^{kn}·h′·f1`.
pub struct CommutationSystem<F> {
    f1: BiPoly<F>,
    f2: BiPoly<F>,
    c: UniPoly<F>,
    kn: u64,
}

impl<F: ScalarField> CommutationSystem<F> {
    pub fn new(cd: &ClearedDerivation, c: &Poly) -> Self {
        let n = c.degree().expect("c is nonconstant");
        CommutationSystem {
            f1: cd.f1.map(F::from_scalar),
            f2: cd.f2.map(F::from_scalar),
            c: c.map(F::from_scalar),
            kn: (cd.k * n) as u64,
        }
    }

    pub fn residuals(&self, e: &F, u: &F, ell: &UniPoly<F>) -> (BiPoly<F>, BiPoly<F>) {
        let h = self.c.mul(ell);
        let ekn = e.pow(self.kn);
        let p1 = self
            .f1
            .compose_affine_y(e, u, &h)
            .sub(&self.f1.scale(&ekn.mul(e)));
        let p2 = self
            .f2
            .compose_affine_y(e, u, &h)
            .sub(&self.f2.scale(&ekn.mul(u)))
            .sub(&self.f1.mul_uni(&h.derivative()).scale(&ekn));
        (p1, p2)
    }

    /// `y`-degrees from which the coefficients of `P1`, `P2` are affine in `h`.
    fn affine_from(&self) -> (usize, usize) {
        let from = |p: &BiPoly<F>| p.deg_y().unwrap_or(0).saturating_sub(1);
        (from(&self.f1), from(&self.f2))
    }

    /// True when every coefficient of `P1`, `P2` is affine in `h`.
    pub fn is_affine(&self) -> bool {
        self.affine_from() == (0, 0)
    }

    /// All `ℓ` of degree `≤ max_deg` satisfying both conditions at `(e, u)`.
    /// The affine coefficients are solved first; outside the affine situation
    /// the solution is unique and is checked against the full conditions.
    pub fn solve(&self, e: &F, u: &F, max_deg: usize) -> Result<Option<Fiber<F>>> {
        let (from1, from2) = self.affine_from();
        let flatten = |(p1, p2): (BiPoly<F>, BiPoly<F>)| -> Vec<((u8, usize, usize), F)> {
            let mut out = Vec::new();
            for (tag, p, from) in [(1u8, &p1, from1), (2u8, &p2, from2)] {
                for (j, col) in p.ycoeffs().iter().enumerate().skip(from) {
                    for (i, v) in col.coeffs().iter().enumerate() {
                        if !v.is_zero() {
                            out.push(((tag, j, i), v.clone()));
                        }
                    }
                }
            }
            out
        };
        let (b1, b2) = self.residuals(e, u, &UniPoly::zero());
        let cols: Vec<Vec<((u8, usize, usize), F)>> = (0..=max_deg)
            .map(|i| {
                let (p1, p2) = self.residuals(e, u, &UniPoly::monomial(F::one(), i));
                flatten((p1.sub(&b1), p2.sub(&b2)))
            })
            .collect();
        let base = flatten((b1, b2));
        let mut keys: Vec<(u8, usize, usize)> = base
            .iter()
            .chain(cols.iter().flatten())
            .map(|(k, _)| *k)
            .collect();
        keys.sort_unstable();
        keys.dedup();
        let mut mat = vec![vec![F::zero(); max_deg + 1]; keys.len()];
        let mut rhs = vec![F::zero(); keys.len()];
        for (col, entries) in cols.iter().enumerate() {
            for (k, v) in entries {
                mat[keys.binary_search(k).expect("collected")][col] = v.clone();
            }
        }
        for (k, v) in &base {
            rhs[keys.binary_search(k).expect("collected")] = v.neg();
        }
        let Some(sol) = linalg::solve(mat, max_deg + 1, rhs) else {
            return Ok(None);
        };
        let fiber = Fiber {
            particular: UniPoly::from_coeffs(sol.particular),
            kernel: sol.kernel.into_iter().map(UniPoly::from_coeffs).collect(),
        };
        if self.is_affine() {
            return Ok(Some(fiber));
        }
        if !fiber.kernel.is_empty() {
            return Err(Error::InvariantViolated(
                "non-affine commutation system with a kernel".into(),
            ));
        }
        let (p1, p2) = self.residuals(e, u, &fiber.particular);
        Ok((p1.is_zero() && p2.is_zero()).then_some(fiber))
    }
}
