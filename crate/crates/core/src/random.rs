//! Seeded generators of presentations, polynomials and automorphisms for the
//! property suites.

use std::sync::Arc;

use rand::{Rng, RngExt};

use crate::autgroup::{group_of, Automorphism};
use crate::dalgebra::{AlgebraElement, Poly, Presentation};
use crate::poly::BiPoly;
use crate::scalars::{rational, Ring, Scalar};

/// `p/q` with `|p| ≤ height` and, one time in four, `1 < q ≤ height`.
pub fn scalar<R: Rng>(rng: &mut R, height: i64) -> Scalar {
    let num = rng.random_range(-height..=height);
    let den = if height > 1 && rng.random_range(0..4) == 0 {
        rng.random_range(2..=height)
    } else {
        1
    };
    Scalar::from(rational(num, den))
}

pub fn nonzero_scalar<R: Rng>(rng: &mut R, height: i64) -> Scalar {
    loop {
        let s = scalar(rng, height);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Coefficients below `x^len` are nonzero with probability `density`.
pub fn poly<R: Rng>(rng: &mut R, len: usize, height: i64, density: f64) -> Poly {
    Poly::from_coeffs(
        (0..len)
            .map(|_| {
                if rng.random_bool(density) {
                    scalar(rng, height)
                } else {
                    Scalar::zero()
                }
            })
            .collect(),
    )
}

/// `c` centered of degree `n`, `q = q_d·y^d + Σ_{j ≤ d−2} q_j(x)·y^j` with `deg q_j < n`.
pub fn reduced_presentation<R: Rng>(rng: &mut R, n: usize, d: usize, height: i64, density: f64) -> Presentation {
    let mut c = poly(rng, n - 1, height, density).into_coeffs();
    c.resize(n - 1, Scalar::zero());
    c.push(Scalar::zero());
    c.push(nonzero_scalar(rng, height));
    let mut ys: Vec<Poly> = (0..d - 1).map(|_| poly(rng, n, height, density)).collect();
    ys.push(Poly::zero());
    ys.push(Poly::constant(nonzero_scalar(rng, height)));
    Presentation::new(Poly::from_coeffs(c), BiPoly::from_ycoeffs(ys)).expect("degrees and leading term are valid")
}

/// Arbitrary `(c, q)`: `c` of degree `n`, `q` quasi-monic of `y`-degree `d` with
/// `x`-degrees up to `n + 2`.
pub fn raw_presentation<R: Rng>(rng: &mut R, n: usize, d: usize, height: i64) -> (Poly, BiPoly<Scalar>) {
    let mut c = poly(rng, n, height, 0.7).into_coeffs();
    c.resize(n, Scalar::zero());
    c.push(nonzero_scalar(rng, height));
    let mut ys: Vec<Poly> = (0..d).map(|_| poly(rng, n + 3, height, 0.5)).collect();
    ys.push(Poly::constant(nonzero_scalar(rng, height)));
    (Poly::from_coeffs(c), BiPoly::from_ycoeffs(ys))
}

/// Reduced presentation with `n, d` drawn from `2..=max_n`, `2..=max_d`; sparse
/// coefficients keep the group `G_{c,q}` from collapsing too often.
pub fn any_reduced<R: Rng>(rng: &mut R, max_n: usize, max_d: usize, height: i64) -> Arc<Presentation> {
    let n = rng.random_range(2..=max_n);
    let d = rng.random_range(2..=max_d);
    let density = [0.0, 0.25, 0.5][rng.random_range(0..3)];
    Arc::new(reduced_presentation(rng, n, d, height, density))
}

/// Points of `G_{c,q}` to draw automorphisms from.
pub fn group_points(p: &Presentation) -> Vec<(Scalar, Scalar)> {
    let g = group_of(p).expect("reduced");
    let torus = [2, 3, -1, -2].map(Scalar::from_int).to_vec();
    let mut pts = g.roots_of_unity_points(3);
    pts.extend(g.sample_points(32, &[torus, vec![Scalar::from(rational(1, 2))]].concat()));
    pts
}

pub fn automorphism<R: Rng>(
    rng: &mut R,
    p: &Arc<Presentation>,
    points: &[(Scalar, Scalar)],
    ell_len: usize,
    height: i64,
) -> Automorphism {
    let (e, u) = points[rng.random_range(0..points.len())].clone();
    let ell = poly(rng, ell_len, height, 0.6);
    Automorphism::new(p.clone(), e, u, ell).expect("point lies in the group")
}

/// Random element with up to `terms` basis monomials `x^a·ȳ^i·z̄^j`.
pub fn element<R: Rng>(rng: &mut R, p: &Presentation, terms: usize, height: i64) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for _ in 0..terms.max(1) {
        let i = rng.random_range(0..p.d());
        let j = rng.random_range(0..3);
        let f = poly(rng, 3, height, 0.7);
        out = out.add(&AlgebraElement::term(f, i, j));
    }
    out
}
