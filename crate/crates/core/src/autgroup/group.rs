use std::fmt;

use num_integer::Integer;

use crate::dalgebra::Presentation;
use crate::lattice::{smith_normal_form, Lattice, Smith};
use crate::scalars::{Cyclotomic, Ring, Scalar};

/// Closed subgroup of the torus `{(e, u)}` cut out by `e^a·u^b = 1` for each relation.
/// With `P·M·Q = diag(d1, d2)`, its points are `(e, u) = (s1^{Q00} s2^{Q01}, s1^{Q10} s2^{Q11})`
/// with `s1^{d1} = s2^{d2} = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalizableGroup {
    relations: Vec<(i64, i64)>,
    smith: Smith,
}

impl DiagonalizableGroup {
    /// Zero rows are dropped.
    pub fn from_relations(rels: &[(i64, i64)]) -> Self {
        let relations: Vec<(i64, i64)> = rels.iter().copied().filter(|&r| r != (0, 0)).collect();
        let smith = smith_normal_form(&relations);
        DiagonalizableGroup { relations, smith }
    }

    pub fn full_torus() -> Self {
        Self::from_relations(&[])
    }

    pub fn relations(&self) -> &[(i64, i64)] {
        &self.relations
    }

    pub fn smith(&self) -> &Smith {
        &self.smith
    }

    pub fn invariants(&self) -> (i64, i64) {
        self.smith.diag
    }

    pub fn lattice(&self) -> Lattice {
        Lattice::from_generators(&self.relations)
    }

    pub fn dimension(&self) -> usize {
        let (d1, d2) = self.invariants();
        usize::from(d1 == 0) + usize::from(d2 == 0)
    }

    pub fn is_finite(&self) -> bool {
        self.dimension() == 0
    }

    /// Exponent of the finite part.
    pub fn torsion_exponent(&self) -> i64 {
        let (d1, d2) = self.invariants();
        [d1, d2].iter().filter(|&&d| d > 0).fold(1, |acc, d| acc.lcm(d))
    }

    /// Order of the finite part.
    pub fn torsion_order(&self) -> i64 {
        let (d1, d2) = self.invariants();
        [d1, d2].iter().filter(|&&d| d > 0).product()
    }

    pub fn contains<F: Ring>(&self, e: &F, u: &F) -> bool {
        self.relations.iter().all(|&(a, b)| match (e.powi(a), u.powi(b)) {
            (Some(x), Some(y)) => x.mul(&y).is_one(),
            _ => false,
        })
    }

    /// Image of `(s1, s2)` under the parametrization; the caller is responsible
    /// for `s_i^{d_i} = 1`.
    pub fn point<F: Ring>(&self, s1: &F, s2: &F) -> Option<(F, F)> {
        let q = self.smith.q;
        let e = s1.powi(q[0][0])?.mul(&s2.powi(q[0][1])?);
        let u = s1.powi(q[1][0])?.mul(&s2.powi(q[1][1])?);
        Some((e, u))
    }

    /// Characters `(Q00, Q10)`, `(Q01, Q11)`: exponents of `(e, u)` along each coordinate.
    pub fn direction(&self, k: usize) -> (i64, i64) {
        (self.smith.q[0][k], self.smith.q[1][k])
    }

    /// Indices of the coordinates with `d_i = 0`.
    pub fn free_coordinates(&self) -> Vec<usize> {
        let (d1, d2) = self.invariants();
        [d1, d2]
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Points `(e, u)` of the form `ζ_N^{α}` in each coordinate, with the finite
    /// coordinates running over their groups and the free coordinates over
    /// roots of unity whose joint order is at most `free_order` (1 gives only
    /// the finite part).
    pub fn roots_of_unity_points(&self, free_order: u32) -> Vec<(Scalar, Scalar)> {
        let (d1, d2) = self.invariants();
        let free = self.free_coordinates();
        let mut out = Vec::new();
        for m in 1..=free_order.max(1) as i64 {
            // Exponent tuples over Z/m for free coordinates, of exact joint order m.
            let free_tuples: Vec<Vec<i64>> = match free.len() {
                0 if m == 1 => vec![vec![]],
                0 => vec![],
                1 => (0..m).filter(|k| k.gcd(&m) == 1).map(|k| vec![k]).collect(),
                _ => (0..m)
                    .flat_map(|a| (0..m).map(move |b| vec![a, b]))
                    .filter(|v| v[0].gcd(&v[1]).gcd(&m) == 1)
                    .collect(),
            };
            for ft in free_tuples {
                let orders = [if d1 > 0 { d1 } else { m }, if d2 > 0 { d2 } else { m }];
                let range = |d: i64| if d > 0 { d } else { 1 };
                for k1 in 0..range(d1) {
                    for k2 in 0..range(d2) {
                        let mut ks = [k1, k2];
                        for (slot, &coord) in free.iter().enumerate() {
                            ks[coord] = ft[slot];
                        }
                        out.push(self.root_point(orders, ks));
                    }
                }
            }
        }
        out
    }

    fn root_point(&self, orders: [i64; 2], ks: [i64; 2]) -> (Scalar, Scalar) {
        let n = orders[0].lcm(&orders[1]);
        let q = self.smith.q;
        let s = [ks[0] * (n / orders[0]), ks[1] * (n / orders[1])];
        let e_exp = s[0] * q[0][0] + s[1] * q[0][1];
        let u_exp = s[0] * q[1][0] + s[1] * q[1][1];
        (
            Cyclotomic::root_of_unity(n as u32, e_exp),
            Cyclotomic::root_of_unity(n as u32, u_exp),
        )
    }

    /// Finite part times `torus_values` on each free coordinate, in a fixed order,
    /// truncated to `limit` points.
    pub fn sample_points(&self, limit: usize, torus_values: &[Scalar]) -> Vec<(Scalar, Scalar)> {
        let free = self.free_coordinates();
        let finite = self.roots_of_unity_points(1);
        let free_values: Vec<Vec<Scalar>> = match free.len() {
            0 => vec![vec![]],
            1 => torus_values.iter().map(|v| vec![v.clone()]).collect(),
            _ => torus_values
                .iter()
                .flat_map(|a| torus_values.iter().map(move |b| vec![a.clone(), b.clone()]))
                .collect(),
        };
        let mut out = Vec::new();
        for (e0, u0) in &finite {
            for vals in &free_values {
                let mut e = e0.clone();
                let mut u = u0.clone();
                for (slot, &coord) in free.iter().enumerate() {
                    let (a, b) = self.direction(coord);
                    let v = &vals[slot];
                    e = e.mul(&v.powi(a).expect("torus values are nonzero"));
                    u = u.mul(&v.powi(b).expect("torus values are nonzero"));
                }
                out.push((e, u));
                if out.len() >= limit {
                    return out;
                }
            }
        }
        out
    }

    /// `Z/d1 x Z/d2` with `Z/0` printed as `Gm` and `Z/1` factors omitted;
    /// the trivial group prints as `1`.
    pub fn structure(&self) -> String {
        let (d1, d2) = self.invariants();
        let parts: Vec<String> = [d1, d2]
            .iter()
            .filter(|&&d| d != 1)
            .map(|&d| if d == 0 { "Gm".to_string() } else { format!("Z/{d}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" x ")
        }
    }
}

impl fmt::Display for DiagonalizableGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.structure())
    }
}

/// Relations `(n − i, 0)` for `c_i ≠ 0` and `(i, j − d)` for `q_ij ≠ 0`.
pub fn relations_of(p: &Presentation) -> Vec<(i64, i64)> {
    let n = p.n() as i64;
    let d = p.d() as i64;
    let mut rels = Vec::new();
    for (i, ci) in p.c().coeffs().iter().enumerate() {
        if !ci.is_zero() {
            rels.push((n - i as i64, 0));
        }
    }
    for (j, qj) in p.q().ycoeffs().iter().enumerate() {
        for (i, qij) in qj.coeffs().iter().enumerate() {
            if !qij.is_zero() {
                rels.push((i as i64, j as i64 - d));
            }
        }
    }
    rels.retain(|&r| r != (0, 0));
    rels
}
