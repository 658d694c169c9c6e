//! Sublattices of Z² (character relations of a diagonal group) and Smith normal form
//! of integer matrices with two columns.

use num_integer::Integer;

/// Sublattice of Z² in Hermite normal form: `span{(a, b), (0, d)}` with `a > 0`,
/// `d >= 0`, and `0 <= b < d` whenever both generators are present.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Lattice {
    first: Option<(i64, i64)>,
    vertical: i64,
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

impl Lattice {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_generators(gens: &[(i64, i64)]) -> Self {
        let mut l = Self::zero();
        for &g in gens {
            l.insert(g);
        }
        l
    }

    fn insert(&mut self, (v0, v1): (i64, i64)) {
        if (v0, v1) == (0, 0) {
            return;
        }
        match self.first {
            Some((a, b)) if v0 != 0 => {
                let (g, s, t) = ext_gcd(a, v0);
                let w1 = (v0 / g) * b - (a / g) * v1;
                self.first = Some((g, s * b + t * v1));
                self.vertical = self.vertical.gcd(&w1);
            }
            Some(_) => self.vertical = self.vertical.gcd(&v1),
            None if v0 != 0 => {
                self.first = Some(if v0 < 0 { (-v0, -v1) } else { (v0, v1) });
            }
            None => self.vertical = self.vertical.gcd(&v1),
        }
        if let Some((a, b)) = self.first {
            if self.vertical > 0 {
                self.first = Some((a, b.rem_euclid(self.vertical)));
            }
        }
    }

    pub fn join(&self, other: &Self) -> Self {
        let mut l = self.clone();
        for g in other.basis() {
            l.insert(g);
        }
        l
    }

    pub fn with(&self, v: (i64, i64)) -> Self {
        let mut l = self.clone();
        l.insert(v);
        l
    }

    pub fn basis(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        if let Some(f) = self.first {
            out.push(f);
        }
        if self.vertical > 0 {
            out.push((0, self.vertical));
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.basis().len()
    }

    /// Canonical representative of `v` modulo the lattice.
    pub fn reduce(&self, (mut v0, mut v1): (i64, i64)) -> (i64, i64) {
        if let Some((a, b)) = self.first {
            let k = v0.div_euclid(a);
            v0 -= k * a;
            v1 -= k * b;
        }
        if self.vertical > 0 {
            v1 = v1.rem_euclid(self.vertical);
        }
        (v0, v1)
    }

    pub fn contains(&self, v: (i64, i64)) -> bool {
        self.reduce(v) == (0, 0)
    }

    pub fn is_sublattice_of(&self, other: &Self) -> bool {
        self.basis().into_iter().all(|v| other.contains(v))
    }
}

/// `P · M · Q = D` with `P`, `Q` unimodular and `D` diagonal, `d1 | d2`, `d_i >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub p: Vec<Vec<i64>>,
    pub q: [[i64; 2]; 2],
    pub diag: (i64, i64),
}

/// Smith normal form of the `m × 2` matrix whose rows are `rows`. Pivots are the
/// entries of least absolute value, ties broken by row then column.
pub fn smith_normal_form(rows: &[(i64, i64)]) -> Smith {
    let m = rows.len();
    let mut a: Vec<[i64; 2]> = rows.iter().map(|&(x, y)| [x, y]).collect();
    let mut p: Vec<Vec<i64>> = (0..m)
        .map(|i| (0..m).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut q = [[1, 0], [0, 1]];

    for t in 0..m.min(2) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..2 {
                    if a[i][j] != 0
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            a.swap(t, pi);
            p.swap(t, pi);
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                for row in q.iter_mut() {
                    row.swap(t, pj);
                }
            }
            let piv = a[t][t];
            let mut clean = true;
            for i in t + 1..m {
                let f = a[i][t] / piv;
                if f != 0 {
                    for j in 0..2 {
                        a[i][j] -= f * a[t][j];
                    }
                    for j in 0..m {
                        p[i][j] -= f * p[t][j];
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..2 {
                let f = a[t][j] / piv;
                if f != 0 {
                    for row in a.iter_mut() {
                        row[j] -= f * row[t];
                    }
                    for row in q.iter_mut() {
                        row[j] -= f * row[t];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..2).any(|j| a[i][j] % piv != 0));
            match bad {
                Some(i) => {
                    for j in 0..2 {
                        a[t][j] += a[i][j];
                    }
                    for j in 0..m {
                        p[t][j] += p[i][j];
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for v in a[t].iter_mut() {
                *v = -*v;
            }
            for v in p[t].iter_mut() {
                *v = -*v;
            }
        }
    }
    let d1 = if m >= 1 { a[0][0] } else { 0 };
    let d2 = if m >= 2 { a[1][1] } else { 0 };
    Smith { p, q, diag: (d1, d2) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(rows: &[(i64, i64)]) -> Smith {
        let s = smith_normal_form(rows);
        let m = rows.len();
        for i in 0..m {
            for j in 0..2 {
                let mut v = 0;
                for k in 0..m {
                    let mq = rows[k].0 * s.q[0][j] + rows[k].1 * s.q[1][j];
                    v += s.p[i][k] * mq;
                }
                let expect = match (i, j) {
                    (0, 0) => s.diag.0,
                    (1, 1) => s.diag.1,
                    _ => 0,
                };
                assert_eq!(v, expect, "entry ({i},{j}) of PMQ for {rows:?}");
            }
        }
        let detq = s.q[0][0] * s.q[1][1] - s.q[0][1] * s.q[1][0];
        assert_eq!(detq.abs(), 1);
        assert!(s.diag.0 >= 0 && s.diag.1 >= 0);
        if s.diag.0 != 0 {
            assert_eq!(s.diag.1 % s.diag.0, 0);
        }
        s
    }

    #[test]
    fn worked_snf() {
        // Relations of c = x^2 - 1, q = y^2 + x.
        assert_eq!(check(&[(2, 0), (0, 0), (1, -2)]).diag, (1, 4));
        let s = check(&[(1, -2)]);
        assert_eq!(s.diag, (1, 0));
        assert_eq!(s.q, [[1, 2], [0, 1]]);
        assert_eq!(check(&[]).diag, (0, 0));
        assert_eq!(check(&[(4, 6), (6, 4)]).diag, (2, 10));
    }

    #[test]
    fn lattice_reduction() {
        let l = Lattice::from_generators(&[(2, 0), (1, -2)]);
        assert_eq!(l.basis(), vec![(1, 2), (0, 4)]);
        assert!(l.contains((2, 0)));
        assert!(!l.contains((0, 2)));
        assert_eq!(l.reduce((3, 1)), (0, 3));
        let r1 = Lattice::from_generators(&[(-2, 1)]);
        assert_eq!(r1.basis(), vec![(2, -1)]);
        assert_eq!(r1.reduce((5, 0)), (1, 2));
        assert!(r1.is_sublattice_of(&l.join(&r1)));
    }
}
