//! Dense Gauss-Jordan elimination over an exact field.

use crate::scalars::Field;

/// Row-reduced system `[A | R]`. Rows past `rank` have a zero `A` part, so their
/// right-hand sides are the consistency conditions.
#[derive(Clone, Debug)]
pub struct Reduced<F> {
    pub rows: Vec<Vec<F>>,
    pub rhs: Vec<Vec<F>>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Reduced<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self, ncols: usize) -> Vec<usize> {
        (0..ncols).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Kernel basis of `A`, one vector per free column.
    pub fn kernel(&self, ncols: usize) -> Vec<Vec<F>> {
        self.free_columns(ncols)
            .into_iter()
            .map(|f| {
                let mut v = vec![F::zero(); ncols];
                v[f] = F::one();
                for (i, &p) in self.pivots.iter().enumerate() {
                    v[p] = self.rows[i][f].neg();
                }
                v
            })
            .collect()
    }
}

/// Reduces `A` (row-major, `ncols` columns) to reduced row echelon form, applying
/// the same row operations to the multi-column right-hand side `rhs`.
pub fn rref<F: Field>(mut a: Vec<Vec<F>>, ncols: usize, mut rhs: Vec<Vec<F>>) -> Reduced<F> {
    debug_assert_eq!(a.len(), rhs.len());
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        rhs.swap(r, p);
        let inv = a[r][col].inv().expect("nonzero field element");
        for v in a[r].iter_mut() {
            *v = v.mul(&inv);
        }
        for v in rhs[r].iter_mut() {
            *v = v.mul(&inv);
        }
        for i in 0..nrows {
            if i == r || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in 0..ncols {
                if !a[r][j].is_zero() {
                    a[i][j] = a[i][j].sub(&f.mul(&a[r][j]));
                }
            }
            for j in 0..rhs[i].len() {
                if !rhs[r][j].is_zero() {
                    rhs[i][j] = rhs[i][j].sub(&f.mul(&rhs[r][j]));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    Reduced { rows: a, rhs, pivots }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution<F> {
    pub particular: Vec<F>,
    pub kernel: Vec<Vec<F>>,
}

/// Solves `A v = b`; `None` when inconsistent. Free variables are set to zero in
/// the particular solution.
pub fn solve<F: Field>(a: Vec<Vec<F>>, ncols: usize, b: Vec<F>) -> Option<Solution<F>> {
    let rhs = b.into_iter().map(|x| vec![x]).collect();
    let red = rref(a, ncols, rhs);
    let rank = red.rank();
    if red.rhs[rank..].iter().any(|r| !r[0].is_zero()) {
        return None;
    }
    let mut particular = vec![F::zero(); ncols];
    for (i, &p) in red.pivots.iter().enumerate() {
        particular[p] = red.rhs[i][0].clone();
    }
    let kernel = red.kernel(ncols);
    Some(Solution { particular, kernel })
}

pub fn kernel<F: Field>(a: Vec<Vec<F>>, ncols: usize) -> Vec<Vec<F>> {
    let n = a.len();
    rref(a, ncols, vec![Vec::new(); n]).kernel(ncols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rational, Rational};

    fn q(v: i64) -> Rational {
        rational(v, 1)
    }

    #[test]
    fn solves_square_system() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let s = solve(a, 2, vec![q(3), q(5)]).unwrap();
        assert_eq!(s.particular, vec![rational(4, 5), rational(7, 5)]);
        assert!(s.kernel.is_empty());
    }

    #[test]
    fn detects_inconsistency_and_kernel() {
        let a = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(solve(a.clone(), 2, vec![q(1), q(3)]).is_none());
        let s = solve(a, 2, vec![q(1), q(2)]).unwrap();
        assert_eq!(s.kernel, vec![vec![q(-2), q(1)]]);
    }
}
