use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use super::{Field, Rational, Ring, ScalarField};
use crate::fmt_util::{power, render_sum};
use crate::linalg;

pub fn euler_phi(n: u32) -> usize {
    let mut m = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result as usize
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

type PolyCache = RwLock<HashMap<u32, Arc<Vec<i64>>>>;

fn cache() -> &'static PolyCache {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
fn phi_poly(n: u32) -> Arc<Vec<i64>> {
    if let Some(p) = cache().read().expect("cache lock").get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Φ_d with d a proper divisor of n.
    let mut num: Vec<i64> = vec![0; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let den = phi_poly(d);
        num = exact_div_monic(&num, &den);
    }
    let p = Arc::new(num);
    cache().write().expect("cache lock").insert(n, p.clone());
    p
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quo = vec![0i64; num.len() - dd];
    for k in (0..quo.len()).rev() {
        let c = rem[k + dd];
        quo[k] = c;
        if c != 0 {
            for (i, &b) in den.iter().enumerate() {
                rem[k + i] -= c * b;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quo
}

pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomials are indexed from 1");
    phi_poly(n).iter().map(|&c| BigInt::from(c)).collect()
}

/// Element of Q(ζ_N), stored as coordinates in the power basis 1, ζ, …, ζ^{φ(N)-1}.
/// Rational values always carry conductor 1; other values may sit in a larger
/// field than necessary until they are printed.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    n: u32,
    coords: Vec<Rational>,
}

impl Cyclotomic {
    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic { n: 1, coords: vec![r] }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(v.into()))
    }

    /// `ζ_n^k` with `ζ_n = exp(2πi/n)`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n >= 1, "root of unity of order 0");
        let k = k.rem_euclid(n as i64) as usize;
        let mut v = vec![Rational::zero(); n as usize];
        v[k] = Rational::one();
        Self::from_power_coeffs(n, v)
    }

    /// Builds `Σ v_i ζ_n^i` from coefficients of any length.
    pub fn from_power_coeffs(n: u32, v: Vec<Rational>) -> Self {
        assert!(n >= 1);
        let mut folded = vec![Rational::zero(); (n as usize).max(1)];
        for (i, c) in v.into_iter().enumerate() {
            if !c.is_zero() {
                folded[i % n as usize] += c;
            }
        }
        let coords = reduce_mod_phi(folded, n);
        let mut out = Cyclotomic { n, coords };
        out.normalize();
        out
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn to_rational(&self) -> Option<Rational> {
        (self.n == 1).then(|| self.coords[0].clone())
    }

    pub fn is_rational(&self) -> bool {
        self.n == 1
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    /// The value as a positive machine integer, if it is one.
    pub fn to_positive_usize(&self) -> Option<usize> {
        self.to_integer()
            .filter(|v| v.is_positive())
            .and_then(|v| v.to_usize())
    }

    fn normalize(&mut self) {
        if self.n > 1 && self.coords[1..].iter().all(|c| c.is_zero()) {
            self.coords.truncate(1);
            self.n = 1;
        }
    }

    /// Coordinates of `self` in Q(ζ_m); `m` must be a multiple of the conductor.
    fn promoted(&self, m: u32) -> Vec<Rational> {
        if m == self.n {
            return self.coords.clone();
        }
        debug_assert_eq!(m % self.n, 0);
        let step = (m / self.n) as usize;
        let mut v = vec![Rational::zero(); m as usize];
        for (i, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                v[(i * step) % m as usize] += c;
            }
        }
        reduce_mod_phi(v, m)
    }

    fn common(&self, other: &Self) -> (u32, Vec<Rational>, Vec<Rational>) {
        let m = self.n.lcm(&other.n);
        (m, self.promoted(m), other.promoted(m))
    }

    fn scaled(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::from_int(0);
        }
        Cyclotomic {
            n: self.n,
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    /// Re-expresses the value over the smallest cyclotomic field containing it.
    pub fn minimal(&self) -> Self {
        if self.n == 1 {
            return self.clone();
        }
        for m in divisors(self.n) {
            if m == self.n {
                break;
            }
            let pm = euler_phi(m);
            // Columns: images of ζ_m^i inside Q(ζ_n).
            let step = (self.n / m) as i64;
            let cols: Vec<Vec<Rational>> = (0..pm)
                .map(|i| Cyclotomic::root_of_unity(self.n, i as i64 * step).promoted(self.n))
                .collect();
            let rows: Vec<Vec<Rational>> = (0..self.coords.len())
                .map(|r| cols.iter().map(|col| col[r].clone()).collect())
                .collect();
            if let Some(sol) = linalg::solve(rows, pm, self.coords.clone()) {
                return Cyclotomic::from_power_coeffs(m, sol.particular);
            }
        }
        self.clone()
    }
}

/// Reduces a coefficient vector of degree < n modulo Φ_n.
fn reduce_mod_phi(mut v: Vec<Rational>, n: u32) -> Vec<Rational> {
    let phi = phi_poly(n);
    let deg = phi.len() - 1;
    for k in (deg..v.len()).rev() {
        if v[k].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut v[k]);
        for (i, &b) in phi.iter().enumerate().take(deg) {
            match b {
                0 => {}
                1 => v[k - deg + i] -= &c,
                -1 => v[k - deg + i] += &c,
                _ => v[k - deg + i] -= &c * Rational::from_integer(b.into()),
            }
        }
    }
    v.truncate(deg);
    if v.is_empty() {
        v.push(Rational::zero());
    }
    v
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.coords == other.coords;
        }
        if self.n == 1 || other.n == 1 {
            // A non-rational value is never equal to a rational one after normalize.
            return false;
        }
        let (_, a, b) = self.common(other);
        a == b
    }
}

impl Ring for Cyclotomic {
    fn zero() -> Self {
        Self::from_int(0)
    }
    fn one() -> Self {
        Self::from_int(1)
    }
    fn is_zero(&self) -> bool {
        self.n == 1 && self.coords[0].is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        if rhs.n == 1 {
            let mut out = self.clone();
            out.coords[0] += &rhs.coords[0];
            return out;
        }
        if self.n == 1 {
            return rhs.add(self);
        }
        let (m, a, b) = self.common(rhs);
        let mut out = Cyclotomic {
            n: m,
            coords: a.into_iter().zip(b).map(|(x, y)| x + y).collect(),
        };
        out.normalize();
        out
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if rhs.n == 1 {
            return self.scaled(&rhs.coords[0]);
        }
        if self.n == 1 {
            return rhs.scaled(&self.coords[0]);
        }
        let (m, a, b) = self.common(rhs);
        let mut prod = vec![Rational::zero(); m as usize];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[(i + j) % m as usize] += x * y;
                }
            }
        }
        let mut out = Cyclotomic {
            n: m,
            coords: reduce_mod_phi(prod, m),
        };
        out.normalize();
        out
    }
    fn neg(&self) -> Self {
        Cyclotomic {
            n: self.n,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.n == 1 {
            return Some(Self::from_rational(self.coords[0].recip()));
        }
        // Solve self · v = 1 through the multiplication matrix in the power basis.
        let dim = self.coords.len();
        let cols: Vec<Vec<Rational>> = (0..dim)
            .map(|j| {
                self.mul(&Cyclotomic::root_of_unity(self.n, j as i64))
                    .promoted(self.n)
            })
            .collect();
        let rows: Vec<Vec<Rational>> = (0..dim)
            .map(|r| cols.iter().map(|col| col[r].clone()).collect())
            .collect();
        let mut e0 = vec![Rational::zero(); dim];
        e0[0] = Rational::one();
        let sol = linalg::solve(rows, dim, e0)?;
        Some(Cyclotomic::from_power_coeffs(self.n, sol.particular))
    }
    fn from_rational(r: &Rational) -> Self {
        Self::from_rational(r.clone())
    }
}

impl Field for Cyclotomic {}

impl ScalarField for Cyclotomic {
    fn from_scalar(s: &Cyclotomic) -> Self {
        s.clone()
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for Cyclotomic {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.minimal();
        let atom = format!("zeta({})", m.n);
        let terms: Vec<(String, String)> = m
            .coords
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.to_string(), power(&atom, i)))
            .collect();
        f.write_str(&render_sum(&terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational;

    fn z(n: u32, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        let to_i = |v: Vec<BigInt>| v.iter().map(|c| c.to_i64().unwrap()).collect::<Vec<_>>();
        assert_eq!(to_i(cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(to_i(cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(to_i(cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(to_i(cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
        let p105 = to_i(cyclotomic_polynomial(105));
        assert_eq!(p105.len() - 1, euler_phi(105));
        assert_eq!(p105[7], -2);
    }

    #[test]
    fn roots_of_unity_have_the_right_order() {
        for n in 1..=24u32 {
            let w = z(n, 1);
            assert!(w.pow(n as u64).is_one(), "zeta({n})^{n}");
            for k in 1..n {
                if n % k == 0 {
                    assert!(!w.pow(k as u64).is_one(), "zeta({n})^{k}");
                }
            }
        }
    }

    #[test]
    fn mixed_conductors_promote() {
        // ζ_4 · ζ_3 = ζ_12^{3+4}
        assert_eq!(z(4, 1).mul(&z(3, 1)), z(12, 7));
        assert_eq!(z(4, 1).mul(&z(4, 1)), Cyclotomic::from_int(-1));
        assert!(z(4, 2).is_rational());
        assert_eq!(z(6, 2), z(3, 1));
    }

    #[test]
    fn inverse_and_minimal_field() {
        let a = z(5, 1).add(&Cyclotomic::from_rational(rational(1, 2)));
        let inv = a.inv().unwrap();
        assert!(a.mul(&inv).is_one());
        let b = z(12, 4);
        assert_eq!(b.minimal().conductor(), 3);
        assert_eq!(b.to_string(), "zeta(3)");
        let c = z(4, 1).mul(&Cyclotomic::from_rational(rational(1, 2))).add(&Cyclotomic::from_int(3));
        assert_eq!(c.to_string(), "1/2*zeta(4)+3");
        assert_eq!(z(8, 2).to_string(), "zeta(4)");
        assert_eq!(Cyclotomic::from_int(0).to_string(), "0");
        assert_eq!(z(3, 2).to_string(), "-zeta(3)-1");
    }
}
