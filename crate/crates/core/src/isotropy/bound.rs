use std::fmt;

use crate::derivation::ClearedDerivation;
use crate::error::{Error, Result};
use crate::poly::BiPoly;
use crate::scalars::{Ring, Scalar};

/// Which coefficient equation bounds `deg h`, keyed on `f1 ∈ k[x]` and `deg_y f2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundCase {
    F1Nonconstant,
    F2YdegGe2,
    F2Ydeg1,
    BothUnivariate,
}

impl BoundCase {
    pub fn name(self) -> &'static str {
        match self {
            BoundCase::F1Nonconstant => "F1_NONCONSTANT",
            BoundCase::F2YdegGe2 => "F2_YDEG_GE2",
            BoundCase::F2Ydeg1 => "F2_YDEG_1",
            BoundCase::BothUnivariate => "BOTH_UNIVARIATE",
        }
    }

    /// The two last cases are exactly the derivations `(g, a·ȳ + b)`.
    pub fn is_shape(self) -> bool {
        matches!(self, BoundCase::F2Ydeg1 | BoundCase::BothUnivariate)
    }
}

impl fmt::Display for BoundCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Upper bound on `deg h` for `σ(ȳ) = u·ȳ + h(x̄)` in the isotropy group.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeBound {
    pub case: BoundCase,
    pub bound: usize,
    /// `lc(a)/lc(g)` in the `F2_YDEG_1` case when `deg g = deg a + 1`: the only
    /// degree at which the leading terms of `a·h − g·h′` can cancel.
    pub rigid: Option<Scalar>,
}

impl DegreeBound {
    /// Degree cap for `ℓ` with `h = c·ℓ`.
    pub fn ell_degree(&self, n: usize) -> usize {
        self.bound.saturating_sub(n)
    }
}

impl fmt::Display for DegreeBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.case, self.bound)?;
        if let Some(r) = &self.rigid {
            write!(f, " (rigid {r})")?;
        }
        Ok(())
    }
}

fn deg_y(p: &BiPoly<Scalar>) -> usize {
    p.deg_y().unwrap_or(0)
}

fn deg_x(p: &BiPoly<Scalar>) -> usize {
    p.deg_x().unwrap_or(0)
}

pub fn bound_case(cd: &ClearedDerivation) -> BoundCase {
    if deg_y(&cd.f1) >= 1 {
        BoundCase::F1Nonconstant
    } else if deg_y(&cd.f2) >= 2 {
        BoundCase::F2YdegGe2
    } else if deg_y(&cd.f2) == 1 {
        BoundCase::F2Ydeg1
    } else {
        BoundCase::BothUnivariate
    }
}

/// `n = deg c` is needed to read `deg b` off `f2 = c^k·(a·y + b)`.
pub fn degree_bound(cd: &ClearedDerivation, n: usize) -> Result<DegreeBound> {
    let case = bound_case(cd);
    if case == BoundCase::BothUnivariate && cd.f1.is_zero() {
        return Err(Error::IsLocallyNilpotent);
    }
    let (bound, rigid) = match case {
        BoundCase::F1Nonconstant => (deg_x(&cd.f1), None),
        BoundCase::F2YdegGe2 => (deg_x(&cd.f2), None),
        BoundCase::F2Ydeg1 => {
            let g = cd.f1.ycoeff(0);
            let a = cd.f2.ycoeff(1);
            let b = cd.f2.ycoeff(0);
            let deg_b = b.degree().map_or(0, |d| d.saturating_sub(cd.k * n));
            let rigid = match (g.degree(), a.degree()) {
                (Some(dg), Some(da)) if dg == da + 1 => {
                    a.lc().and_then(|la| la.div(g.lc().expect("nonzero")))
                }
                _ => None,
            };
            let r = rigid.as_ref().and_then(Scalar::to_positive_usize);
            (deg_b.max(r.unwrap_or(0)), rigid)
        }
        BoundCase::BothUnivariate => (cd.f2.ycoeff(0).degree().map_or(0, |d| d.saturating_sub(cd.k * n)) + 1, None),
    };
    Ok(DegreeBound { case, bound, rigid })
}
