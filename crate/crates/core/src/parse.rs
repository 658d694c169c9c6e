//! Text front end. Polynomials use `x`, `y`, `z`, integers, `zeta(N)` for a
//! primitive N-th root of unity, `+ - * /`, integer powers `^` and parentheses.
//! Division is only allowed by a nonzero constant.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::{BiPoly, TriPoly, UniPoly};
use crate::scalars::{Cyclotomic, Rational, Ring, Scalar};

const MAX_INPUT: usize = 4096;
const MAX_DIGITS: usize = 64;
const MAX_EXPONENT: u32 = 64;
const MAX_DEGREE: usize = 96;
const MAX_TERMS: usize = 20_000;
const MAX_DEPTH: usize = 64;
const MAX_CONDUCTOR: u32 = 120;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
}

fn err(pos: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        message: message.into(),
    }
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    if s.len() > MAX_INPUT {
        return Err(err(MAX_INPUT, "input too long"));
    }
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i - start > MAX_DIGITS {
                return Err(err(start, "integer literal too long"));
            }
            out.push((start, Tok::Int(chars[start..i].iter().collect())));
        } else if ch.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(ch) {
            out.push((i, Tok::Sym(ch)));
            i += 1;
        } else {
            return Err(err(i, format!("unexpected character {ch:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    depth: usize,
}

type Poly3 = TriPoly<Scalar>;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, ch: char) -> bool {
        if self.peek() == Some(&Tok::Sym(ch)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(err(self.here(), format!("expected '{ch}'")))
        }
    }

    fn small_int(&mut self) -> Result<u32> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                self.pos += 1;
                s.parse::<u32>().map_err(|_| err(at, "integer too large"))
            }
            _ => Err(err(at, "expected an integer")),
        }
    }

    fn expr(&mut self) -> Result<Poly3> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(err(self.here(), "nesting too deep"));
        }
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                break;
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly3> {
        let mut acc = self.unary()?;
        loop {
            let at = self.here();
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = checked_mul(&acc, &rhs, at)?;
            } else if self.eat('/') {
                let rhs = self.unary()?;
                let c = constant_of(&rhs).ok_or_else(|| err(at, "division by a non-constant"))?;
                let inv = c.inv().ok_or_else(|| err(at, "division by zero"))?;
                acc = acc.scale(&inv);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly3> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(err(self.here(), "nesting too deep"));
        }
        let out = if self.eat('-') {
            self.unary()?.neg()
        } else if self.eat('+') {
            self.unary()?
        } else {
            self.power()?
        };
        self.depth -= 1;
        Ok(out)
    }

    fn power(&mut self) -> Result<Poly3> {
        let base = self.atom()?;
        let at = self.here();
        if !self.eat('^') {
            return Ok(base);
        }
        let k = self.small_int()?;
        if k > MAX_EXPONENT {
            return Err(err(at, "exponent too large"));
        }
        let mut acc = Poly3::constant(Scalar::one());
        for _ in 0..k {
            acc = checked_mul(&acc, &base, at)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Poly3> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                self.pos += 1;
                let v: BigInt = s.parse().map_err(|_| err(at, "bad integer"))?;
                Ok(Poly3::constant(Cyclotomic::from_rational(Rational::from_integer(v))))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "x" => Ok(Poly3::x()),
                    "y" => Ok(Poly3::y()),
                    "z" => Ok(Poly3::z()),
                    "zeta" => {
                        self.expect('(')?;
                        let n_at = self.here();
                        let n = self.small_int()?;
                        if n == 0 || n > MAX_CONDUCTOR {
                            return Err(err(n_at, format!("zeta order must be in 1..={MAX_CONDUCTOR}")));
                        }
                        self.expect(')')?;
                        Ok(Poly3::constant(Cyclotomic::root_of_unity(n, 1)))
                    }
                    other => Err(err(at, format!("unknown identifier {other:?}"))),
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(_) => Err(err(at, "unexpected token")),
            None => Err(err(at, "unexpected end of input")),
        }
    }
}

fn constant_of(p: &Poly3) -> Option<Scalar> {
    if p.is_zero() {
        return Some(Scalar::zero());
    }
    let t = p.terms();
    if t.len() == 1 {
        if let Some(poly) = t.get(&(0, 0)) {
            if poly.is_constant() {
                return Some(poly.coeff(0));
            }
        }
    }
    None
}

fn term_count(p: &Poly3) -> usize {
    p.terms().values().map(|u| u.coeffs().len()).sum()
}

fn checked_mul(a: &Poly3, b: &Poly3, at: usize) -> Result<Poly3> {
    let da = a.total_degree().unwrap_or(0);
    let db = b.total_degree().unwrap_or(0);
    if da + db > MAX_DEGREE {
        return Err(err(at, "degree too large"));
    }
    if term_count(a).saturating_mul(term_count(b)) > MAX_TERMS {
        return Err(err(at, "expression too large"));
    }
    Ok(a.mul(b))
}

/// Parses a polynomial in `x, y, z`.
pub fn parse_poly(s: &str) -> Result<TriPoly<Scalar>> {
    let toks = tokenize(s)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: s.chars().count(),
        depth: 0,
    };
    if p.toks.is_empty() {
        return Err(err(0, "empty input"));
    }
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(err(p.here(), "trailing input"));
    }
    Ok(out)
}

pub fn parse_bipoly(s: &str) -> Result<BiPoly<Scalar>> {
    parse_poly(s)?
        .to_bipoly()
        .ok_or_else(|| err(0, "z is not allowed here"))
}

pub fn parse_unipoly(s: &str) -> Result<UniPoly<Scalar>> {
    parse_poly(s)?
        .to_unipoly()
        .ok_or_else(|| err(0, "only x is allowed here"))
}

pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let p = parse_poly(s)?;
    constant_of(&p).ok_or_else(|| err(0, "expected a constant"))
}

/// Comma-separated constants, e.g. `2,3,1/2,-1`.
pub fn parse_scalar_list(s: &str) -> Result<Vec<Scalar>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut offset = 0;
    let mut out = Vec::new();
    for piece in s.split(',') {
        let v = parse_scalar(piece).map_err(|e| shift(e, offset))?;
        out.push(v);
        offset += piece.chars().count() + 1;
    }
    Ok(out)
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, message } => Error::Parse {
            pos: pos + by,
            message,
        },
        other => other,
    }
}

/// `dx = g(x̄)`, `dy = a(x̄)·ȳ + b(x̄)` in text form `g=...;a=...;b=...`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShapeSpec {
    pub g: UniPoly<Scalar>,
    pub a: UniPoly<Scalar>,
    pub b: UniPoly<Scalar>,
}

/// Missing components default to zero; each name may appear once.
pub fn parse_shape(s: &str) -> Result<ShapeSpec> {
    let mut spec = ShapeSpec {
        g: UniPoly::zero(),
        a: UniPoly::zero(),
        b: UniPoly::zero(),
    };
    let mut seen = [false; 3];
    let mut offset = 0;
    for piece in s.split(';') {
        let width = piece.chars().count() + 1;
        if piece.trim().is_empty() {
            offset += width;
            continue;
        }
        let (name, body) = piece
            .split_once('=')
            .ok_or_else(|| err(offset, "expected name=polynomial"))?;
        let slot = match name.trim() {
            "g" => 0,
            "a" => 1,
            "b" => 2,
            other => return Err(err(offset, format!("unknown shape component {other:?}"))),
        };
        if seen[slot] {
            return Err(err(offset, "component given twice"));
        }
        seen[slot] = true;
        let p = parse_unipoly(body).map_err(|e| shift(e, offset + name.chars().count() + 1))?;
        match slot {
            0 => spec.g = p,
            1 => spec.a = p,
            _ => spec.b = p,
        }
        offset += width;
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational;

    #[test]
    fn parses_and_prints() {
        assert_eq!(parse_bipoly("y^2+4*x-4").unwrap().to_string(), "y^2+4*x-4");
        assert_eq!(parse_bipoly("(y+2*x)^2").unwrap().to_string(), "y^2+4*x*y+4*x^2");
        assert_eq!(parse_unipoly("-x^2 + 1/2").unwrap().to_string(), "-x^2+1/2");
        assert_eq!(parse_unipoly("(x+1)/2").unwrap().to_string(), "1/2*x+1/2");
        assert_eq!(parse_poly("x^2*z - y^2").unwrap().to_string(), "x^2*z-y^2");
        let s = parse_scalar("1/2*zeta(4)+3").unwrap();
        assert_eq!(s.to_string(), "1/2*zeta(4)+3");
        assert_eq!(parse_scalar("zeta(4)^2").unwrap(), Cyclotomic::from_int(-1));
        assert_eq!(
            parse_scalar_list("2, 3,1/2,-1").unwrap(),
            [rational(2, 1), rational(3, 1), rational(1, 2), rational(-1, 1)]
                .into_iter()
                .map(Cyclotomic::from_rational)
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn rejects_bad_input() {
        for bad in ["", "x+", "x/y", "x/0", "w", "x^999", "zeta(0)", "(x", "x)", "3 4", "x^(2)", "y+z"] {
            let r = if bad == "y+z" { parse_unipoly(bad).map(|_| ()) } else { parse_poly(bad).map(|_| ()) };
            assert!(matches!(r, Err(Error::Parse { .. })), "{bad:?} should fail");
        }
        assert!(parse_poly(&"(".repeat(500)).is_err());
    }

    #[test]
    fn shape_strings() {
        let s = parse_shape("g=x;a=3;b=x^2").unwrap();
        assert_eq!(s.g.to_string(), "x");
        assert_eq!(s.a.to_string(), "3");
        assert_eq!(s.b.to_string(), "x^2");
        let partial = parse_shape("a=1").unwrap();
        assert!(partial.g.is_zero() && partial.b.is_zero());
        assert!(parse_shape("g=x;g=1").is_err());
        assert!(parse_shape("h=x").is_err());
        assert!(parse_shape("g=y").is_err());
    }
}
