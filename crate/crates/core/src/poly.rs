//! Sparse polynomials with coefficients in F_p.

use std::cmp::Ordering;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::ring::Ring;

/// A polynomial as a list of `(monomial, coefficient)` pairs, strictly
/// descending in the ring's monomial order, with no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, u32)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(ring: &Ring, c: u32) -> Self {
        let c = c % ring.characteristic();
        if c == 0 {
            Poly::zero()
        } else {
            Poly { terms: vec![(ring.one_monomial(), c)] }
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, 1)
    }

    pub fn monomial(m: Monomial, c: u32) -> Self {
        if c == 0 {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from unsorted terms, combining duplicates.
    pub fn from_terms(ring: &Ring, mut terms: Vec<(Monomial, u32)>) -> Self {
        let order = ring.order();
        let field = ring.field();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % field.characteristic();
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(*lc, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Poly { terms: out }
    }

    /// Removes and returns the leading term.
    pub(crate) fn pop_lead(&mut self) -> Option<(Monomial, u32)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    /// Appends a term smaller than every existing term.
    pub(crate) fn push_smallest(&mut self, m: Monomial, c: u32) {
        debug_assert!(c != 0);
        self.terms.push((m, c));
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant or zero.
    pub fn is_constant(&self) -> bool {
        match self.terms.as_slice() {
            [] => true,
            [(m, _)] => m.is_one(),
            _ => false,
        }
    }

    /// The constant value if this is a nonzero constant.
    pub fn unit_value(&self) -> Option<u32> {
        match self.terms.as_slice() {
            [(m, c)] if m.is_one() => Some(*c),
            _ => None,
        }
    }

    #[inline]
    pub fn lead(&self) -> Option<(&Monomial, u32)> {
        self.terms.first().map(|(m, c)| (m, *c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn neg(&self, ring: &Ring) -> Poly {
        let f = ring.field();
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(*c))).collect() }
    }

    pub fn scale(&self, ring: &Ring, c: u32) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        let f = ring.field();
        Poly { terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(*a, c))).collect() }
    }

    pub fn mul_term(&self, ring: &Ring, m: &Monomial, c: u32) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        let f = ring.field();
        // multiplication by a monomial preserves the order
        Poly { terms: self.terms.iter().map(|(t, a)| (t.mul(m), f.mul(*a, c))).collect() }
    }

    pub fn add(&self, ring: &Ring, other: &Poly) -> Poly {
        self.combine(ring, other, 1, None)
    }

    pub fn sub(&self, ring: &Ring, other: &Poly) -> Poly {
        self.combine(ring, other, ring.field().neg(1), None)
    }

    /// `self - c * m * g`, the reduction step of the division algorithm.
    pub fn sub_mul_term(&self, ring: &Ring, c: u32, m: &Monomial, g: &Poly) -> Poly {
        self.combine(ring, g, ring.field().neg(c), Some(m))
    }

    /// `self + c * shift * other`, merged in one pass.
    fn combine(&self, ring: &Ring, other: &Poly, c: u32, shift: Option<&Monomial>) -> Poly {
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let field = ring.field();
        let order = ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |k: usize| -> Monomial {
            match shift {
                Some(s) => other.terms[k].0.mul(s),
                None => other.terms[k].0.clone(),
            }
        };
        let mut pending: Option<Monomial> = if other.terms.is_empty() { None } else { Some(shifted(0)) };
        while i < self.terms.len() || pending.is_some() {
            let ord = match (&pending, self.terms.get(i)) {
                (None, _) => Ordering::Greater,
                (Some(_), None) => Ordering::Less,
                (Some(b), Some((a, _))) => order.cmp(a, b),
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let m = pending.take().unwrap();
                    out.push((m, field.mul(other.terms[j].1, c)));
                    j += 1;
                    pending = if j < other.terms.len() { Some(shifted(j)) } else { None };
                }
                Ordering::Equal => {
                    let m = pending.take().unwrap();
                    let v = field.add(self.terms[i].1, field.mul(other.terms[j].1, c));
                    if v != 0 {
                        out.push((m, v));
                    }
                    i += 1;
                    j += 1;
                    pending = if j < other.terms.len() { Some(shifted(j)) } else { None };
                }
            }
        }
        Poly { terms: out }
    }

    pub fn mul(&self, ring: &Ring, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Poly::zero();
        for (m, c) in &small.terms {
            acc = acc.combine(ring, big, *c, Some(m));
        }
        acc
    }

    pub fn pow(&self, ring: &Ring, e: u32) -> Poly {
        let mut acc = Poly::one(ring);
        for _ in 0..e {
            acc = acc.mul(ring, self);
        }
        acc
    }

    /// Multiplies through so the leading coefficient is 1.
    pub fn monic(&self, ring: &Ring) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some((_, 1)) => self.clone(),
            Some((_, c)) => self.scale(ring, ring.field().inv(c)),
        }
    }

    /// The canonical text form: terms in descending order, coefficients in
    /// `[1, p-1]`, joined by ` + `.
    pub fn to_canonical(&self, ring: &Ring) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if *c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (v, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(ring.var_names()[v].clone()),
                    _ => {
                        let mut s = ring.var_names()[v].clone();
                        let _ = write!(s, "^{e}");
                        factors.push(s);
                    }
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// Parses `3*x^2*y - (x + 1)^2 + 6`. Coefficients are integers reduced
    /// mod p; variables must belong to the ring.
    pub fn parse(ring: &Ring, s: &str) -> Result<Poly> {
        let tokens = tokenize(s)?;
        let mut p = Parser { ring, tokens, pos: 0 };
        let f = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Parse(format!("trailing input in polynomial `{s}`")));
        }
        Ok(f)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                let v = lit.parse::<u64>().map_err(|_| Error::Parse(format!("integer `{lit}` too large")))?;
                out.push(Tok::Num(v));
            }
            a if a.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}` in polynomial"))),
        }
    }
    if out.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Ring,
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                self.term()?.neg(self.ring)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(self.ring, &t);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(self.ring, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(self.ring, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = match self.tokens.get(self.pos).cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                let p = self.ring.characteristic() as u64;
                Poly::constant(self.ring, (v % p) as u32)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let i = self
                    .ring
                    .var_index(&name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
                self.ring.var(i)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(Error::Parse("missing `)`".into()));
                }
                self.pos += 1;
                e
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                return Ok(self.factor()?.neg(self.ring));
            }
            other => return Err(Error::Parse(format!("unexpected token {other:?}"))),
        };
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some(Tok::Num(e)) if *e <= u16::MAX as u64 => {
                    let e = *e as u32;
                    self.pos += 1;
                    return Ok(base.pow(self.ring, e));
                }
                _ => return Err(Error::Parse("expected exponent after `^`".into())),
            }
        }
        Ok(base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;

    fn ring() -> Ring {
        Ring::bare(7, vec!["x".into(), "y".into()], MonomialOrder::Grevlex).unwrap()
    }

    #[test]
    fn canonical_form_prints_positive_coefficients() {
        let r = ring();
        let f = Poly::parse(&r, "3*x^2*y - y").unwrap();
        assert_eq!(f.to_canonical(&r), "3*x^2*y + 6*y");
        assert_eq!(Poly::parse(&r, "x - x").unwrap().to_canonical(&r), "0");
        assert_eq!(Poly::parse(&r, "8").unwrap().to_canonical(&r), "1");
    }

    #[test]
    fn expansion_and_powers() {
        let r = ring();
        let f = Poly::parse(&r, "(x + y)^2").unwrap();
        assert_eq!(f.to_canonical(&r), "x^2 + 2*x*y + y^2");
        let g = Poly::parse(&r, "-(x - 1)*(x + 1)").unwrap();
        assert_eq!(g.to_canonical(&r), "6*x^2 + 1");
    }

    #[test]
    fn parse_errors() {
        let r = ring();
        assert!(Poly::parse(&r, "z").is_err());
        assert!(Poly::parse(&r, "x^").is_err());
        assert!(Poly::parse(&r, "(x").is_err());
        assert!(Poly::parse(&r, "").is_err());
    }

    #[test]
    fn sub_mul_term_matches_mul_then_sub() {
        let r = ring();
        let f = Poly::parse(&r, "x^3 + 2*x*y + 5").unwrap();
        let g = Poly::parse(&r, "x + y^2").unwrap();
        let m = Monomial::from_exponents(&[1, 1]);
        let direct = f.sub(&r, &g.mul(&r, &Poly::monomial(m.clone(), 3)));
        assert_eq!(f.sub_mul_term(&r, 3, &m, &g), direct);
    }
}
