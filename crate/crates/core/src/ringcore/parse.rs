//! Text syntax for every domain object.
//!
//! ```text
//! variable   := "y" digits                      (1-based, ≤ m)
//! monomial   := var ("^" digits)? ("*" var ("^" digits)?)*
//! polynomial := signed terms joined by "+"/"-"; a term is a product of an
//!               optional coefficient (integer or "(a/b)") and atoms
//! orbitindex := "E{" monomial ":" digits ("," monomial ":" digits)* "}"
//! generator  := "e[" digits ";" monomial "]"    (monomial primitive)
//! e1 symbol  := "e1[" monomial "]"
//! elementary := "e" digits
//! concrete   := "x" digits "(" digits ")"
//! ```
//! Whitespace is ignored between tokens. Inside brackets `*` between
//! variables may be omitted (`y1y3` reads as `y1*y3`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::coeff::{Coeff, CoeffRing};
use super::lincomb::LinComb;
use super::monomial::Monomial;
use super::poly::Polynomial;
use super::symbolic::{E1Poly, E1Sym, ElemSym, ElementaryPoly, GenSym, GeneratorPoly, SymMonomial};
use crate::concrete::ConcretePoly;
use crate::error::{Error, Result};
use crate::orbitring::{MultiSymElement, OrbitIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Monomial,
    Polynomial,
    OrbitIndex,
    GeneratorPoly,
}

/// A parsed object, tagged by kind.
#[derive(Clone, Debug, PartialEq)]
pub enum Parsed {
    Monomial(Monomial),
    Polynomial(Polynomial),
    OrbitIndex(OrbitIndex),
    GeneratorPoly(GeneratorPoly),
}

/// Parses `text` as the requested kind over `m` variables; coefficients are
/// read in `ring` unless the text carries a ring prefix.
pub fn parse(text: &str, kind: Kind, m: usize, ring: CoeffRing) -> Result<Parsed> {
    let (prefix, body) = split_ring_prefix(text)?;
    let ring = prefix.unwrap_or(ring);
    Ok(match kind {
        Kind::Monomial => Parsed::Monomial(parse_monomial(body, m)?),
        Kind::Polynomial => Parsed::Polynomial(parse_polynomial(body, m, ring)?),
        Kind::OrbitIndex => Parsed::OrbitIndex(parse_orbit_index(body, m)?),
        Kind::GeneratorPoly => Parsed::GeneratorPoly(parse_generator_poly(body, m, ring)?),
    })
}

/// Strips a leading `z:`, `q:` or `fp<p>:` ring selector.
pub fn split_ring_prefix(text: &str) -> Result<(Option<CoeffRing>, &str)> {
    let t = text.trim_start();
    for (tag, ring) in [("q:", CoeffRing::Rationals), ("z:", CoeffRing::Integers)] {
        if let Some(rest) = t.strip_prefix(tag) {
            return Ok((Some(ring), rest));
        }
    }
    if let Some(rest) = t.strip_prefix("fp") {
        let rest = rest.strip_prefix(':').unwrap_or(rest);
        let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
        if !digits.is_empty() && rest[digits.len()..].starts_with(':') {
            let p: u64 = digits.parse().map_err(|_| Error::parse(2, "bad prime"))?;
            return Ok((Some(CoeffRing::prime_field(p)?), &rest[digits.len() + 1..]));
        }
    }
    Ok((None, text))
}

pub fn parse_monomial(text: &str, m: usize) -> Result<Monomial> {
    let mut p = Parser::new(text, Some(m));
    p.skip_ws();
    let mono = if p.peek() == Some(b'1') {
        p.pos += 1;
        Monomial::one(m)
    } else {
        p.monomial_body(m)?
    };
    p.expect_end()?;
    Ok(mono)
}

pub fn parse_polynomial(text: &str, m: usize, ring: CoeffRing) -> Result<Polynomial> {
    let terms = Parser::new(text, Some(m)).lincomb(ring, |p| {
        p.skip_ws();
        if p.peek() == Some(b'y') {
            let start = p.pos;
            let idx = p.y_var(m)?;
            Ok(Some((idx, start)))
        } else {
            Ok(None)
        }
    })?;
    let mut out = LinComb::zero(ring);
    for (c, atoms) in terms {
        let mut mono = Monomial::one(m);
        for (i, e, _) in atoms {
            mono = mono.mul(&Monomial::var(m, i).pow(e));
        }
        out.add_term(mono, &c);
    }
    Polynomial::from_terms(m, out)
}

pub fn parse_orbit_index(text: &str, m: usize) -> Result<OrbitIndex> {
    let mut p = Parser::new(text, Some(m));
    let alpha = p.orbit_literal(m)?;
    p.expect_end()?;
    Ok(alpha)
}

pub fn parse_multisym(text: &str, m: usize, ring: CoeffRing) -> Result<MultiSymElement> {
    let terms = Parser::new(text, Some(m)).lincomb(ring, |p| {
        p.skip_ws();
        if p.peek() == Some(b'E') {
            let start = p.pos;
            Ok(Some((p.orbit_literal(m)?, start)))
        } else {
            Ok(None)
        }
    })?;
    let mut out = LinComb::zero(ring);
    for (c, atoms) in terms {
        let alpha = match atoms.as_slice() {
            [] => OrbitIndex::empty(m),
            [(a, 1, _)] => a.clone(),
            [(_, _, pos), ..] => return Err(Error::parse(*pos, "orbit-basis terms are linear: one E{..} per term")),
        };
        out.add_term(alpha, &c);
    }
    Ok(MultiSymElement::from_terms(m, out))
}

pub fn parse_generator_poly(text: &str, m: usize, ring: CoeffRing) -> Result<GeneratorPoly> {
    symbol_poly(text, m, ring, |p| {
        p.skip_ws();
        if p.rest().starts_with(b"e[") {
            let start = p.pos;
            p.pos += 2;
            let i = p.number_u32()?;
            p.expect(b';')?;
            let mu = p.monomial_body(m)?;
            p.expect(b']')?;
            let sym = GenSym::new(i, mu).map_err(|e| Error::parse(start, e.to_string()))?;
            Ok(Some((sym, start)))
        } else {
            Ok(None)
        }
    })
}

pub fn parse_e1_poly(text: &str, m: usize, ring: CoeffRing) -> Result<E1Poly> {
    symbol_poly(text, m, ring, |p| {
        p.skip_ws();
        if p.rest().starts_with(b"e1[") {
            let start = p.pos;
            p.pos += 3;
            let mu = p.monomial_body(m)?;
            p.expect(b']')?;
            Ok(Some((E1Sym(mu), start)))
        } else {
            Ok(None)
        }
    })
}

pub fn parse_elementary_poly(text: &str, ring: CoeffRing) -> Result<ElementaryPoly> {
    symbol_poly(text, 0, ring, |p| {
        p.skip_ws();
        if p.peek() == Some(b'e') && p.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            let start = p.pos;
            p.pos += 1;
            let i = p.number_u32()?;
            if i == 0 {
                return Err(Error::parse(start, "elementary index must be positive"));
            }
            Ok(Some((ElemSym(i), start)))
        } else {
            Ok(None)
        }
    })
}

/// Parses the concrete-ring syntax `x<i>(<j>)` with `i ≤ m`, `j ≤ n`.
pub fn parse_concrete(text: &str, n: usize, m: usize, ring: CoeffRing) -> Result<ConcretePoly> {
    let terms = Parser::new(text, None).lincomb(ring, |p| {
        p.skip_ws();
        if p.peek() == Some(b'x') {
            let start = p.pos;
            p.pos += 1;
            let i = p.number_usize()?;
            p.expect(b'(')?;
            let j = p.number_usize()?;
            p.expect(b')')?;
            if i == 0 || i > m {
                return Err(Error::VariableOutOfRange { index: i, arity: m });
            }
            if j == 0 || j > n {
                return Err(Error::SlotOutOfRange { slot: j, n });
            }
            Ok(Some(((i - 1, j - 1), start)))
        } else {
            Ok(None)
        }
    })?;
    let mut out = LinComb::zero(ring);
    for (c, atoms) in terms {
        let mut exps = vec![0u32; n * m];
        for ((var, slot), e, _) in atoms {
            exps[slot * m + var] += e;
        }
        out.add_term(Monomial::new(exps), &c);
    }
    Ok(ConcretePoly::from_terms(n, m, out))
}

fn symbol_poly<S, F>(text: &str, m: usize, ring: CoeffRing, mut atom: F) -> Result<LinComb<SymMonomial<S>>>
where
    S: super::symbolic::Symbol,
    F: FnMut(&mut Parser) -> Result<Option<(S, usize)>>,
{
    let terms = Parser::new(text, Some(m)).lincomb(ring, |p| atom(p))?;
    let mut out = LinComb::zero(ring);
    for (c, atoms) in terms {
        let mut mono = SymMonomial::one();
        for (s, e, _) in atoms {
            mono = mono.mul(&SymMonomial::var(s).pow(e));
        }
        out.add_term(mono, &c);
    }
    Ok(out)
}

type ParsedTerm<A> = (Coeff, Vec<(A, u32, usize)>);

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    arity: Option<usize>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, arity: Option<usize>) -> Self {
        Parser { src: text.as_bytes(), pos: 0, arity }
    }

    fn rest(&self) -> &[u8] {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_at(&self, off: usize) -> Option<u8> {
        self.src.get(self.pos + off).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.pos, msg)
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos < self.src.len() {
            Err(self.err("unexpected trailing input"))
        } else {
            Ok(())
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn number_u32(&mut self) -> Result<u32> {
        let start = self.pos;
        self.digits()?.parse().map_err(|_| Error::parse(start, "number too large"))
    }

    fn number_usize(&mut self) -> Result<usize> {
        let start = self.pos;
        self.digits()?.parse().map_err(|_| Error::parse(start, "number too large"))
    }

    fn y_var(&mut self, m: usize) -> Result<usize> {
        self.skip_ws();
        if self.peek() != Some(b'y') {
            return Err(self.err("expected variable y<i>"));
        }
        self.pos += 1;
        let idx = self.number_usize()?;
        if idx == 0 || idx > m {
            return Err(Error::VariableOutOfRange { index: idx, arity: m });
        }
        Ok(idx - 1)
    }

    fn exponent(&mut self) -> Result<u32> {
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.number_u32()
        } else {
            Ok(1)
        }
    }

    /// A nonconstant monomial: var(^d)? ((*)? var(^d)?)*
    fn monomial_body(&mut self, m: usize) -> Result<Monomial> {
        let mut mono = Monomial::one(m);
        loop {
            let i = self.y_var(m)?;
            let e = self.exponent()?;
            mono = mono.mul(&Monomial::var(m, i).pow(e));
            self.skip_ws();
            match self.peek() {
                Some(b'*') if self.peek_at(1).is_some() => {
                    self.pos += 1;
                }
                Some(b'y') => {}
                _ => break,
            }
        }
        Ok(mono)
    }

    fn orbit_literal(&mut self, m: usize) -> Result<OrbitIndex> {
        self.skip_ws();
        let start = self.pos;
        if !self.rest().starts_with(b"E{") {
            return Err(self.err("expected 'E{'"));
        }
        self.pos += 2;
        let mut entries: Vec<(Monomial, u32)> = Vec::new();
        self.skip_ws();
        if self.peek() == Some(b'}') {
            self.pos += 1;
            return Ok(OrbitIndex::empty(m));
        }
        loop {
            let key_pos = self.pos;
            let mu = self.monomial_body(m)?;
            self.expect(b':')?;
            let mult = self.number_u32()?;
            if mult == 0 {
                return Err(Error::parse(key_pos, "multiplicities must be positive"));
            }
            if entries.iter().any(|(k, _)| *k == mu) {
                return Err(Error::parse(key_pos, format!("duplicate monomial {mu}")));
            }
            entries.push((mu, mult));
            self.skip_ws();
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b'}') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.err("expected ',' or '}'")),
            }
        }
        OrbitIndex::from_entries(m, entries).map_err(|e| Error::parse(start, e.to_string()))
    }

    /// `( "(" ["-"] digits "/" digits ")" | digits )`
    fn coefficient(&mut self) -> Result<Option<BigRational>> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits()?;
                let num: BigInt = d.parse().unwrap();
                self.skip_ws();
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den: BigInt = self.digits()?.parse().unwrap();
                    if den.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    return Ok(Some(BigRational::new(num, den)));
                }
                Ok(Some(BigRational::from_integer(num)))
            }
            Some(b'(') => {
                let save = self.pos;
                self.pos += 1;
                self.skip_ws();
                let neg = if self.peek() == Some(b'-') {
                    self.pos += 1;
                    true
                } else {
                    false
                };
                if !self.peek_ws_digit() {
                    self.pos = save;
                    return Err(self.err("expected rational coefficient"));
                }
                let num: BigInt = self.digits()?.parse().unwrap();
                self.skip_ws();
                let den: BigInt = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.digits()?.parse().unwrap()
                } else {
                    BigInt::one()
                };
                if den.is_zero() {
                    return Err(self.err("zero denominator"));
                }
                self.expect(b')')?;
                let r = BigRational::new(num, den);
                Ok(Some(if neg { -r } else { r }))
            }
            _ => Ok(None),
        }
    }

    fn peek_ws_digit(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_some_and(|c| c.is_ascii_digit())
    }

    fn lincomb<A, F>(&mut self, ring: CoeffRing, mut atom: F) -> Result<Vec<ParsedTerm<A>>>
    where
        F: FnMut(&mut Parser) -> Result<Option<(A, usize)>>,
    {
        let mut out = Vec::new();
        self.skip_ws();
        if self.pos >= self.src.len() {
            return Err(self.err("empty input"));
        }
        let mut sign = 1i32;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -1;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        loop {
            let term_pos = self.pos;
            let mut coeff = BigRational::from_integer(BigInt::from(sign));
            let mut atoms = Vec::new();
            let mut first = true;
            loop {
                self.skip_ws();
                if let Some(c) = self.coefficient()? {
                    coeff *= c;
                } else if let Some((a, pos)) = atom(self)? {
                    let e = self.exponent()?;
                    atoms.push((a, e, pos));
                } else {
                    return Err(self.err(if first { "expected a term" } else { "expected a factor after '*'" }));
                }
                first = false;
                self.skip_ws();
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
            let c = ring.convert(&coeff).map_err(|e| Error::parse(term_pos, e.to_string()))?;
            out.push((c, atoms));
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                Some(_) => return Err(self.err("expected '+', '-' or end of input")),
            }
        }
        if self.arity.is_none() && out.is_empty() {
            return Err(self.err("empty input"));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: CoeffRing = CoeffRing::Integers;

    #[test]
    fn monomial_literal() {
        assert_eq!(parse_monomial("y1^2*y2", 2).unwrap(), Monomial::new(vec![2, 1]));
        assert_eq!(parse_monomial(" y2 * y1 ", 2).unwrap(), Monomial::new(vec![1, 1]));
        assert!(matches!(parse_monomial("y3", 2), Err(Error::VariableOutOfRange { index: 3, arity: 2 })));
        match parse_monomial("y1**y2", 2) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn orbit_literal() {
        let a = parse_orbit_index("E{y1:2, y2:1}", 2).unwrap();
        assert_eq!(a.multiplicity(&Monomial::new(vec![1, 0])), 2);
        assert_eq!(a.multiplicity(&Monomial::new(vec![0, 1])), 1);
        assert_eq!(a.size(), 3);
        assert_eq!(parse_orbit_index("E{}", 3).unwrap(), OrbitIndex::empty(3));
        assert_eq!(parse_orbit_index("E{y1y3:1, y2*y3:1}", 3).unwrap().to_string(), "E{y1*y3:1, y2*y3:1}");
        assert!(parse_orbit_index("E{y1:0}", 1).is_err());
        assert!(parse_orbit_index("E{y1:1, y1:2}", 1).is_err());
    }

    #[test]
    fn polynomial_literal() {
        let p = parse_polynomial("3*y1^2 - y2", 2, Z).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.to_string(), "3*y1^2 - y2");
        let q = parse_polynomial("-2 + y1*3*y1", 1, Z).unwrap();
        assert_eq!(q.to_string(), "3*y1^2 - 2");
        assert!(parse_polynomial("(1/2)*y1", 1, Z).is_err());
        assert!(parse_polynomial("y1 +", 1, Z).is_err());
        assert!(parse_polynomial("", 1, Z).is_err());
    }

    #[test]
    fn ring_prefixes() {
        match parse("fp5: 7*y1", Kind::Polynomial, 1, Z).unwrap() {
            Parsed::Polynomial(p) => {
                assert_eq!(p.ring(), CoeffRing::PrimeField(5));
                assert_eq!(p.to_string(), "2*y1");
            }
            _ => unreachable!(),
        }
        match parse("q: (1/2)*y1", Kind::Polynomial, 1, Z).unwrap() {
            Parsed::Polynomial(p) => assert_eq!(p.to_string(), "(1/2)*y1"),
            _ => unreachable!(),
        }
    }

    #[test]
    fn generator_literal() {
        let g = parse_generator_poly("e[2;y1]*e[1;y2] - e[1;y1]*e[1;y1*y2] + e[1;y1^2*y2]", 2, Z).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.to_string(), "e[2;y1]*e[1;y2] - e[1;y1]*e[1;y1*y2] + e[1;y1^2*y2]");
        assert!(parse_generator_poly("e[1;y1^2]", 1, Z).is_err());
        let q = CoeffRing::Rationals;
        let h = parse_e1_poly("(1/2)*e1[y1]^2 - (1/2)*e1[y1^2]", 1, q).unwrap();
        assert_eq!(h.to_string(), "(1/2)*e1[y1]^2 - (1/2)*e1[y1^2]");
    }

    #[test]
    fn elementary_and_concrete_literals() {
        let e = parse_elementary_poly("e2^2 - 2*e1*e3 + 2*e4", Z).unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!(e.to_string(), "e2^2 - 2*e1*e3 + 2*e4");
        let c = parse_concrete("x1(2)^3*x2(1) + 1", 2, 2, Z).unwrap();
        assert_eq!(c.to_string(), "x2(1)*x1(2)^3 + 1");
        assert!(parse_concrete("x1(3)", 2, 1, Z).is_err());
    }

    #[test]
    fn multisym_literal() {
        let x = parse_multisym("2*E{y1:2} + E{y1^2:1}", 1, Z).unwrap();
        assert_eq!(x.to_string(), "E{y1^2:1} + 2*E{y1:2}");
        assert!(parse_multisym("E{y1:1}*E{y1:1}", 1, Z).is_err());
    }
}
