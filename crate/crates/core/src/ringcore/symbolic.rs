//! Polynomials in named symbols: `e1, e2, …` for classical symmetric
//! functions, `e[i;μ]` for the generators of the free ring `C(m)`, and
//! `e1[μ]` for the rational generators.
//!
//! Symbol order is "print order": smaller symbols are more significant and
//! print first inside a product. Products are compared graded reverse
//! lexicographically with respect to that order.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use super::coeff::{Coeff, CoeffRing};
use super::lincomb::{evaluate_in, Algebra, LinComb, Monoid};
use super::monomial::Monomial;
use crate::error::{Error, Result};

pub trait Symbol: Ord + Clone + Hash + fmt::Debug + fmt::Display {}

/// A product of symbols with positive exponents, sorted by symbol.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymMonomial<S> {
    factors: Vec<(S, u32)>,
}

impl<S: Symbol> SymMonomial<S> {
    pub fn one() -> Self {
        SymMonomial { factors: Vec::new() }
    }

    pub fn var(s: S) -> Self {
        SymMonomial { factors: vec![(s, 1)] }
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (S, u32)>) -> Self {
        let mut out = SymMonomial::one();
        for (s, e) in factors {
            out = out.mul(&SymMonomial::var(s).pow(e));
        }
        out
    }

    pub fn factors(&self) -> &[(S, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of factors counted with multiplicity.
    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, s: &S) -> u32 {
        self.factors.binary_search_by(|(t, _)| t.cmp(s)).map(|i| self.factors[i].1).unwrap_or(0)
    }

    pub fn pow(&self, k: u32) -> Self {
        if k == 0 {
            return SymMonomial::one();
        }
        SymMonomial { factors: self.factors.iter().map(|(s, e)| (s.clone(), e * k)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            match self.factors[i].0.cmp(&other.factors[j].0) {
                Ordering::Less => {
                    out.push(self.factors[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.factors[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.factors[i].0.clone(), self.factors[i].1 + other.factors[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.factors[i..]);
        out.extend_from_slice(&other.factors[j..]);
        SymMonomial { factors: out }
    }
}

impl<S: Symbol> Ord for SymMonomial<S> {
    fn cmp(&self, other: &Self) -> Ordering {
        let by_degree = self.degree().cmp(&other.degree());
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        // scan from the least significant symbol; a larger exponent there loses
        let (mut a, mut b) = (self.factors.iter().rev().peekable(), other.factors.iter().rev().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Greater,
                (Some(_), None) => return Ordering::Less,
                (Some((sa, ea)), Some((sb, eb))) => match sa.cmp(sb) {
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Equal => {
                        if ea != eb {
                            return eb.cmp(ea);
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
    }
}

impl<S: Symbol> PartialOrd for SymMonomial<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<S: Symbol> Monoid for SymMonomial<S> {
    fn mul(&self, other: &Self) -> Self {
        SymMonomial::mul(self, other)
    }
}

impl<S: Symbol> fmt::Display for SymMonomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> =
            self.factors.iter().map(|(s, e)| if *e == 1 { s.to_string() } else { format!("{s}^{e}") }).collect();
        f.write_str(&parts.join("*"))
    }
}

impl<S: Symbol> fmt::Debug for SymMonomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub type SymPoly<S> = LinComb<SymMonomial<S>>;

/// Shared helpers for symbol polynomials.
pub trait SymPolyExt<S: Symbol> {
    fn symbol(ring: CoeffRing, s: S) -> Self;
    fn constant(ring: CoeffRing, c: i64) -> Self;
    fn max_degree(&self) -> u32;
    /// Substitutes every symbol by an element of `A` and expands.
    fn evaluate<A: Algebra>(&self, one: &A, image: impl FnMut(&S) -> A) -> A;
    fn symbols(&self) -> Vec<S>;
}

impl<S: Symbol> SymPolyExt<S> for SymPoly<S> {
    fn symbol(ring: CoeffRing, s: S) -> Self {
        LinComb::term(ring, SymMonomial::var(s), &ring.one())
    }

    fn constant(ring: CoeffRing, c: i64) -> Self {
        LinComb::term(ring, SymMonomial::one(), &Coeff::from_integer(c.into()))
    }

    fn max_degree(&self) -> u32 {
        self.keys().map(SymMonomial::degree).max().unwrap_or(0)
    }

    fn evaluate<A: Algebra>(&self, one: &A, image: impl FnMut(&S) -> A) -> A {
        let ring = self.ring();
        evaluate_in(self.iter().map(|(k, c)| (k.factors().to_vec(), c.clone())), ring, one, image)
    }

    fn symbols(&self) -> Vec<S> {
        let mut out: Vec<S> = self.keys().flat_map(|k| k.factors().iter().map(|(s, _)| s.clone())).collect();
        out.sort();
        out.dedup();
        out
    }
}

/// The classical elementary symmetric function `e_i` (`e1`, `e2`, …).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ElemSym(pub u32);

impl Symbol for ElemSym {}

impl fmt::Display for ElemSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

impl fmt::Debug for ElemSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The power sum `p_j`; used internally for Newton conversions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PowerSym(pub u32);

impl Symbol for PowerSym {}

impl fmt::Display for PowerSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}", self.0)
    }
}

impl fmt::Debug for PowerSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The generator `e_{i,μ}` of `C(m)`, with `μ` primitive.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenSym {
    index: u32,
    mu: Monomial,
}

impl GenSym {
    pub fn new(index: u32, mu: Monomial) -> Result<Self> {
        if index == 0 {
            return Err(Error::Invalid("generator index must be positive".into()));
        }
        if !mu.is_primitive() {
            return Err(Error::NotPrimitive(mu.to_string()));
        }
        Ok(GenSym { index, mu })
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn mu(&self) -> &Monomial {
        &self.mu
    }

    /// `∂(e_{i,μ}) = i·∂(μ)`.
    pub fn multidegree(&self) -> Vec<u32> {
        self.mu.exponents().iter().map(|e| e * self.index).collect()
    }
}

fn symbol_key(mu: &Monomial) -> (u32, std::cmp::Reverse<&Monomial>) {
    (mu.degree(), std::cmp::Reverse(mu))
}

impl Ord for GenSym {
    fn cmp(&self, other: &Self) -> Ordering {
        symbol_key(&self.mu).cmp(&symbol_key(&other.mu)).then_with(|| self.index.cmp(&other.index))
    }
}

impl PartialOrd for GenSym {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Symbol for GenSym {}

impl fmt::Display for GenSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e[{};{}]", self.index, self.mu)
    }
}

impl fmt::Debug for GenSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The rational generator `e_1(μ)` for an arbitrary positive-degree monomial.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct E1Sym(pub Monomial);

impl Ord for E1Sym {
    fn cmp(&self, other: &Self) -> Ordering {
        symbol_key(&self.0).cmp(&symbol_key(&other.0))
    }
}

impl PartialOrd for E1Sym {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Symbol for E1Sym {}

impl fmt::Display for E1Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e1[{}]", self.0)
    }
}

impl fmt::Debug for E1Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub type ElementaryPoly = SymPoly<ElemSym>;
pub type GeneratorPoly = SymPoly<GenSym>;
pub type E1Poly = SymPoly<E1Sym>;
pub type PowerPoly = SymPoly<PowerSym>;

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: u32) -> SymMonomial<ElemSym> {
        SymMonomial::var(ElemSym(i))
    }

    #[test]
    fn grevlex_on_elementary_symbols() {
        // e1^3 > e1*e2 > e3 and e2^2 > e1*e3 > e4
        assert!(e(1).pow(3) > e(1).mul(&e(2)));
        assert!(e(1).mul(&e(2)) > e(3));
        assert!(e(2).pow(2) > e(1).mul(&e(3)));
        assert!(e(1).mul(&e(3)) > e(4));
        assert_eq!(e(3).mul(&e(1)).to_string(), "e1*e3");
    }

    #[test]
    fn generator_symbols_require_primitive() {
        assert!(GenSym::new(1, Monomial::new(vec![2, 0])).is_err());
        let g = GenSym::new(2, Monomial::new(vec![1, 2])).unwrap();
        assert_eq!(g.to_string(), "e[2;y1*y2^2]");
        assert_eq!(g.multidegree(), vec![2, 4]);
    }

    #[test]
    fn exponent_lookup() {
        let m = e(1).pow(2).mul(&e(4));
        assert_eq!(m.exponent(&ElemSym(1)), 2);
        assert_eq!(m.exponent(&ElemSym(2)), 0);
        assert_eq!(m.degree(), 3);
    }
}
