use std::fmt;

use super::coeff::{Coeff, CoeffRing};
use super::lincomb::{Algebra, LinComb, Monoid};
use super::monomial::Monomial;
use crate::error::{Error, Result};

impl Monoid for Monomial {
    fn mul(&self, other: &Self) -> Self {
        Monomial::mul(self, other)
    }
}

/// A sparse polynomial in `y_1, …, y_m` over a [`CoeffRing`]: an element of
/// `A_R(m)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    arity: usize,
    terms: LinComb<Monomial>,
}

impl Polynomial {
    pub fn zero(arity: usize, ring: CoeffRing) -> Self {
        Polynomial { arity, terms: LinComb::zero(ring) }
    }

    pub fn constant(arity: usize, ring: CoeffRing, c: impl Into<num_bigint::BigInt>) -> Self {
        Self::from_monomial(Monomial::one(arity), ring, &ring.from_int(c))
    }

    pub fn one(arity: usize, ring: CoeffRing) -> Self {
        Self::constant(arity, ring, 1)
    }

    /// `y_{index}` with a one-based index, matching the text syntax.
    pub fn var(arity: usize, ring: CoeffRing, index: usize) -> Result<Self> {
        if index == 0 || index > arity {
            return Err(Error::VariableOutOfRange { index, arity });
        }
        Ok(Self::from_monomial(Monomial::var(arity, index - 1), ring, &ring.one()))
    }

    pub fn from_monomial(mono: Monomial, ring: CoeffRing, c: &Coeff) -> Self {
        let arity = mono.arity();
        Polynomial { arity, terms: LinComb::term(ring, mono, c) }
    }

    pub fn from_terms(arity: usize, terms: LinComb<Monomial>) -> Result<Self> {
        if let Some(k) = terms.keys().find(|k| k.arity() != arity) {
            return Err(Error::ArityMismatch(arity, k.arity()));
        }
        Ok(Polynomial { arity, terms })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn ring(&self) -> CoeffRing {
        self.terms.ring()
    }

    pub fn terms(&self) -> &LinComb<Monomial> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mono: &Monomial) -> Coeff {
        self.terms.coeff(mono)
    }

    pub fn constant_term(&self) -> Coeff {
        self.terms.coeff(&Monomial::one(self.arity))
    }

    /// Total degree; the zero polynomial has none.
    pub fn degree(&self) -> Result<u32> {
        self.terms.keys().map(Monomial::degree).max().ok_or(Error::ZeroPolynomial)
    }

    /// Graded-lex leading monomial and coefficient.
    pub fn leading(&self) -> Result<(&Monomial, &Coeff)> {
        self.terms.leading().ok_or(Error::ZeroPolynomial)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch(self.arity, other.arity));
        }
        if self.ring() != other.ring() {
            return Err(Error::RingMismatch(self.ring(), other.ring()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Polynomial { arity: self.arity, terms: self.terms.add(&other.terms) })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Polynomial { arity: self.arity, terms: self.terms.sub(&other.terms) })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Polynomial { arity: self.arity, terms: self.terms.mul(&other.terms) })
    }

    pub fn neg(&self) -> Self {
        Polynomial { arity: self.arity, terms: self.terms.neg() }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        Polynomial { arity: self.arity, terms: self.terms.scale(c) }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Polynomial::one(self.arity, self.ring());
        for _ in 0..e {
            acc = Polynomial { arity: self.arity, terms: acc.terms.mul(&self.terms) };
        }
        acc
    }

    pub fn change_ring(&self, ring: CoeffRing) -> Result<Self> {
        Ok(Polynomial { arity: self.arity, terms: self.terms.change_ring(ring)? })
    }

    /// True iff invariant under the adjacent transpositions of the variables.
    pub fn is_symmetric(&self) -> bool {
        (0..self.arity.saturating_sub(1)).all(|i| {
            self.terms.iter().all(|(mono, c)| {
                let mut e = mono.exponents().to_vec();
                e.swap(i, i + 1);
                &self.terms.coeff(&Monomial::new(e)) == c
            })
        })
    }
}

impl Algebra for Polynomial {
    fn zero_like(&self) -> Self {
        Polynomial::zero(self.arity, self.ring())
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other).expect("incompatible polynomials")
    }
    fn add_scaled(&mut self, other: &Self, c: &Coeff) {
        self.terms.add_scaled_terms(&other.terms, c)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.terms, f)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.terms, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ringcore::parse::parse_polynomial;
    use proptest::prelude::*;

    const Z: CoeffRing = CoeffRing::Integers;

    fn p(text: &str, m: usize) -> Polynomial {
        parse_polynomial(text, m, Z).unwrap()
    }

    #[test]
    fn addition_examples() {
        assert_eq!(p("y1 + y2", 2).add(&p("-y2", 2)).unwrap(), p("y1", 2));
        assert_eq!(p("3*y1^2 - y2", 2).add(&Polynomial::zero(2, Z)).unwrap(), p("3*y1^2 - y2", 2));
        assert_eq!(p("y1 + 1", 1).add(&p("y1 - 1", 1)).unwrap(), p("2*y1", 1));
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(p("y1+y2", 2).mul(&p("y1-y2", 2)).unwrap(), p("y1^2 - y2^2", 2));
        assert_eq!(p("y1+y2", 2).mul(&Polynomial::one(2, Z)).unwrap(), p("y1+y2", 2));
        let f2 = CoeffRing::PrimeField(2);
        let s = parse_polynomial("y1+y2", 2, f2).unwrap();
        assert_eq!(s.pow(2), parse_polynomial("y1^2 + y2^2", 2, f2).unwrap());
    }

    #[test]
    fn mismatches_are_errors() {
        assert!(matches!(p("y1", 1).add(&p("y1", 2)), Err(Error::ArityMismatch(1, 2))));
        let q = p("y1", 1).change_ring(CoeffRing::Rationals).unwrap();
        assert!(matches!(p("y1", 1).mul(&q), Err(Error::RingMismatch(..))));
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(Polynomial::zero(2, Z).degree(), Err(Error::ZeroPolynomial));
        assert_eq!(p("y1^2*y2 + y2", 2).degree(), Ok(3));
        assert_eq!(p("3*y1^2 - y2", 2).to_string(), "3*y1^2 - y2");
    }

    fn naive_mul(a: &Polynomial, b: &Polynomial) -> Polynomial {
        // one term at a time, via repeated addition of single-term polynomials
        let mut acc = Polynomial::zero(a.arity(), a.ring());
        for (ma, ca) in a.terms().iter() {
            for (mb, cb) in b.terms().iter() {
                let t = Polynomial::from_monomial(ma.mul(mb), a.ring(), &(ca * cb));
                acc = acc.add(&t).unwrap();
            }
        }
        acc
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(((0u32..3, 0u32..3), -3i64..4), 0..5).prop_map(|terms| {
            let mut acc = Polynomial::zero(2, Z);
            for ((a, b), c) in terms {
                let t = Polynomial::from_monomial(Monomial::new(vec![a, b]), Z, &Z.from_int(c));
                acc = acc.add(&t).unwrap();
            }
            acc
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(a.mul(&b).unwrap(), naive_mul(&a, &b));
            prop_assert!(a.terms().iter().all(|(_, c)| !num_traits::Zero::is_zero(c)));
        }
    }
}
