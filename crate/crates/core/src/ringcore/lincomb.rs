//! Finite linear combinations of ordered keys with exact coefficients.
//!
//! Every polynomial-like object in the crate is a [`LinComb`] over some key
//! type: monomials in `y`, exponent matrices of the concrete ring, orbit
//! indices, or products of symbols.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::coeff::{format_coeff, Coeff, CoeffRing};
use crate::error::{Error, Result};

/// Keys that multiply like monomials.
pub trait Monoid: Ord + Clone {
    fn mul(&self, other: &Self) -> Self;
}

/// A commutative algebra over a [`CoeffRing`], enough structure to evaluate a
/// polynomial expression in it.
pub trait Algebra: Clone {
    fn zero_like(&self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn add_scaled(&mut self, other: &Self, c: &Coeff);
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord> {
    ring: CoeffRing,
    terms: BTreeMap<K, Coeff>,
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero(ring: CoeffRing) -> Self {
        LinComb { ring, terms: BTreeMap::new() }
    }

    /// `c · key`, with `c` given as an exact value converted into the ring.
    pub fn term(ring: CoeffRing, key: K, c: &Coeff) -> Self {
        let mut out = Self::zero(ring);
        out.add_term(key, &ring.convert(c).expect("coefficient not representable in ring"));
        out
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending key order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&K, &Coeff)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl DoubleEndedIterator<Item = &K> {
        self.terms.keys()
    }

    pub fn coeff(&self, key: &K) -> Coeff {
        self.terms.get(key).cloned().unwrap_or_else(Coeff::zero)
    }

    /// The term with the greatest key.
    pub fn leading(&self) -> Option<(&K, &Coeff)> {
        self.terms.iter().next_back()
    }

    /// Adds `c · key`; `c` must already be canonical for the ring.
    pub fn add_term(&mut self, key: K, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let s = self.ring.add(o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled_terms(&mut self, other: &Self, c: &Coeff) {
        assert_eq!(self.ring, other.ring, "coefficient ring mismatch");
        for (k, v) in &other.terms {
            let prod = self.ring.mul(v, c);
            self.add_term(k.clone(), &prod);
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        let mut out = self.clone();
        out.add_scaled_terms(other, &self.ring.one());
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("coefficient ring mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled_terms(other, &self.ring.from_int(-1));
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.ring.from_int(-1))
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let mut out = Self::zero(self.ring);
        out.add_scaled_terms(self, c);
        out
    }

    /// Reinterprets the coefficients in another ring (e.g. Z → F_p or Z → Q).
    pub fn change_ring(&self, ring: CoeffRing) -> Result<Self> {
        let mut out = Self::zero(ring);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &ring.convert(v)?);
        }
        Ok(out)
    }

    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> LinComb<K2> {
        let mut out = LinComb::zero(self.ring);
        for (k, v) in &self.terms {
            out.add_term(f(k), v);
        }
        out
    }

    pub fn retain(&mut self, mut keep: impl FnMut(&K) -> bool) {
        self.terms.retain(|k, _| keep(k));
    }

    pub(crate) fn from_canonical_terms(ring: CoeffRing, terms: BTreeMap<K, Coeff>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero() && ring.is_canonical(c)));
        LinComb { ring, terms }
    }
}

impl<K: Monoid> LinComb<K> {
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ring, other.ring, "coefficient ring mismatch");
        let mut out = Self::zero(self.ring);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.mul(b), &self.ring.mul(ca, cb));
            }
        }
        out
    }
}

impl<K: Monoid> Algebra for LinComb<K> {
    fn zero_like(&self) -> Self {
        Self::zero(self.ring)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn add_scaled(&mut self, other: &Self, c: &Coeff) {
        self.add_scaled_terms(other, c)
    }
}

/// Writes `Σ c·key` in descending key order using the shared coefficient syntax:
/// unit coefficients are omitted, rationals are parenthesised, constants
/// (keys whose text is `1`) print the bare number.
pub(crate) fn format_terms<'a, I>(terms: I) -> String
where
    I: Iterator<Item = (String, &'a Coeff)>,
{
    let mut out = String::new();
    for (i, (key, c)) in terms.enumerate() {
        let negative = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let num = if mag.is_integer() { format_coeff(&mag) } else { format!("({})", format_coeff(&mag)) };
        if key == "1" {
            out.push_str(&num);
        } else if mag.is_one() {
            out.push_str(&key);
        } else {
            out.push_str(&num);
            out.push('*');
            out.push_str(&key);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<K: Ord + Clone + fmt::Display> fmt::Display for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(self.terms.iter().rev().map(|(k, c)| (k.to_string(), c))))
    }
}

impl<K: Ord + Clone + fmt::Display> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.ring, self)
    }
}

/// Evaluates `Σ c · Π s^e` by substituting each symbol with an algebra element.
/// Powers are memoised per symbol.
pub fn evaluate_in<S, A, I, F>(terms: I, ring: CoeffRing, one: &A, mut image: F) -> A
where
    S: Ord + Clone,
    A: Algebra,
    I: IntoIterator<Item = (Vec<(S, u32)>, Coeff)>,
    F: FnMut(&S) -> A,
{
    let mut powers: BTreeMap<S, Vec<A>> = BTreeMap::new();
    let mut acc = one.zero_like();
    for (factors, c) in terms {
        let mut prod = one.clone();
        for (s, e) in factors {
            let entry = powers.entry(s.clone()).or_insert_with(|| vec![one.clone()]);
            if entry.len() == 1 {
                entry.push(image(&s));
            }
            while entry.len() <= e as usize {
                let next = entry.last().unwrap().mul_ref(&entry[1]);
                entry.push(next);
            }
            prod = prod.mul_ref(&entry[e as usize]);
        }
        acc.add_scaled(&prod, &ring.convert(&c).expect("coefficient not representable"));
    }
    acc
}
