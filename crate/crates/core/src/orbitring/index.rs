use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ringcore::{factorial, Monomial};

/// A finitely supported map `α` from nonconstant monomials to positive
/// multiplicities, indexing the orbit-basis element `e_α`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrbitIndex {
    arity: usize,
    entries: BTreeMap<Monomial, u32>,
}

impl OrbitIndex {
    /// The empty index; `e_∅ = 1`.
    pub fn empty(arity: usize) -> Self {
        OrbitIndex { arity, entries: BTreeMap::new() }
    }

    pub fn singleton(mu: Monomial, k: u32) -> Result<Self> {
        let arity = mu.arity();
        Self::from_entries(arity, [(mu, k)])
    }

    /// Builds an index from `(μ, α(μ))` pairs; repeated monomials add up.
    pub fn from_entries(arity: usize, entries: impl IntoIterator<Item = (Monomial, u32)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (mu, k) in entries {
            if mu.arity() != arity {
                return Err(Error::ArityMismatch(arity, mu.arity()));
            }
            if mu.is_one() {
                return Err(Error::Invalid("orbit index keys need positive degree".into()));
            }
            if k == 0 {
                return Err(Error::Invalid("orbit index multiplicities must be positive".into()));
            }
            *map.entry(mu).or_insert(0) += k;
        }
        Ok(OrbitIndex { arity, entries: map })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `|α| = Σ α(μ)`.
    pub fn size(&self) -> u32 {
        self.entries.values().sum()
    }

    pub fn multiplicity(&self, mu: &Monomial) -> u32 {
        self.entries.get(mu).copied().unwrap_or(0)
    }

    /// `∂(α) = Σ α(μ)·∂(μ)`.
    pub fn multidegree(&self) -> Vec<u32> {
        let mut a = vec![0u32; self.arity];
        for (mu, k) in &self.entries {
            for (ai, e) in a.iter_mut().zip(mu.exponents()) {
                *ai += k * e;
            }
        }
        a
    }

    pub fn degree(&self) -> u32 {
        self.entries.iter().map(|(mu, k)| k * mu.degree()).sum()
    }

    /// Support in ascending graded-lex order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Monomial, u32)> + ExactSizeIterator {
        self.entries.iter().map(|(mu, k)| (mu, *k))
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    /// The largest support monomial together with the rest of the index.
    pub fn split_largest(&self) -> Option<((Monomial, u32), OrbitIndex)> {
        let (mu, k) = self.entries.iter().next_back()?;
        let mut rest = self.clone();
        rest.entries.remove(mu);
        Some(((mu.clone(), *k), rest))
    }
}

impl Ord for OrbitIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        let (da, db) = (self.multidegree(), other.multidegree());
        let ta: u32 = da.iter().sum();
        let tb: u32 = db.iter().sum();
        ta.cmp(&tb).then_with(|| da.cmp(&db)).then_with(|| self.entries.iter().rev().cmp(other.entries.iter().rev()))
    }
}

impl PartialOrd for OrbitIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OrbitIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("E{")?;
        for (i, (mu, k)) in self.entries.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{mu}:{k}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for OrbitIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An argument list for a generalized elementary function that may repeat
/// monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TaggedTuple {
    pub arguments: Vec<(Monomial, u32)>,
}

impl TaggedTuple {
    pub fn new(arguments: Vec<(Monomial, u32)>) -> Self {
        TaggedTuple { arguments }
    }

    pub fn is_reduced(&self) -> bool {
        let mut seen: Vec<&Monomial> = self.arguments.iter().map(|(mu, _)| mu).collect();
        seen.sort();
        seen.windows(2).all(|w| w[0] != w[1])
    }
}

/// Merges equal arguments; the coefficient is the product over merged groups
/// of `(Σ parts)! / Π parts!`.
pub fn canonicalize(t: &TaggedTuple, arity: usize) -> Result<(BigInt, OrbitIndex)> {
    let mut groups: BTreeMap<&Monomial, Vec<u32>> = BTreeMap::new();
    for (mu, k) in &t.arguments {
        if *k == 0 {
            return Err(Error::Invalid("tagged tuple multiplicities must be positive".into()));
        }
        groups.entry(mu).or_default().push(*k);
    }
    let mut c = BigInt::from(1);
    for parts in groups.values().filter(|p| p.len() > 1) {
        let total: u32 = parts.iter().sum();
        let denom = parts.iter().fold(BigInt::from(1), |acc, &p| acc * factorial(p as u64));
        c *= factorial(total as u64) / denom;
    }
    let alpha = OrbitIndex::from_entries(arity, t.arguments.iter().cloned())?;
    Ok((c, alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ringcore::parse::{parse_monomial, parse_orbit_index};

    fn mono(t: &str, m: usize) -> Monomial {
        parse_monomial(t, m).unwrap()
    }

    #[test]
    fn merging_equal_arguments() {
        let f = mono("y1", 2);
        let g = mono("y2", 2);
        let t = TaggedTuple::new(vec![(f.clone(), 1), (f.clone(), 1)]);
        assert!(!t.is_reduced());
        assert_eq!(canonicalize(&t, 2).unwrap(), (BigInt::from(2), OrbitIndex::singleton(f.clone(), 2).unwrap()));
        let t = TaggedTuple::new(vec![(f.clone(), 2), (g.clone(), 1)]);
        assert!(t.is_reduced());
        assert_eq!(canonicalize(&t, 2).unwrap().0, BigInt::from(1));
        let t = TaggedTuple::new(vec![(f.clone(), 1), (f.clone(), 1), (f.clone(), 1)]);
        assert_eq!(canonicalize(&t, 2).unwrap(), (BigInt::from(6), OrbitIndex::singleton(f, 3).unwrap()));
    }

    #[test]
    fn size_and_multidegree() {
        let a = parse_orbit_index("E{y1:2, y1*y2^2:1}", 2).unwrap();
        assert_eq!(a.size(), 3);
        assert_eq!(a.multidegree(), vec![3, 2]);
        assert_eq!(a.degree(), 5);
        assert_eq!(a.to_string(), "E{y1*y2^2:1, y1:2}");
        let ((mu, k), rest) = a.split_largest().unwrap();
        assert_eq!((mu, k), (mono("y1*y2^2", 2), 1));
        assert_eq!(rest.to_string(), "E{y1:2}");
    }

    #[test]
    fn order_is_by_multidegree_first() {
        let small = parse_orbit_index("E{y1:1}", 2).unwrap();
        let big = parse_orbit_index("E{y2:2}", 2).unwrap();
        let mid = parse_orbit_index("E{y1:1, y2:1}", 2).unwrap();
        assert!(small < big && big < mid);
        let a = parse_orbit_index("E{y1^2:1}", 1).unwrap();
        let b = parse_orbit_index("E{y1:2}", 1).unwrap();
        assert!(a > b);
    }

    #[test]
    fn rejects_bad_entries() {
        assert!(OrbitIndex::from_entries(1, [(Monomial::one(1), 1)]).is_err());
        assert!(OrbitIndex::from_entries(1, [(mono("y1", 1), 0)]).is_err());
        assert!(OrbitIndex::from_entries(1, [(mono("y1", 2), 1)]).is_err());
    }
}
