use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monomial `y_1^{a_1} ⋯ y_m^{a_m}` stored as its exponent vector.
///
/// The same representation is used for exponent matrices of the concrete ring
/// (flattened slot-major), which is why the arity is just the vector length.
///
/// Ordering is graded lexicographic with `y1 > y2 > … > ym`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(arity: usize) -> Self {
        Monomial { exps: vec![0; arity] }
    }

    /// The variable `y_{index+1}` (zero-based index).
    pub fn var(arity: usize, index: usize) -> Self {
        let mut exps = vec![0; arity];
        exps[index] = 1;
        Monomial { exps }
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// The multidegree `∂(μ)`, which for a monomial is its exponent vector.
    pub fn multidegree(&self) -> &[u32] {
        &self.exps
    }

    /// Total degree `l(μ)`.
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    fn exponent_gcd(&self) -> u32 {
        self.exps.iter().fold(0u32, |g, &e| g.gcd(&e))
    }

    /// Positive degree and not a proper power of another monomial.
    pub fn is_primitive(&self) -> bool {
        self.exponent_gcd() == 1
    }

    /// Writes `μ = ν^k` with `ν` primitive.
    pub fn primitive_root(&self) -> Result<(Monomial, u32)> {
        let k = self.exponent_gcd();
        if k == 0 {
            return Err(Error::ConstantMonomial);
        }
        let nu = Monomial { exps: self.exps.iter().map(|e| e / k).collect() };
        Ok((nu, k))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.arity(), other.arity(), "monomial arity mismatch");
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial { exps: self.exps.iter().map(|e| e * k).collect() }
    }

    /// Componentwise `self ≤ other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial { exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect() })
    }

    /// All monomials of the given arity whose exponent vector is ≤ `bound`
    /// componentwise, excluding the constant one, in descending order.
    pub fn divisors_of(bound: &[u32]) -> Vec<Monomial> {
        let mut out = vec![Vec::new()];
        for &b in bound {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    (0..=b).map(move |e| {
                        let mut v = prefix.clone();
                        v.push(e);
                        v
                    })
                })
                .collect();
        }
        let mut monos: Vec<Monomial> = out.into_iter().map(Monomial::new).filter(|m| !m.is_one()).collect();
        monos.sort_by(|a, b| b.cmp(a));
        monos
    }

    /// All monomials of arity `arity` and total degree `1..=max_degree`, descending.
    pub fn up_to_degree(arity: usize, max_degree: u32) -> Vec<Monomial> {
        let mut monos = Monomial::divisors_of(&vec![max_degree; arity]);
        monos.retain(|m| m.degree() <= max_degree);
        monos
    }

    /// Formats with custom variable names; `name(i)` is the name of index `i`.
    pub fn fmt_with(&self, name: impl Fn(usize) -> String) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(name(i)),
                _ => parts.push(format!("{}^{}", name(i), e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(|i| format!("y{}", i + 1)))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(m(&[2, 4]).primitive_root().unwrap(), (m(&[1, 2]), 2));
        assert_eq!(m(&[1]).primitive_root().unwrap(), (m(&[1]), 1));
        assert_eq!(m(&[3, 3, 3]).primitive_root().unwrap(), (m(&[1, 1, 1]), 3));
        assert_eq!(m(&[0, 0]).primitive_root(), Err(Error::ConstantMonomial));
        assert!(!m(&[0, 0]).is_primitive());
        assert!(m(&[2, 3]).is_primitive());
        assert!(!m(&[0, 4]).is_primitive());
    }

    #[test]
    fn graded_lex_order() {
        // degree first, then y1 > y2
        assert!(m(&[0, 2]) > m(&[1, 0]));
        assert!(m(&[1, 0]) > m(&[0, 1]));
        assert!(m(&[2, 0]) > m(&[1, 1]));
        assert_eq!(m(&[2, 1]).to_string(), "y1^2*y2");
        assert_eq!(m(&[0, 0]).to_string(), "1");
    }

    #[test]
    fn divisor_enumeration() {
        let d = Monomial::divisors_of(&[1, 1]);
        assert_eq!(d, vec![m(&[1, 1]), m(&[1, 0]), m(&[0, 1])]);
        assert_eq!(Monomial::up_to_degree(2, 2).len(), 5);
    }

    proptest! {
        #[test]
        fn primitive_root_invariant(e in proptest::collection::vec(0u32..7, 1..4)) {
            let mu = Monomial::new(e);
            prop_assume!(mu.degree() > 0);
            let (nu, k) = mu.primitive_root().unwrap();
            prop_assert!(nu.is_primitive());
            prop_assert_eq!(nu.pow(k), mu);
        }

        #[test]
        fn multidegree_is_additive(
            a in proptest::collection::vec(0u32..5, 3),
            b in proptest::collection::vec(0u32..5, 3),
        ) {
            let (x, y) = (Monomial::new(a.clone()), Monomial::new(b.clone()));
            let prod = x.mul(&y);
            let sum: Vec<u32> = a.iter().zip(&b).map(|(p, q)| p + q).collect();
            prop_assert_eq!(prod.multidegree(), &sum[..]);
        }
    }
}
