//! Exact coefficient rings: Z, Q and prime fields F_p.
//!
//! Every coefficient is carried as a [`BigRational`] and kept in the canonical
//! form of its ring: integers have denominator one, rationals are in lowest
//! terms with positive denominator, and F_p elements are integers in `[0, p)`.
//! The ring itself is a small runtime value so the prime can be chosen from the
//! command line.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A coefficient value; its canonical form depends on the ring it lives in.
pub type Coeff = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoeffRing {
    Integers,
    Rationals,
    PrimeField(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl CoeffRing {
    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::NotPrime(p));
        }
        Ok(CoeffRing::PrimeField(p))
    }

    /// Parses `z`, `q`, `fp:<p>` (also `fp<p>`).
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        match t {
            "z" | "Z" => Ok(CoeffRing::Integers),
            "q" | "Q" => Ok(CoeffRing::Rationals),
            _ => {
                let rest = t
                    .strip_prefix("fp:")
                    .or_else(|| t.strip_prefix("fp"))
                    .ok_or_else(|| Error::parse(0, format!("unknown coefficient ring '{t}'")))?;
                let p: u64 = rest.parse().map_err(|_| Error::parse(0, format!("bad prime in '{t}'")))?;
                CoeffRing::prime_field(p)
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            CoeffRing::Integers => "z".into(),
            CoeffRing::Rationals => "q".into(),
            CoeffRing::PrimeField(p) => format!("fp:{p}"),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoeffRing::PrimeField(p) => *p,
            _ => 0,
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoeffRing::Integers)
    }

    pub fn contains_rationals(&self) -> bool {
        matches!(self, CoeffRing::Rationals)
    }

    pub fn zero(&self) -> Coeff {
        Coeff::zero()
    }

    pub fn one(&self) -> Coeff {
        self.from_int(1)
    }

    pub fn from_int(&self, value: impl Into<BigInt>) -> Coeff {
        let v: BigInt = value.into();
        match self {
            CoeffRing::PrimeField(p) => Coeff::from_integer(v.mod_floor(&BigInt::from(*p))),
            _ => Coeff::from_integer(v),
        }
    }

    /// Moves an exact rational value into this ring.
    ///
    /// Fails for non-integral values over Z, and for denominators divisible by
    /// p over F_p.
    pub fn convert(&self, value: &BigRational) -> Result<Coeff> {
        match self {
            CoeffRing::Rationals => Ok(value.clone()),
            CoeffRing::Integers => {
                if value.is_integer() {
                    Ok(value.clone())
                } else {
                    Err(Error::RequiresRationals)
                }
            }
            CoeffRing::PrimeField(p) => {
                let pb = BigInt::from(*p);
                let num = value.numer().mod_floor(&pb);
                let den = value.denom().mod_floor(&pb);
                if den.is_zero() {
                    return Err(Error::NotInvertible(*p));
                }
                let inv = mod_inverse(den.to_u64().unwrap(), *p);
                Ok(Coeff::from_integer((num * BigInt::from(inv)).mod_floor(&pb)))
            }
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match self {
            CoeffRing::Integers => Coeff::from_integer(a.numer() + b.numer()),
            CoeffRing::Rationals => a + b,
            CoeffRing::PrimeField(p) => Coeff::from_integer((a.numer() + b.numer()).mod_floor(&BigInt::from(*p))),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match self {
            CoeffRing::PrimeField(p) => Coeff::from_integer((-a.numer()).mod_floor(&BigInt::from(*p))),
            _ => -a,
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match self {
            CoeffRing::Integers => Coeff::from_integer(a.numer() * b.numer()),
            CoeffRing::Rationals => a * b,
            CoeffRing::PrimeField(p) => Coeff::from_integer((a.numer() * b.numer()).mod_floor(&BigInt::from(*p))),
        }
    }

    pub fn pow(&self, a: &Coeff, e: u32) -> Coeff {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Multiplicative inverse; only defined in fields.
    pub fn inv(&self, a: &Coeff) -> Result<Coeff> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            CoeffRing::Integers => {
                if a.numer().abs().is_one() {
                    Ok(a.clone())
                } else {
                    Err(Error::RequiresRationals)
                }
            }
            CoeffRing::Rationals => Ok(a.recip()),
            CoeffRing::PrimeField(p) => {
                let v = a.numer().to_u64().unwrap();
                Ok(Coeff::from_integer(BigInt::from(mod_inverse(v, *p))))
            }
        }
    }

    /// True iff `value` is already the canonical representative of an element.
    pub fn is_canonical(&self, value: &Coeff) -> bool {
        match self {
            CoeffRing::Rationals => value.denom().is_positive(),
            CoeffRing::Integers => value.is_integer(),
            CoeffRing::PrimeField(p) => value.is_integer() && !value.is_negative() && value.numer() < &BigInt::from(*p),
        }
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

pub(crate) fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a is nonzero mod p.
    mod_pow(a % p, p - 2, p)
}

pub(crate) fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Formats a coefficient as a standalone number: `3`, `-2`, `1/2`.
pub fn format_coeff(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Coeff {
        Coeff::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rationals_stay_reduced() {
        let r = CoeffRing::Rationals;
        let s = r.add(&q(1, 6), &q(1, 3));
        assert_eq!(s, q(1, 2));
        assert!(r.is_canonical(&s));
        assert_eq!(*r.mul(&q(-2, 3), &q(3, -4)).denom(), BigInt::from(2));
    }

    #[test]
    fn prime_field_representatives() {
        let f = CoeffRing::prime_field(7).unwrap();
        assert_eq!(f.from_int(-1), q(6, 1));
        assert_eq!(f.add(&q(5, 1), &q(4, 1)), q(2, 1));
        assert_eq!(f.neg(&q(0, 1)), q(0, 1));
        assert_eq!(f.convert(&q(1, 2)).unwrap(), q(4, 1));
        assert_eq!(f.mul(&f.inv(&q(3, 1)).unwrap(), &q(3, 1)), q(1, 1));
        assert!(f.convert(&q(1, 7)).is_err());
    }

    #[test]
    fn ring_names_round_trip() {
        for r in [CoeffRing::Integers, CoeffRing::Rationals, CoeffRing::PrimeField(3)] {
            assert_eq!(CoeffRing::parse(&r.name()).unwrap(), r);
        }
        assert!(CoeffRing::parse("fp:4").is_err());
        assert_eq!(CoeffRing::parse("fp5").unwrap(), CoeffRing::PrimeField(5));
    }

    #[test]
    fn integers_reject_fractions() {
        assert!(CoeffRing::Integers.convert(&q(1, 2)).is_err());
        assert!(CoeffRing::Integers.inv(&q(2, 1)).is_err());
    }
}
