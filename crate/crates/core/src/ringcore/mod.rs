//! Coefficient rings, monomials, sparse polynomials and the text grammar.

pub mod coeff;
pub mod lincomb;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod symbolic;

pub use coeff::{format_coeff, Coeff, CoeffRing};
pub use lincomb::{Algebra, LinComb, Monoid};
pub use monomial::Monomial;
pub use poly::Polynomial;
pub use symbolic::{
    E1Poly, E1Sym, ElemSym, ElementaryPoly, GenSym, GeneratorPoly, PowerPoly, PowerSym, SymMonomial, SymPoly,
    SymPolyExt, Symbol,
};

/// Number of `n`-element combinations of `k` items, exact.
pub fn binomial(n: u64, k: u64) -> num_bigint::BigInt {
    use num_bigint::BigInt;
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> num_bigint::BigInt {
    (1..=n).fold(num_bigint::BigInt::from(1), |acc, i| acc * i)
}
