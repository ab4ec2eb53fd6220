//! Symmetric functions in one alphabet: Newton identities, reduction of a
//! symmetric polynomial to the elementary basis, and the plethysm tables
//! `P_{h,k}` expressing `e_h(x_1^k, x_2^k, …)` through `e_1, e_2, …`.
//!
//! Reduction works on monomial-symmetric coordinates: a symmetric polynomial
//! in `N` variables is determined by its coefficients on the monomials whose
//! exponent vector is non-increasing, and multiplying by `e_r` acts on those
//! coordinates by a Pieri rule.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::ringcore::{
    Coeff, CoeffRing, ElemSym, ElementaryPoly, LinComb, Monomial, Polynomial, PowerPoly, PowerSym, SymMonomial,
    SymPolyExt,
};

const Z: CoeffRing = CoeffRing::Integers;

/// `p_k` in `e_1, …, e_k`, via `p_k = Σ_{i<k} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k`.
pub fn newton_p_in_e(k: u32) -> ElementaryPoly {
    assert!(k >= 1, "power sums start at p_1");
    let e = |i: u32| ElementaryPoly::symbol(Z, ElemSym(i));
    let mut p: Vec<ElementaryPoly> = vec![ElementaryPoly::zero(Z)];
    for r in 1..=k {
        let sign = |i: u32| if i % 2 == 1 { 1 } else { -1 };
        let mut acc = e(r).scale(&Z.from_int(sign(r) * r as i64));
        for i in 1..r {
            acc = acc.add(&e(i).mul(&p[(r - i) as usize]).scale(&Z.from_int(sign(i))));
        }
        p.push(acc);
    }
    p.pop().expect("k >= 1")
}

/// `e_k` in the power sums over `Q`: `e_k = (1/k) Σ_{i=1}^k (-1)^{i-1} e_{k-i} p_i`.
pub fn newton_e_in_p(k: u32) -> PowerPoly {
    let q = CoeffRing::Rationals;
    let mut e: Vec<PowerPoly> = vec![PowerPoly::constant(q, 1)];
    for r in 1..=k {
        let mut acc = PowerPoly::zero(q);
        for i in 1..=r {
            let term = e[(r - i) as usize].mul(&PowerPoly::symbol(q, PowerSym(i)));
            acc = acc.add(&term.scale(&q.from_int(if i % 2 == 1 { 1 } else { -1 })));
        }
        let inv = q.inv(&q.from_int(r)).expect("nonzero");
        e.push(acc.scale(&inv));
    }
    e.swap_remove(k as usize)
}

/// `e_i(x_1, …, x_N)` as a concrete polynomial.
pub fn concrete_elementary(i: u32, n_vars: usize, ring: CoeffRing) -> Polynomial {
    let mut terms = LinComb::zero(ring);
    for mask in subsets(n_vars, i as usize) {
        let exps = (0..n_vars).map(|v| if mask & (1 << v) != 0 { 1 } else { 0 }).collect();
        terms.add_term(Monomial::new(exps), &ring.one());
    }
    Polynomial::from_terms(n_vars, terms).expect("arity")
}

/// `p_r(x_1, …, x_N)`.
pub fn power_sum(r: u32, n_vars: usize, ring: CoeffRing) -> Polynomial {
    let mut terms = LinComb::zero(ring);
    for v in 0..n_vars {
        terms.add_term(Monomial::var(n_vars, v).pow(r), &ring.one());
    }
    Polynomial::from_terms(n_vars, terms).expect("arity")
}

/// `e_h(x_1^k, …, x_N^k)`.
pub fn elementary_of_powers(h: u32, k: u32, n_vars: usize, ring: CoeffRing) -> Polynomial {
    let mut terms = LinComb::zero(ring);
    for mask in subsets(n_vars, h as usize) {
        let exps = (0..n_vars).map(|v| if mask & (1 << v) != 0 { k } else { 0 }).collect();
        terms.add_term(Monomial::new(exps), &ring.one());
    }
    Polynomial::from_terms(n_vars, terms).expect("arity")
}

/// Substitutes `e_i ↦ e_i(x_1, …, x_N)` and expands concretely.
pub fn substitute_elementary(p: &ElementaryPoly, n_vars: usize) -> Polynomial {
    let ring = p.ring();
    p.evaluate(&Polynomial::one(n_vars, ring), |s| concrete_elementary(s.0, n_vars, ring))
}

/// Coefficients of a symmetric polynomial on its non-increasing monomials.
pub type MonomialCoords = BTreeMap<Monomial, Coeff>;

/// The monomial-symmetric coordinates of a symmetric polynomial.
pub fn monomial_coordinates(w: &Polynomial) -> Result<MonomialCoords> {
    if !w.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(w.terms()
        .iter()
        .filter(|(mono, _)| mono.exponents().windows(2).all(|p| p[0] >= p[1]))
        .map(|(mono, c)| (mono.clone(), c.clone()))
        .collect())
}

/// Monomial-symmetric arithmetic in a fixed number of variables.
struct Pieri {
    n_vars: usize,
    ring: CoeffRing,
    steps: HashMap<(u32, Monomial), Vec<(Monomial, u64)>>,
    products: HashMap<Vec<u32>, MonomialCoords>,
}

impl Pieri {
    fn new(n_vars: usize, ring: CoeffRing) -> Self {
        Pieri { n_vars, ring, steps: HashMap::new(), products: HashMap::new() }
    }

    /// `e_r · m_λ = Σ_μ c_μ m_μ`, where `c_μ` counts the `r`-sets `S` with
    /// `μ - 1_S` a rearrangement of `λ`.
    fn step(&mut self, r: u32, lambda: &Monomial) -> &[(Monomial, u64)] {
        let n = self.n_vars;
        self.steps.entry((r, lambda.clone())).or_insert_with(|| {
            let mut candidates: Vec<Vec<u32>> = subsets(n, r as usize)
                .map(|s| {
                    let mut mu: Vec<u32> =
                        lambda.exponents().iter().enumerate().map(|(v, &e)| e + ((s >> v) & 1) as u32).collect();
                    mu.sort_unstable_by(|a, b| b.cmp(a));
                    mu
                })
                .collect();
            candidates.sort();
            candidates.dedup();
            candidates
                .into_iter()
                .map(|mu| {
                    let count = subsets(n, r as usize)
                        .filter(|s| {
                            let mut back = Vec::with_capacity(n);
                            for (v, &e) in mu.iter().enumerate() {
                                let bit = ((s >> v) & 1) as u32;
                                if e < bit {
                                    return false;
                                }
                                back.push(e - bit);
                            }
                            back.sort_unstable_by(|a, b| b.cmp(a));
                            back == lambda.exponents()
                        })
                        .count() as u64;
                    (Monomial::new(mu), count)
                })
                .collect()
        })
    }

    fn times_e(&mut self, r: u32, x: &MonomialCoords) -> MonomialCoords {
        let ring = self.ring;
        let mut out: MonomialCoords = BTreeMap::new();
        for (lambda, c) in x {
            for (mu, count) in self.step(r, lambda).to_vec() {
                let add = ring.mul(c, &ring.from_int(count));
                let slot = out.entry(mu).or_insert_with(|| ring.zero());
                *slot = ring.add(slot, &add);
            }
        }
        out.retain(|_, c| !num_traits::Zero::is_zero(c));
        out
    }

    /// `Π e_i^{c_i}` with `exps[i-1] = c_i`, memoized by exponent vector.
    fn e_product(&mut self, exps: &[u32]) -> MonomialCoords {
        if let Some(hit) = self.products.get(exps) {
            return hit.clone();
        }
        let value = match exps.iter().rposition(|&c| c > 0) {
            None => BTreeMap::from([(Monomial::one(self.n_vars), self.ring.one())]),
            Some(last) => {
                let mut smaller = exps.to_vec();
                smaller[last] -= 1;
                smaller.truncate(last + usize::from(smaller[last] > 0));
                let base = self.e_product(&smaller);
                self.times_e(last as u32 + 1, &base)
            }
        };
        self.products.insert(exps.to_vec(), value.clone());
        value
    }

    fn evaluate(&mut self, p: &ElementaryPoly) -> MonomialCoords {
        let ring = self.ring;
        let mut out: MonomialCoords = BTreeMap::new();
        for (mono, c) in p.iter() {
            let top = mono.factors().iter().map(|(s, _)| s.0).max().unwrap_or(0) as usize;
            if top > self.n_vars {
                continue;
            }
            let mut exps = vec![0u32; top];
            for (s, e) in mono.factors() {
                exps[s.0 as usize - 1] = *e;
            }
            let c = ring.convert(c).expect("coefficient representable");
            for (mu, d) in self.e_product(&exps) {
                let slot = out.entry(mu).or_insert_with(|| ring.zero());
                *slot = ring.add(slot, &ring.mul(&c, &d));
            }
        }
        out.retain(|_, c| !num_traits::Zero::is_zero(c));
        out
    }
}

/// Monomial-symmetric coordinates of `P(e_1(x), …, e_N(x))` for `N` variables,
/// with `e_i = 0` for `i > N`.
pub fn evaluate_symmetric(p: &ElementaryPoly, n_vars: usize) -> MonomialCoords {
    Pieri::new(n_vars, p.ring()).evaluate(p)
}

/// The unique `P` with `P(e_1(x), …, e_N(x)) = w`, by repeatedly cancelling
/// the graded-lex leading term `c·x^λ` against `c·Π e_i^{λ_i - λ_{i+1}}`.
pub fn sym_to_elementary(w: &Polynomial) -> Result<ElementaryPoly> {
    let ring = w.ring();
    let n = w.arity();
    let mut rest = monomial_coordinates(w)?;
    let mut pieri = Pieri::new(n, ring);
    let mut out = ElementaryPoly::zero(ring);
    while let Some((lambda, c)) = rest.iter().next_back().map(|(l, c)| (l.clone(), c.clone())) {
        let lam = lambda.exponents();
        let exps: Vec<u32> = (0..n).map(|i| lam[i] - lam.get(i + 1).copied().unwrap_or(0)).collect();
        for (mu, d) in pieri.e_product(&exps) {
            let slot = rest.entry(mu).or_insert_with(|| ring.zero());
            *slot = ring.sub(slot, &ring.mul(&c, &d));
        }
        rest.retain(|_, c| !num_traits::Zero::is_zero(c));
        debug_assert!(rest.keys().next_back().is_none_or(|l| *l < lambda));
        let factors = exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (ElemSym(i as u32 + 1), e));
        out.add_term(SymMonomial::from_factors(factors), &c);
    }
    Ok(out)
}

type PlethysmTable = RwLock<BTreeMap<(u32, u32), Arc<ElementaryPoly>>>;

fn plethysm_cache() -> &'static PlethysmTable {
    static CACHE: OnceLock<PlethysmTable> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `P_{h,k}` over `Z`: reduces `e_h(x_1^k, …, x_N^k)` with `N = hk`.
pub fn plethysm_p(h: u32, k: u32) -> Arc<ElementaryPoly> {
    assert!(h >= 1 && k >= 1, "plethysm indices start at 1");
    if let Some(hit) = plethysm_cache().read().expect("plethysm cache poisoned").get(&(h, k)) {
        return hit.clone();
    }
    let w = elementary_of_powers(h, k, (h * k) as usize, Z);
    let value = Arc::new(sym_to_elementary(&w).expect("e_h of powers is symmetric"));
    plethysm_cache().write().expect("plethysm cache poisoned").insert((h, k), value.clone());
    value
}

/// Seeds the table, e.g. from a persisted cache.
pub fn preload_plethysm(h: u32, k: u32, value: ElementaryPoly) {
    plethysm_cache().write().expect("plethysm cache poisoned").entry((h, k)).or_insert_with(|| Arc::new(value));
}

pub fn cached_plethysms() -> Vec<((u32, u32), Arc<ElementaryPoly>)> {
    plethysm_cache().read().expect("plethysm cache poisoned").iter().map(|(k, v)| (*k, v.clone())).collect()
}

pub fn is_plethysm_cached(h: u32, k: u32) -> bool {
    plethysm_cache().read().expect("plethysm cache poisoned").contains_key(&(h, k))
}

/// Sets `e_i ↦ 0` for `i > n`.
pub fn truncate_to_n(p: &ElementaryPoly, n: u32) -> ElementaryPoly {
    let mut out = p.clone();
    out.retain(|mono| mono.factors().iter().all(|(s, _)| s.0 <= n));
    out
}

/// Weight `Σ i·c_i` of an elementary monomial `Π e_i^{c_i}`.
pub fn weight(mono: &SymMonomial<ElemSym>) -> u32 {
    mono.factors().iter().map(|(s, e)| s.0 * e).sum()
}

fn subsets(n: usize, r: usize) -> impl Iterator<Item = u64> {
    (0u64..1 << n).filter(move |s| s.count_ones() as usize == r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ringcore::parse::parse_elementary_poly;
    use proptest::prelude::*;

    fn ep(t: &str) -> ElementaryPoly {
        parse_elementary_poly(t, Z).unwrap()
    }

    #[test]
    fn newton_small_cases() {
        assert_eq!(newton_p_in_e(1), ep("e1"));
        assert_eq!(newton_p_in_e(2), ep("e1^2 - 2*e2"));
        assert_eq!(newton_p_in_e(3), ep("e1^3 - 3*e1*e2 + 3*e3"));
        for k in 1..=5 {
            for n in k as usize..=k as usize + 1 {
                assert_eq!(substitute_elementary(&newton_p_in_e(k), n), power_sum(k, n, Z));
            }
        }
    }

    #[test]
    fn newton_inverse() {
        let q = CoeffRing::Rationals;
        for k in 1..=5u32 {
            let n = k as usize + 1;
            let lhs = newton_e_in_p(k).evaluate(&Polynomial::one(n, q), |s| power_sum(s.0, n, q));
            assert_eq!(lhs, concrete_elementary(k, n, q));
        }
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(sym_to_elementary(&concrete_elementary(2, 3, Z)).unwrap(), ep("e2"));
        assert_eq!(sym_to_elementary(&power_sum(2, 2, Z)).unwrap(), ep("e1^2 - 2*e2"));
        assert!(sym_to_elementary(&Polynomial::zero(3, Z)).unwrap().is_zero());
        let not_sym = Polynomial::var(2, Z, 1).unwrap();
        assert_eq!(sym_to_elementary(&not_sym), Err(Error::NotSymmetric));
        let mixed = power_sum(3, 3, Z).add(&Polynomial::constant(3, Z, 5)).unwrap();
        assert_eq!(sym_to_elementary(&mixed).unwrap(), ep("e1^3 - 3*e1*e2 + 3*e3 + 5"));
    }

    #[test]
    fn plethysm_examples() {
        assert_eq!(*plethysm_p(2, 2), ep("e2^2 - 2*e1*e3 + 2*e4"));
        assert_eq!(plethysm_p(2, 2).to_string(), "e2^2 - 2*e1*e3 + 2*e4");
        for h in 1..=4 {
            assert_eq!(*plethysm_p(h, 1), ep(&format!("e{h}")));
        }
        for k in 1..=4 {
            assert_eq!(*plethysm_p(1, k), newton_p_in_e(k));
        }
    }

    #[test]
    fn plethysm_substitutes_back() {
        for (h, k) in [(2u32, 2u32), (2, 3), (3, 2)] {
            let p = plethysm_p(h, k);
            for n in [(h * k) as usize, (h * k + 1) as usize] {
                assert_eq!(substitute_elementary(&p, n), elementary_of_powers(h, k, n, Z));
                let coords = monomial_coordinates(&elementary_of_powers(h, k, n, Z)).unwrap();
                assert_eq!(evaluate_symmetric(&p, n), coords);
            }
            assert!(p.keys().all(|m| weight(m) == h * k));
        }
    }

    #[test]
    fn truncation() {
        let p = ep("e2^2 - 2*e1*e3 + 2*e4");
        assert_eq!(truncate_to_n(&p, 2), ep("e2^2"));
        assert_eq!(truncate_to_n(&p, 4), p);
        assert!(truncate_to_n(&ep("e3"), 2).is_zero());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn pieri_agrees_with_concrete(exps in proptest::collection::vec(0u32..3, 1..4), n in 1usize..5) {
            let mono = SymMonomial::from_factors(
                exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (ElemSym(i as u32 + 1), e)),
            );
            let p = ElementaryPoly::term(Z, mono, &Z.one());
            let concrete = substitute_elementary(&p, n);
            prop_assert_eq!(evaluate_symmetric(&p, n), monomial_coordinates(&concrete).unwrap());
        }

        #[test]
        fn reduction_round_trips(coeffs in proptest::collection::vec(-3i64..4, 4), n in 2usize..5) {
            let mut w = Polynomial::zero(n, Z);
            for (r, c) in coeffs.iter().enumerate() {
                w = w.add(&power_sum(r as u32 + 1, n, Z).scale(&Z.from_int(*c))).unwrap();
            }
            let p = sym_to_elementary(&w).unwrap();
            prop_assert_eq!(substitute_elementary(&p, n), w);
        }
    }
}
