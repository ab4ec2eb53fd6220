//! Rewriting orbit-basis elements into the generators `e_{i,μ}` and back.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::concrete::{orbit_sum, ConcretePoly};
use crate::error::{Error, Result};
use crate::orbitring::{basis_product, MultiSymElement, OrbitIndex};
use crate::ringcore::{
    Coeff, CoeffRing, E1Poly, E1Sym, GenSym, GeneratorPoly, LinComb, Monomial, SymMonomial, SymPolyExt,
};
use crate::symfun::{newton_e_in_p, plethysm_p};

const Z: CoeffRing = CoeffRing::Integers;

type RewriteTable = RwLock<HashMap<OrbitIndex, Arc<GeneratorPoly>>>;

fn rewrite_cache() -> &'static RewriteTable {
    static CACHE: OnceLock<RewriteTable> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// A generator polynomial over `Z` whose image under `σ` is `e_α`.
///
/// A singleton `{ν^j : k}` maps to `P_{k,j}` with `e_i ↦ e_{i,ν}`. Otherwise
/// the largest support monomial `a` is split off: `e_α` is the leading term of
/// `e_{α(a)}(a) · e_{α'}`, and every other term of that product has smaller
/// `|γ|`, so the recursion terminates.
pub fn rewrite_to_generators(alpha: &OrbitIndex) -> Arc<GeneratorPoly> {
    if let Some(hit) = rewrite_cache().read().expect("rewrite cache poisoned").get(alpha) {
        return hit.clone();
    }
    let value = Arc::new(compute_rewrite(alpha));
    rewrite_cache().write().expect("rewrite cache poisoned").insert(alpha.clone(), value.clone());
    value
}

/// [`rewrite_to_generators`] with coefficients moved into `ring`.
pub fn rewrite_in(alpha: &OrbitIndex, ring: CoeffRing) -> GeneratorPoly {
    rewrite_to_generators(alpha).change_ring(ring).expect("integers map into every ring")
}

fn compute_rewrite(alpha: &OrbitIndex) -> GeneratorPoly {
    if alpha.is_empty() {
        return GeneratorPoly::constant(Z, 1);
    }
    let ((a, k), rest) = alpha.split_largest().expect("nonempty");
    if rest.is_empty() {
        let (nu, j) = a.primitive_root().expect("orbit keys are nonconstant");
        if j == 1 {
            return GeneratorPoly::symbol(Z, GenSym::new(k, nu).expect("primitive"));
        }
        return plethysm_p(k, j).map_keys(|mono| {
            SymMonomial::from_factors(
                mono.factors().iter().map(|(e, c)| (GenSym::new(e.0, nu.clone()).expect("primitive"), *c)),
            )
        });
    }
    let head = OrbitIndex::singleton(a, k).expect("valid singleton");
    let mut out = rewrite_to_generators(&head).mul(&rewrite_to_generators(&rest));
    for (gamma, c) in basis_product(&head, &rest).iter() {
        if gamma == alpha {
            assert!(num_traits::One::is_one(c), "leading term of the split product has coefficient one");
            continue;
        }
        assert!(gamma.size() < alpha.size(), "correction term {gamma} does not shrink {alpha}");
        out.add_scaled_terms(&rewrite_to_generators(gamma), &Z.from_int(-c.clone()));
    }
    out
}

/// Seeds the rewrite table, e.g. from a persisted cache.
pub fn preload_rewrite(alpha: OrbitIndex, value: GeneratorPoly) {
    rewrite_cache().write().expect("rewrite cache poisoned").entry(alpha).or_insert_with(|| Arc::new(value));
}

pub fn cached_rewrites() -> Vec<(OrbitIndex, Arc<GeneratorPoly>)> {
    let mut out: Vec<_> =
        rewrite_cache().read().expect("rewrite cache poisoned").iter().map(|(k, v)| (k.clone(), v.clone())).collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

pub fn is_rewrite_cached(alpha: &OrbitIndex) -> bool {
    rewrite_cache().read().expect("rewrite cache poisoned").contains_key(alpha)
}

fn generator_index(s: &GenSym) -> OrbitIndex {
    OrbitIndex::singleton(s.mu().clone(), s.index()).expect("valid generator")
}

/// `σ_m`: `e_{i,μ} ↦ e_{{μ:i}}` in `A(∞,m)`.
pub fn sigma(g: &GeneratorPoly, m: usize) -> MultiSymElement {
    let ring = g.ring();
    g.evaluate(&MultiSymElement::one(m, ring), |s| MultiSymElement::basis(generator_index(s), ring))
}

/// `π_n ∘ σ_m`, projecting after every multiplication.
pub fn sigma_projected(g: &GeneratorPoly, m: usize, n: usize) -> MultiSymElement {
    let ring = g.ring();
    let one = Projected { x: MultiSymElement::one(m, ring), n };
    g.evaluate(&one, |s| Projected { x: MultiSymElement::basis(generator_index(s), ring).project_n(n), n }).x
}

#[derive(Clone)]
struct Projected {
    x: MultiSymElement,
    n: usize,
}

impl crate::ringcore::Algebra for Projected {
    fn zero_like(&self) -> Self {
        Projected { x: self.x.zero_like(), n: self.n }
    }
    fn mul_ref(&self, other: &Self) -> Self {
        Projected { x: self.x.multiply_projected(&other.x, self.n).expect("compatible"), n: self.n }
    }
    fn add_scaled(&mut self, other: &Self, c: &Coeff) {
        self.x.add_scaled(&other.x, c)
    }
}

/// Substitutes `e_{i,μ} ↦ e_i(μ)` in `A(n,m)`; symbols with `i > n` vanish.
pub fn eval_generator_poly(g: &GeneratorPoly, n: usize, m: usize) -> ConcretePoly {
    let ring = g.ring();
    g.evaluate(&ConcretePoly::one(n, m, ring), |s| orbit_sum(&generator_index(s), n, ring))
}

/// A polynomial in the `e_1(μ)` over `Q` with image `e_α`: the integral
/// rewrite with each `e_{k,ν}` replaced by Newton's expression of `e_k` in
/// power sums, `p_j ↦ e_1(ν^j)`.
pub fn rational_rewrite_to_e1(alpha: &OrbitIndex, ring: CoeffRing) -> Result<E1Poly> {
    if !ring.contains_rationals() {
        return Err(Error::RequiresRationals);
    }
    let g = rewrite_in(alpha, ring);
    let one = E1Poly::constant(ring, 1);
    Ok(g.evaluate(&one, |s| {
        let nu = s.mu().clone();
        newton_e_in_p(s.index()).evaluate(&one, |p| E1Poly::symbol(ring, E1Sym(nu.pow(p.0))))
    }))
}

/// Substitutes `e_1(μ) ↦ e_{{μ:1}}` in `A(n,m)`.
pub fn eval_e1_poly(g: &E1Poly, n: usize, m: usize) -> ConcretePoly {
    let ring = g.ring();
    g.evaluate(&ConcretePoly::one(n, m, ring), |s| {
        orbit_sum(&OrbitIndex::singleton(s.0.clone(), 1).expect("nonconstant"), n, ring)
    })
}

/// `σ` on `e_1` polynomials, into `A(∞,m)`.
pub fn sigma_e1(g: &E1Poly, m: usize) -> MultiSymElement {
    let ring = g.ring();
    g.evaluate(&MultiSymElement::one(m, ring), |s| {
        MultiSymElement::basis(OrbitIndex::singleton(s.0.clone(), 1).expect("nonconstant"), ring)
    })
}

/// Multidegree of a generator monomial, `Σ c·i·∂(μ)`.
pub fn generator_multidegree(mono: &SymMonomial<GenSym>, m: usize) -> Vec<u32> {
    let mut a = vec![0u32; m];
    for (s, c) in mono.factors() {
        for (ai, d) in a.iter_mut().zip(s.multidegree()) {
            *ai += c * d;
        }
    }
    a
}

/// All `e_{i,μ}` with `i·∂(μ) ≤ a` componentwise, in symbol order.
pub fn generators_below(a: &[u32]) -> Vec<GenSym> {
    let mut out = Vec::new();
    for mu in Monomial::divisors_of(a).into_iter().filter(Monomial::is_primitive) {
        let most = mu.exponents().iter().zip(a).filter(|(e, _)| **e > 0).map(|(e, b)| b / e).min().unwrap_or(0);
        for i in 1..=most {
            out.push(GenSym::new(i, mu.clone()).expect("primitive"));
        }
    }
    out.sort();
    out
}

/// The monomial basis of `C(m)_a`, in descending term order.
pub fn generator_monomials(a: &[u32]) -> Vec<SymMonomial<GenSym>> {
    let gens = generators_below(a);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    monomials_from(&gens, 0, a.to_vec(), &mut chosen, &mut out);
    out.sort_by(|x, y| y.cmp(x));
    out
}

fn monomials_from(
    gens: &[GenSym],
    t: usize,
    rest: Vec<u32>,
    chosen: &mut Vec<(GenSym, u32)>,
    out: &mut Vec<SymMonomial<GenSym>>,
) {
    if rest.iter().all(|&r| r == 0) {
        out.push(SymMonomial::from_factors(chosen.iter().cloned()));
        return;
    }
    if t == gens.len() {
        return;
    }
    let d = gens[t].multidegree();
    let most = d.iter().zip(&rest).filter(|(e, _)| **e > 0).map(|(e, r)| r / e).min().unwrap_or(0);
    for c in (0..=most).rev() {
        let next: Vec<u32> = rest.iter().zip(&d).map(|(r, e)| r - c * e).collect();
        if c > 0 {
            chosen.push((gens[t].clone(), c));
        }
        monomials_from(gens, t + 1, next, chosen, out);
        if c > 0 {
            chosen.pop();
        }
    }
}

/// Coordinates of a generator polynomial against a monomial list.
pub fn generator_coordinates(
    g: &LinComb<SymMonomial<GenSym>>,
    index: &HashMap<SymMonomial<GenSym>, usize>,
) -> Vec<num_bigint::BigInt> {
    let mut v = vec![num_bigint::BigInt::from(0); index.len()];
    for (mono, c) in g.iter() {
        let col = *index.get(mono).expect("term of the expected multidegree");
        v[col] = c.to_integer();
    }
    v
}
