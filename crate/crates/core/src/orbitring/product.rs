use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;

use super::index::{canonicalize, OrbitIndex, TaggedTuple};
use crate::error::{Error, Result};
use crate::ringcore::lincomb::format_terms;
use crate::ringcore::{Algebra, Coeff, CoeffRing, LinComb, Monomial, Polynomial};

/// An element of `A_R(∞,m)`: a finite combination of orbit-basis elements.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiSymElement {
    arity: usize,
    terms: LinComb<OrbitIndex>,
}

impl MultiSymElement {
    pub fn zero(arity: usize, ring: CoeffRing) -> Self {
        MultiSymElement { arity, terms: LinComb::zero(ring) }
    }

    pub fn one(arity: usize, ring: CoeffRing) -> Self {
        Self::basis(OrbitIndex::empty(arity), ring)
    }

    pub fn basis(alpha: OrbitIndex, ring: CoeffRing) -> Self {
        MultiSymElement { arity: alpha.arity(), terms: LinComb::term(ring, alpha, &ring.one()) }
    }

    pub fn from_terms(arity: usize, terms: LinComb<OrbitIndex>) -> Self {
        assert!(terms.keys().all(|k| k.arity() == arity), "orbit index arity mismatch");
        MultiSymElement { arity, terms }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn ring(&self) -> CoeffRing {
        self.terms.ring()
    }

    pub fn terms(&self) -> &LinComb<OrbitIndex> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, alpha: &OrbitIndex) -> Coeff {
        self.terms.coeff(alpha)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch(self.arity, other.arity));
        }
        if self.ring() != other.ring() {
            return Err(Error::RingMismatch(self.ring(), other.ring()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(MultiSymElement { arity: self.arity, terms: self.terms.add(&other.terms) })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(MultiSymElement { arity: self.arity, terms: self.terms.sub(&other.terms) })
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        MultiSymElement { arity: self.arity, terms: self.terms.scale(c) }
    }

    pub fn change_ring(&self, ring: CoeffRing) -> Result<Self> {
        Ok(MultiSymElement { arity: self.arity, terms: self.terms.change_ring(ring)? })
    }

    /// Product in `A(∞,m)`: the product formula with no bound on `|γ|`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.multiply_unchecked(other, None))
    }

    /// `π_n(x·y)`, skipping pairs that already vanish under `π_n`.
    pub fn multiply_projected(&self, other: &Self, n: usize) -> Result<Self> {
        self.check(other)?;
        Ok(self.multiply_unchecked(other, Some(n)))
    }

    fn multiply_unchecked(&self, other: &Self, cap: Option<usize>) -> Self {
        let ring = self.ring();
        let fits = |a: &OrbitIndex| cap.is_none_or(|n| a.size() as usize <= n);
        let mut acc: BTreeMap<OrbitIndex, Coeff> = BTreeMap::new();
        for (a, ca) in self.terms.iter().filter(|(a, _)| fits(a)) {
            for (b, cb) in other.terms.iter().filter(|(b, _)| fits(b)) {
                let cab = ring.mul(ca, cb);
                for (g, c) in basis_product(a, b).iter().filter(|(g, _)| fits(g)) {
                    let c = ring.mul(&cab, &ring.from_int(c.clone()));
                    let slot = acc.entry(g.clone()).or_insert_with(|| ring.zero());
                    *slot = ring.add(slot, &c);
                }
            }
        }
        acc.retain(|_, c| !num_traits::Zero::is_zero(c));
        MultiSymElement { arity: self.arity, terms: LinComb::from_canonical_terms(ring, acc) }
    }

    /// `π_n`: drops every term with `|α| > n`.
    pub fn project_n(&self, n: usize) -> Self {
        let mut out = self.clone();
        out.terms.retain(|a| a.size() as usize <= n);
        out
    }

    /// The homogeneous component of multidegree `a`.
    pub fn component(&self, a: &[u32]) -> Self {
        let mut out = self.clone();
        out.terms.retain(|k| k.multidegree() == a);
        out
    }
}

impl Algebra for MultiSymElement {
    fn zero_like(&self) -> Self {
        MultiSymElement::zero(self.arity, self.ring())
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.multiply(other).expect("incompatible multisymmetric elements")
    }
    fn add_scaled(&mut self, other: &Self, c: &Coeff) {
        self.terms.add_scaled_terms(&other.terms, c)
    }
}

impl fmt::Display for MultiSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = format_terms(self.terms.iter().rev().map(|(k, c)| {
            let key = if k.is_empty() { "1".to_string() } else { k.to_string() };
            (key, c)
        }));
        f.write_str(&text)
    }
}

impl fmt::Debug for MultiSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.ring(), self)
    }
}

type ProductTable = RwLock<HashMap<(OrbitIndex, OrbitIndex), Arc<Vec<(OrbitIndex, BigInt)>>>>;

fn product_cache() -> &'static ProductTable {
    static CACHE: OnceLock<ProductTable> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `e_α · e_β` over `Z`, memoized on the unordered pair.
pub fn basis_product(alpha: &OrbitIndex, beta: &OrbitIndex) -> Arc<Vec<(OrbitIndex, BigInt)>> {
    let key = if alpha <= beta { (alpha.clone(), beta.clone()) } else { (beta.clone(), alpha.clone()) };
    if let Some(hit) = product_cache().read().expect("product cache poisoned").get(&key) {
        return hit.clone();
    }
    let value = Arc::new(compute_product(&key.0, &key.1));
    product_cache().write().expect("product cache poisoned").insert(key, value.clone());
    value
}

fn compute_product(alpha: &OrbitIndex, beta: &OrbitIndex) -> Vec<(OrbitIndex, BigInt)> {
    let fs: Vec<(&Monomial, u32)> = alpha.iter().collect();
    let gs: Vec<(&Monomial, u32)> = beta.iter().collect();
    let mut walk = GammaWalk {
        fs: &fs,
        gs: &gs,
        rows: fs.iter().map(|f| f.1).collect(),
        cols: gs.iter().map(|g| g.1).collect(),
        inner: vec![0; fs.len() * gs.len()],
        arity: alpha.arity(),
        out: BTreeMap::new(),
    };
    walk.run(0);
    walk.out.into_iter().collect()
}

/// Depth-first walk over the inner cells `γ_ij` (i, j ≥ 1), row-major, with
/// running row and column budgets; the border `γ_i0`, `γ_0j` is what is left.
struct GammaWalk<'a> {
    fs: &'a [(&'a Monomial, u32)],
    gs: &'a [(&'a Monomial, u32)],
    rows: Vec<u32>,
    cols: Vec<u32>,
    inner: Vec<u32>,
    arity: usize,
    out: BTreeMap<OrbitIndex, BigInt>,
}

impl GammaWalk<'_> {
    fn run(&mut self, cell: usize) {
        let h = self.gs.len();
        if cell == self.inner.len() {
            self.emit();
            return;
        }
        let (i, j) = (cell / h, cell % h);
        let top = self.rows[i].min(self.cols[j]);
        for v in 0..=top {
            self.inner[cell] = v;
            self.rows[i] -= v;
            self.cols[j] -= v;
            self.run(cell + 1);
            self.rows[i] += v;
            self.cols[j] += v;
        }
        self.inner[cell] = 0;
    }

    fn emit(&mut self) {
        let h = self.gs.len();
        let mut args = Vec::new();
        for (i, (f, _)) in self.fs.iter().enumerate() {
            if self.rows[i] > 0 {
                args.push(((*f).clone(), self.rows[i]));
            }
        }
        for (j, (g, _)) in self.gs.iter().enumerate() {
            if self.cols[j] > 0 {
                args.push(((*g).clone(), self.cols[j]));
            }
        }
        for (cell, &v) in self.inner.iter().enumerate() {
            if v > 0 {
                args.push((self.fs[cell / h].0.mul(self.gs[cell % h].0), v));
            }
        }
        let (c, gamma) = canonicalize(&TaggedTuple::new(args), self.arity).expect("positive multiplicities");
        *self.out.entry(gamma).or_default() += c;
    }
}

/// All `α` with `∂(α) = a` and `|α| ≤ cap` (no cap when `None`).
///
/// Support monomials are tried in descending graded-lex order, each with its
/// multiplicity running from the largest admissible value down to zero.
pub fn enumerate_basis(a: &[u32], cap: Option<u32>) -> Vec<OrbitIndex> {
    let divisors = Monomial::divisors_of(a);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fill(&divisors, 0, a.to_vec(), cap.unwrap_or(u32::MAX), &mut chosen, &mut out, a.len());
    out
}

fn fill(
    divisors: &[Monomial],
    t: usize,
    rest: Vec<u32>,
    budget: u32,
    chosen: &mut Vec<(Monomial, u32)>,
    out: &mut Vec<OrbitIndex>,
    arity: usize,
) {
    if rest.iter().all(|&r| r == 0) {
        out.push(OrbitIndex::from_entries(arity, chosen.iter().cloned()).expect("valid entries"));
        return;
    }
    if t == divisors.len() || budget == 0 {
        return;
    }
    let mu = &divisors[t];
    let most =
        mu.exponents().iter().zip(&rest).filter(|(e, _)| **e > 0).map(|(e, r)| r / e).min().unwrap_or(0).min(budget);
    for c in (0..=most).rev() {
        let next: Vec<u32> = rest.iter().zip(mu.exponents()).map(|(r, e)| r - c * e).collect();
        if c > 0 {
            chosen.push((mu.clone(), c));
        }
        fill(divisors, t + 1, next, budget - c, chosen, out, arity);
        if c > 0 {
            chosen.pop();
        }
    }
}

/// `e_k(f) = Σ_{|α|=k} Π λ_μ^{α(μ)} e_α` for `f = Σ λ_μ μ` without constant term.
pub fn expand_e_k_of(f: &Polynomial, k: u32) -> Result<MultiSymElement> {
    expand_e_k_of_in(f, k, None)
}

/// As [`expand_e_k_of`], keeping only terms of multidegree `target` when given.
pub fn expand_e_k_of_in(f: &Polynomial, k: u32, target: Option<&[u32]>) -> Result<MultiSymElement> {
    if !num_traits::Zero::is_zero(&f.constant_term()) {
        return Err(Error::NonzeroConstantTerm);
    }
    let ring = f.ring();
    let m = f.arity();
    let support: Vec<(&Monomial, &Coeff)> = f.terms().iter().collect();
    let mut acc: BTreeMap<OrbitIndex, Coeff> = BTreeMap::new();
    let mut chosen: Vec<(Monomial, u32)> = Vec::new();
    let mut degree = vec![0u32; m];
    compose(&support, 0, k, ring.one(), &mut chosen, &mut degree, target, ring, &mut acc);
    acc.retain(|_, c| !num_traits::Zero::is_zero(c));
    Ok(MultiSymElement::from_terms(m, LinComb::from_canonical_terms(ring, acc)))
}

#[allow(clippy::too_many_arguments)]
fn compose(
    support: &[(&Monomial, &Coeff)],
    t: usize,
    left: u32,
    coeff: Coeff,
    chosen: &mut Vec<(Monomial, u32)>,
    degree: &mut Vec<u32>,
    target: Option<&[u32]>,
    ring: CoeffRing,
    acc: &mut BTreeMap<OrbitIndex, Coeff>,
) {
    if let Some(a) = target {
        if degree.iter().zip(a).any(|(d, a)| d > a) {
            return;
        }
    }
    if left == 0 {
        if target.is_none_or(|a| degree.as_slice() == a) {
            let alpha = OrbitIndex::from_entries(degree.len(), chosen.iter().cloned()).expect("valid entries");
            acc.insert(alpha, coeff);
        }
        return;
    }
    if t == support.len() {
        return;
    }
    let (mu, lambda) = support[t];
    for c in (0..=left).rev() {
        for (d, e) in degree.iter_mut().zip(mu.exponents()) {
            *d += c * e;
        }
        if c > 0 {
            chosen.push((mu.clone(), c));
        }
        let next = ring.mul(&coeff, &ring.pow(lambda, c));
        compose(support, t + 1, left - c, next, chosen, degree, target, ring, acc);
        if c > 0 {
            chosen.pop();
        }
        for (d, e) in degree.iter_mut().zip(mu.exponents()) {
            *d -= c * e;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concrete::orbit_sum;
    use crate::ringcore::parse::{parse_multisym, parse_orbit_index, parse_polynomial};
    use proptest::prelude::*;

    const Z: CoeffRing = CoeffRing::Integers;

    fn el(t: &str, m: usize) -> MultiSymElement {
        parse_multisym(t, m, Z).unwrap()
    }

    fn idx(t: &str, m: usize) -> OrbitIndex {
        parse_orbit_index(t, m).unwrap()
    }

    #[test]
    fn two_pairs_times_a_square_in_two_slots() {
        let x = el("E{y1:1, y2:1}", 3);
        let y = el("E{y3:2}", 3);
        let got = x.multiply(&y).unwrap().project_n(2);
        assert_eq!(got, el("E{y1*y3:1, y2*y3:1}", 3));
        assert_eq!(x.multiply_projected(&y, 2).unwrap(), got);
    }

    #[test]
    fn unit_and_square() {
        let x = el("E{y1:1, y2:2} - 3*E{y1*y2:1}", 2);
        assert_eq!(MultiSymElement::one(2, Z).multiply(&x).unwrap(), x);
        let e1 = el("E{y1:1}", 1);
        assert_eq!(e1.multiply(&e1).unwrap(), el("2*E{y1:2} + E{y1^2:1}", 1));
        assert_eq!(e1.multiply(&e1).unwrap().to_string(), "E{y1^2:1} + 2*E{y1:2}");
    }

    #[test]
    fn projection() {
        assert!(el("E{y1:3}", 1).project_n(2).is_zero());
        let x = el("E{y1:1} + E{y1^2:1}", 1);
        assert_eq!(x.project_n(2), x);
    }

    #[test]
    fn basis_enumeration() {
        assert_eq!(enumerate_basis(&[2], None), vec![idx("E{y1^2:1}", 1), idx("E{y1:2}", 1)]);
        assert_eq!(enumerate_basis(&[2], Some(1)), vec![idx("E{y1^2:1}", 1)]);
        assert_eq!(enumerate_basis(&[1, 1], Some(2)), vec![idx("E{y1*y2:1}", 2), idx("E{y1:1, y2:1}", 2)]);
        assert_eq!(enumerate_basis(&[0, 0], None), vec![OrbitIndex::empty(2)]);
        // partitions of 6
        assert_eq!(enumerate_basis(&[6], None).len(), 11);
    }

    #[test]
    fn e_k_of_sums() {
        let f = parse_polynomial("y1 + y2", 2, Z).unwrap();
        assert_eq!(expand_e_k_of(&f, 2).unwrap(), el("E{y1:2} + E{y1:1, y2:1} + E{y2:2}", 2));
        let g = parse_polynomial("y1*y2", 2, Z).unwrap();
        assert_eq!(expand_e_k_of(&g, 3).unwrap(), el("E{y1*y2:3}", 2));
        assert_eq!(expand_e_k_of(&f, 0).unwrap(), MultiSymElement::one(2, Z));
        let h = parse_polynomial("y1 + 1", 1, Z).unwrap();
        assert_eq!(expand_e_k_of(&h, 1), Err(Error::NonzeroConstantTerm));
        let w = parse_polynomial("2*y1 - y2", 2, Z).unwrap();
        assert_eq!(expand_e_k_of(&w, 2).unwrap(), el("4*E{y1:2} - 2*E{y1:1, y2:1} + E{y2:2}", 2));
        assert_eq!(expand_e_k_of_in(&w, 2, Some(&[1, 1])).unwrap(), el("-2*E{y1:1, y2:1}", 2));
    }

    #[test]
    fn coefficients_reduce_mod_p() {
        let f2 = CoeffRing::PrimeField(2);
        let e1 = parse_multisym("E{y1:1}", 1, f2).unwrap();
        assert_eq!(e1.multiply(&e1).unwrap(), parse_multisym("E{y1^2:1}", 1, f2).unwrap());
    }

    fn basis_in(n: usize, x: &MultiSymElement) -> crate::concrete::ConcretePoly {
        let mut acc = crate::concrete::ConcretePoly::zero(n, x.arity(), x.ring());
        for (g, c) in x.terms().iter() {
            acc = acc.add(&orbit_sum(g, n, x.ring()).scale(c)).unwrap();
        }
        acc
    }

    fn small_index(m: usize) -> impl Strategy<Value = OrbitIndex> {
        proptest::collection::vec((proptest::collection::vec(0u32..3, m), 1u32..3), 0..3)
            .prop_filter_map("nonconstant", move |v| {
                OrbitIndex::from_entries(m, v.into_iter().map(|(e, k)| (Monomial::new(e), k))).ok()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn product_matches_concrete(a in small_index(2), b in small_index(2)) {
            let n = (a.size() + b.size()) as usize;
            prop_assume!(n <= 5);
            let prod = MultiSymElement::basis(a.clone(), Z).multiply(&MultiSymElement::basis(b.clone(), Z)).unwrap();
            let concrete = orbit_sum(&a, n, Z).mul(&orbit_sum(&b, n, Z)).unwrap();
            prop_assert_eq!(basis_in(n, &prod), concrete);
            let mut deg = a.multidegree();
            deg.iter_mut().zip(b.multidegree()).for_each(|(x, y)| *x += y);
            for (g, _) in prod.terms().iter() {
                prop_assert!(g.size() >= a.size().max(b.size()));
                prop_assert_eq!(g.multidegree(), deg.clone());
            }
        }

        #[test]
        fn commutative_and_associative(a in small_index(2), b in small_index(2), c in small_index(2)) {
            let (x, y, z) = (
                MultiSymElement::basis(a, Z),
                MultiSymElement::basis(b, Z),
                MultiSymElement::basis(c, Z),
            );
            prop_assert_eq!(x.multiply(&y).unwrap(), y.multiply(&x).unwrap());
            prop_assert_eq!(
                x.multiply(&y).unwrap().multiply(&z).unwrap(),
                x.multiply(&y.multiply(&z).unwrap()).unwrap()
            );
        }

        #[test]
        fn projection_is_a_homomorphism(a in small_index(2), b in small_index(2), n in 1usize..4) {
            let (x, y) = (MultiSymElement::basis(a, Z), MultiSymElement::basis(b, Z));
            let lhs = x.multiply(&y).unwrap().project_n(n);
            let rhs = x.project_n(n).multiply(&y.project_n(n)).unwrap().project_n(n);
            prop_assert_eq!(&lhs, &rhs);
            prop_assert_eq!(lhs.project_n(n), lhs);
        }
    }
}
