//! The concrete ring `A_R(n,m)` in the variables `x_i(j)` and its `S_n` action
//! on the slot index `j`.
//!
//! A concrete monomial is an `n × m` exponent matrix, stored flattened
//! slot-major: the exponent of `x_i(j)` lives at `(j-1)·m + (i-1)`. With the
//! graded-lex order of [`Monomial`] this makes `x1(1) > x2(1) > … > x1(2) > …`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::orbitring::{MultiSymElement, OrbitIndex};
use crate::ringcore::{Algebra, Coeff, CoeffRing, LinComb, Monomial, Polynomial};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ConcretePoly {
    n: usize,
    m: usize,
    terms: LinComb<Monomial>,
}

impl ConcretePoly {
    pub fn zero(n: usize, m: usize, ring: CoeffRing) -> Self {
        ConcretePoly { n, m, terms: LinComb::zero(ring) }
    }

    pub fn one(n: usize, m: usize, ring: CoeffRing) -> Self {
        ConcretePoly { n, m, terms: LinComb::term(ring, Monomial::one(n * m), &ring.one()) }
    }

    pub fn from_terms(n: usize, m: usize, terms: LinComb<Monomial>) -> Self {
        assert!(terms.keys().all(|k| k.arity() == n * m), "concrete monomial has wrong shape");
        ConcretePoly { n, m, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
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

    fn check(&self, other: &Self) -> Result<()> {
        if (self.n, self.m) != (other.n, other.m) {
            return Err(Error::ArityMismatch(self.n * self.m, other.n * other.m));
        }
        if self.ring() != other.ring() {
            return Err(Error::RingMismatch(self.ring(), other.ring()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_terms(self.terms.add(&other.terms)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_terms(self.terms.sub(&other.terms)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_terms(self.terms.mul(&other.terms)))
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        self.with_terms(self.terms.scale(c))
    }

    fn with_terms(&self, terms: LinComb<Monomial>) -> Self {
        ConcretePoly { n: self.n, m: self.m, terms }
    }

    /// Column sums of an exponent matrix: the multidegree in `y_1..y_m`.
    pub fn term_multidegree(&self, mono: &Monomial) -> Vec<u32> {
        let mut a = vec![0u32; self.m];
        for (idx, e) in mono.exponents().iter().enumerate() {
            a[idx % self.m] += e;
        }
        a
    }

    /// The homogeneous component `A_R(n,m,a)`.
    pub fn component(&self, a: &[u32]) -> Self {
        let mut out = self.clone();
        out.terms.retain(|k| {
            let mut d = vec![0u32; a.len()];
            for (idx, e) in k.exponents().iter().enumerate() {
                d[idx % a.len()] += e;
            }
            d == a
        });
        out
    }

    /// Image under `x_i(j) ↦ x_i(σ(j))`; `sigma[j]` is the 0-based image of slot `j`.
    pub fn apply_permutation(&self, sigma: &[usize]) -> Result<Self> {
        let n = self.n;
        let mut seen = vec![false; n];
        if sigma.len() != n || sigma.iter().any(|&s| s >= n || std::mem::replace(&mut seen[s], true)) {
            return Err(Error::InvalidPermutation(n));
        }
        let mut out = LinComb::zero(self.ring());
        for (mono, c) in self.terms.iter() {
            let e = mono.exponents();
            let mut img = vec![0u32; e.len()];
            for (j, &target) in sigma.iter().enumerate() {
                let (src, dst) = (j * self.m, target * self.m);
                img[dst..dst + self.m].copy_from_slice(&e[src..src + self.m]);
            }
            out.add_term(Monomial::new(img), c);
        }
        Ok(self.with_terms(out))
    }

    /// Fixed by the adjacent transpositions `(j, j+1)`, which generate `S_n`.
    pub fn is_invariant(&self) -> bool {
        (0..self.n.saturating_sub(1)).all(|j| {
            let mut sigma: Vec<usize> = (0..self.n).collect();
            sigma.swap(j, j + 1);
            self.apply_permutation(&sigma).expect("valid transposition") == *self
        })
    }

    /// `π^n_{n'}`: sets every `x_i(j)` with `j > n'` to zero.
    pub fn project_slots(&self, n_new: usize) -> Self {
        assert!(n_new <= self.n);
        let m = self.m;
        let mut out = LinComb::zero(self.ring());
        for (mono, c) in self.terms.iter() {
            let e = mono.exponents();
            if e[n_new * m..].iter().all(|&x| x == 0) {
                out.add_term(Monomial::new(e[..n_new * m].to_vec()), c);
            }
        }
        ConcretePoly { n: n_new, m, terms: out }
    }

    /// The orbit type of a concrete monomial: how often each nonconstant row
    /// monomial occurs among the slots.
    pub fn orbit_type(&self, mono: &Monomial) -> OrbitIndex {
        let mut counts: BTreeMap<Monomial, u32> = BTreeMap::new();
        for row in mono.exponents().chunks(self.m) {
            if row.iter().any(|&e| e > 0) {
                *counts.entry(Monomial::new(row.to_vec())).or_default() += 1;
            }
        }
        OrbitIndex::from_entries(self.m, counts).expect("rows are nonconstant")
    }

    /// Coordinates in the orbit basis `{e_α : |α| ≤ n}`.
    ///
    /// Peels off the leading monomial's orbit until nothing is left; the input
    /// must be invariant, which is checked first.
    pub fn to_orbit_basis(&self) -> Result<MultiSymElement> {
        if !self.is_invariant() {
            return Err(Error::NotInvariant);
        }
        let ring = self.ring();
        let mut rest = self.clone();
        let mut out = LinComb::zero(ring);
        while let Some((lead, c)) = rest.terms.leading() {
            let alpha = rest.orbit_type(lead);
            let c = c.clone();
            let orbit = orbit_sum(&alpha, self.n, ring);
            rest.terms.add_scaled_terms(&orbit.terms, &ring.neg(&c));
            out.add_term(alpha, &c);
        }
        Ok(MultiSymElement::from_terms(self.m, out))
    }
}

impl Algebra for ConcretePoly {
    fn zero_like(&self) -> Self {
        ConcretePoly::zero(self.n, self.m, self.ring())
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other).expect("incompatible concrete polynomials")
    }
    fn add_scaled(&mut self, other: &Self, c: &Coeff) {
        self.terms.add_scaled_terms(&other.terms, c)
    }
}

impl fmt::Display for ConcretePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.m;
        let text = crate::ringcore::lincomb::format_terms(
            self.terms.iter().rev().map(|(k, c)| (k.fmt_with(|idx| format!("x{}({})", idx % m + 1, idx / m + 1)), c)),
        );
        f.write_str(&text)
    }
}

impl fmt::Debug for ConcretePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} n={} m={}] {}", self.ring(), self.n, self.m, self)
    }
}

/// `f(j) = f(x_1(j), …, x_m(j))` inside `A(n,m)`; `j` is one-based.
pub fn substitute_slot(f: &Polynomial, j: usize, n: usize) -> Result<ConcretePoly> {
    if j == 0 || j > n {
        return Err(Error::SlotOutOfRange { slot: j, n });
    }
    let m = f.arity();
    let mut out = LinComb::zero(f.ring());
    for (mono, c) in f.terms().iter() {
        let mut exps = vec![0u32; n * m];
        exps[(j - 1) * m..j * m].copy_from_slice(mono.exponents());
        out.add_term(Monomial::new(exps), c);
    }
    Ok(ConcretePoly { n, m, terms: out })
}

/// `e_{(α_1,…,α_k)}(f_1,…,f_k)`: the coefficient of `t_1^{α_1}⋯t_k^{α_k}` in
/// `Π_{i=1}^n (1 + Σ_j t_j f_j(i))`.
///
/// Expands the product slot by slot, keeping only `t`-exponents bounded by
/// `alphas`. Returns zero when `Σ α_j > n`.
pub fn elementary_tuple(fs: &[Polynomial], alphas: &[u32], n: usize) -> Result<ConcretePoly> {
    if fs.len() != alphas.len() {
        return Err(Error::LengthMismatch(fs.len(), alphas.len()));
    }
    let Some(first) = fs.first() else {
        return Err(Error::Invalid("elementary_tuple needs at least one argument".into()));
    };
    let (m, ring) = (first.arity(), first.ring());
    for f in fs {
        if f.arity() != m {
            return Err(Error::ArityMismatch(m, f.arity()));
        }
        if f.ring() != ring {
            return Err(Error::RingMismatch(ring, f.ring()));
        }
    }
    let total: u32 = alphas.iter().sum();
    if total as usize > n {
        return Ok(ConcretePoly::zero(n, m, ring));
    }
    let k = fs.len();
    // t-exponent vector -> accumulated coefficient
    let mut state: BTreeMap<Vec<u32>, ConcretePoly> = BTreeMap::new();
    state.insert(vec![0; k], ConcretePoly::one(n, m, ring));
    for slot in 1..=n {
        let images: Vec<ConcretePoly> = fs.iter().map(|f| substitute_slot(f, slot, n)).collect::<Result<_>>()?;
        let mut next = state.clone();
        for (texp, poly) in &state {
            for (j, img) in images.iter().enumerate() {
                if texp[j] >= alphas[j] {
                    continue;
                }
                let mut t = texp.clone();
                t[j] += 1;
                let prod = poly.mul(img)?;
                next.entry(t).and_modify(|acc| acc.terms.add_scaled_terms(&prod.terms, &ring.one())).or_insert(prod);
            }
        }
        state = next;
    }
    Ok(state.remove(alphas).unwrap_or_else(|| ConcretePoly::zero(n, m, ring)))
}

/// The orbit-basis element `e_α(μ̄)` expanded in `A(n,m)`.
///
/// Enumerates ordered choices of disjoint slot sets, one of size `α(μ)` for
/// each `μ` in the support. Distinct choices give distinct monomials, so
/// every coefficient is one. Zero when `|α| > n`.
pub fn orbit_sum(alpha: &OrbitIndex, n: usize, ring: CoeffRing) -> ConcretePoly {
    let m = alpha.arity();
    let mut out = ConcretePoly::zero(n, m, ring);
    if alpha.size() as usize > n {
        return out;
    }
    let entries: Vec<(&Monomial, u32)> = alpha.iter().collect();
    let mut exps = vec![0u32; n * m];
    let mut terms = BTreeMap::new();
    place(&entries, 0, 0, 0, n, m, &mut exps, &mut terms, &ring.one());
    out.terms = LinComb::from_canonical_terms(ring, terms);
    out
}

#[allow(clippy::too_many_arguments)]
fn place(
    entries: &[(&Monomial, u32)],
    which: usize,
    placed: u32,
    used: u64,
    n: usize,
    m: usize,
    exps: &mut Vec<u32>,
    out: &mut BTreeMap<Monomial, Coeff>,
    one: &Coeff,
) {
    if which == entries.len() {
        out.insert(Monomial::new(exps.clone()), one.clone());
        return;
    }
    let (mu, count) = entries[which];
    if placed == count {
        place(entries, which + 1, 0, used, n, m, exps, out, one);
        return;
    }
    // slots for one monomial are chosen in increasing order; `used` tracks
    // slots taken by earlier monomials, and the lowest admissible slot is
    // after the last slot chosen for this monomial
    let start = if placed == 0 { 0 } else { last_slot_with(exps, mu, n, m) + 1 };
    for j in start..n {
        if used & (1 << j) != 0 {
            continue;
        }
        exps[j * m..(j + 1) * m].copy_from_slice(mu.exponents());
        place(entries, which, placed + 1, used | (1 << j), n, m, exps, out, one);
        exps[j * m..(j + 1) * m].iter_mut().for_each(|e| *e = 0);
    }
}

fn last_slot_with(exps: &[u32], mu: &Monomial, n: usize, m: usize) -> usize {
    (0..n).rev().find(|&j| &exps[j * m..(j + 1) * m] == mu.exponents()).expect("placed slot")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ringcore::parse::{parse_concrete, parse_orbit_index, parse_polynomial};
    use proptest::prelude::*;

    const Z: CoeffRing = CoeffRing::Integers;

    fn poly(t: &str, m: usize) -> Polynomial {
        parse_polynomial(t, m, Z).unwrap()
    }

    fn conc(t: &str, n: usize, m: usize) -> ConcretePoly {
        parse_concrete(t, n, m, Z).unwrap()
    }

    fn idx(t: &str, m: usize) -> OrbitIndex {
        parse_orbit_index(t, m).unwrap()
    }

    #[test]
    fn slot_substitution() {
        assert_eq!(substitute_slot(&poly("y1*y2", 2), 2, 3).unwrap(), conc("x1(2)*x2(2)", 3, 2));
        assert_eq!(substitute_slot(&poly("y1+1", 1), 1, 1).unwrap(), conc("x1(1)+1", 1, 1));
        assert!(substitute_slot(&Polynomial::zero(2, Z), 1, 2).unwrap().is_zero());
        assert!(matches!(substitute_slot(&poly("y1", 1), 3, 2), Err(Error::SlotOutOfRange { .. })));
    }

    #[test]
    fn permutation_action() {
        let p = conc("x1(1)*x2(2)", 2, 2);
        assert_eq!(p.apply_permutation(&[1, 0]).unwrap(), conc("x1(2)*x2(1)", 2, 2));
        assert_eq!(p.apply_permutation(&[0, 1]).unwrap(), p);
        let s = conc("x1(1)+x1(2)", 2, 1);
        assert_eq!(s.apply_permutation(&[1, 0]).unwrap(), s);
        assert!(p.apply_permutation(&[0, 0]).is_err());
    }

    #[test]
    fn invariance() {
        assert!(conc("x1(1)+x1(2)", 2, 1).is_invariant());
        assert!(!conc("x1(1)", 2, 1).is_invariant());
        assert!(orbit_sum(&idx("E{y1:1, y1*y2:1}", 2), 3, Z).is_invariant());
    }

    #[test]
    fn tuple_matches_listing_for_three_slots() {
        let fs = [poly("y1", 2), poly("y2", 2)];
        let got = elementary_tuple(&fs, &[2, 1], 3).unwrap();
        let want = conc("x1(1)*x1(2)*x2(3) + x1(1)*x2(2)*x1(3) + x2(1)*x1(2)*x1(3)", 3, 2);
        assert_eq!(got, want);
        assert_eq!(orbit_sum(&idx("E{y1:2, y2:1}", 2), 3, Z), want);
        assert_eq!(elementary_tuple(&[poly("y1", 1)], &[1], 2).unwrap(), conc("x1(1)+x1(2)", 2, 1));
        assert!(elementary_tuple(&fs, &[2, 2], 3).unwrap().is_zero());
        assert!(matches!(elementary_tuple(&fs, &[1], 3), Err(Error::LengthMismatch(2, 1))));
    }

    #[test]
    fn orbit_sum_edge_cases() {
        assert!(orbit_sum(&idx("E{y1:3}", 1), 2, Z).is_zero());
        assert_eq!(orbit_sum(&OrbitIndex::empty(1), 2, Z), ConcretePoly::one(2, 1, Z));
        // n!/((n-|α|)! Π α(μ)!) terms
        assert_eq!(orbit_sum(&idx("E{y1:2, y2:1}", 2), 4, Z).len(), 12);
        assert_eq!(orbit_sum(&idx("E{y1:2, y2:2, y1*y2:1}", 2), 5, Z).len(), 30);
    }

    #[test]
    fn symmetrization() {
        let s = conc("x1(1)+x1(2)", 2, 1);
        let sq = s.mul(&s).unwrap();
        let got = sq.to_orbit_basis().unwrap();
        let want = crate::ringcore::parse::parse_multisym("E{y1^2:1} + 2*E{y1:2}", 1, Z).unwrap();
        assert_eq!(got, want);
        assert_eq!(conc("x1(1)", 2, 1).to_orbit_basis(), Err(Error::NotInvariant));
    }

    #[test]
    fn repeated_argument_collapse() {
        // e_{(1,2)}(f,f) = 3!/(1!2!) e_3(f)
        let f = poly("y1 + y2^2", 2);
        let split = elementary_tuple(&[f.clone(), f.clone()], &[1, 2], 4).unwrap();
        let merged = elementary_tuple(&[f], &[3], 4).unwrap();
        assert_eq!(split, merged.scale(&Z.from_int(3)));
    }

    #[test]
    fn argument_order_is_irrelevant() {
        let (f, g, h) = (poly("y1+y2", 2), poly("y1*y2", 2), poly("y2^2 - y1", 2));
        let a = elementary_tuple(&[f.clone(), g.clone(), h.clone()], &[1, 2, 1], 4).unwrap();
        let b = elementary_tuple(&[h, f, g], &[1, 1, 2], 4).unwrap();
        assert_eq!(a, b);
    }

    fn small_index() -> impl Strategy<Value = OrbitIndex> {
        proptest::collection::btree_map((0u32..3, 0u32..3), 1u32..3, 0..3).prop_filter_map(
            "nonconstant keys",
            |entries| {
                let e: Vec<(Monomial, u32)> =
                    entries.into_iter().map(|((a, b), k)| (Monomial::new(vec![a, b]), k)).collect();
                OrbitIndex::from_entries(2, e).ok()
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn orbit_sums_round_trip(alpha in small_index(), n in 1usize..5) {
            let p = orbit_sum(&alpha, n, Z);
            prop_assert!(p.is_invariant());
            if alpha.size() as usize <= n {
                let back = p.to_orbit_basis().unwrap();
                prop_assert_eq!(back, MultiSymElement::basis(alpha.clone(), Z));
                for (mono, _) in p.terms().iter() {
                    prop_assert_eq!(p.term_multidegree(mono), alpha.multidegree());
                }
            } else {
                prop_assert!(p.is_zero());
            }
        }

        #[test]
        fn projection_drops_slots(alpha in small_index(), h in 1usize..5, drop in 1usize..4) {
            prop_assume!(drop < h);
            let nn = h - drop;
            let projected = orbit_sum(&alpha, h, Z).project_slots(nn);
            prop_assert_eq!(projected, orbit_sum(&alpha, nn, Z));
        }

        #[test]
        fn single_monomial_tuple_is_orbit_sum(a in 0u32..3, b in 0u32..3, k in 1u32..4, n in 1usize..5) {
            let mu = Monomial::new(vec![a, b]);
            prop_assume!(!mu.is_one());
            let f = Polynomial::from_monomial(mu.clone(), Z, &Z.one());
            let alpha = OrbitIndex::from_entries(2, vec![(mu, k)]).unwrap();
            prop_assert_eq!(elementary_tuple(&[f], &[k], n).unwrap(), orbit_sum(&alpha, n, Z));
        }
    }
}
