//! Rank certificates for the basis, generation and presentation statements at
//! fixed `(n, m, a)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{OnceLock, RwLock};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::linalg::{smith_normal_form, Echelon, Field, Lattice};
use super::rewrite::{
    eval_e1_poly, eval_generator_poly, generator_monomials, generators_below, rational_rewrite_to_e1, rewrite_in,
    rewrite_to_generators, sigma,
};
use crate::concrete::{orbit_sum, ConcretePoly};
use crate::error::{Error, Result};
use crate::orbitring::{enumerate_basis, expand_e_k_of_in, MultiSymElement, OrbitIndex};
use crate::ringcore::{CoeffRing, GenSym, GeneratorPoly, LinComb, Monomial, Polynomial};

const Z: CoeffRing = CoeffRing::Integers;
const Q: CoeffRing = CoeffRing::Rationals;

/// A wall-clock allowance checked between units of work.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    start: Instant,
    limit: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { start: Instant::now(), limit: None }
    }

    pub fn new(limit: Duration) -> Self {
        Budget { start: Instant::now(), limit: Some(limit) }
    }

    /// A fresh allowance of the same length, starting now.
    pub fn restart(&self) -> Self {
        Budget { start: Instant::now(), limit: self.limit }
    }

    pub fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }

    pub fn check(&self) -> Result<()> {
        match self.limit {
            Some(limit) if self.start.elapsed() > limit => Err(Error::BudgetExceeded(limit)),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// The outcome of one rank check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankCertificate {
    pub suite: String,
    /// `None` for statements about `A(∞,m)`.
    pub n: Option<usize>,
    pub m: usize,
    pub multidegree: Vec<u32>,
    pub ring: String,
    pub rows: usize,
    pub cols: usize,
    pub ranks: BTreeMap<String, usize>,
    pub verdict: Verdict,
    pub probe_level: Option<u32>,
    pub elapsed_us: u64,
    pub note: Option<String>,
    pub invariant_factors: Option<Vec<String>>,
}

impl RankCertificate {
    fn new(suite: &str, n: Option<usize>, m: usize, a: &[u32], field: &str) -> Self {
        RankCertificate {
            suite: suite.into(),
            n,
            m,
            multidegree: a.to_vec(),
            ring: field.into(),
            rows: 0,
            cols: 0,
            ranks: BTreeMap::new(),
            verdict: Verdict::Fail,
            probe_level: None,
            elapsed_us: 0,
            note: None,
            invariant_factors: None,
        }
    }

    fn rank(mut self, label: &str, value: usize) -> Self {
        self.ranks.insert(label.into(), value);
        self
    }

    fn finish(mut self, pass: bool, started: Instant) -> Self {
        self.verdict = if pass { Verdict::Pass } else { Verdict::Fail };
        self.elapsed_us = started.elapsed().as_micros() as u64;
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Equal up to wall time.
    pub fn same_outcome(&self, other: &Self) -> bool {
        RankCertificate { elapsed_us: 0, ..self.clone() } == RankCertificate { elapsed_us: 0, ..other.clone() }
    }

    /// One report line without timing, so reports are reproducible.
    pub fn report_line(&self) -> String {
        let mut s = format!(
            "{} {} n={} m={} a=({}) {} rows={} cols={}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.suite,
            self.n.map_or("inf".to_string(), |n| n.to_string()),
            self.m,
            self.multidegree.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
            self.ring,
            self.rows,
            self.cols,
        );
        for (k, v) in &self.ranks {
            s.push_str(&format!(" {k}={v}"));
        }
        if let Some(level) = self.probe_level {
            s.push_str(&format!(" level={level}"));
        }
        if let Some(f) = &self.invariant_factors {
            s.push_str(&format!(" snf=[{}]", f.join(",")));
        }
        if let Some(note) = &self.note {
            s.push_str(&format!(" ({note})"));
        }
        s
    }
}

impl fmt::Display for RankCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.report_line())
    }
}

/// All `a ∈ N^m` with `1 ≤ |a| ≤ max_degree`, by total degree, then
/// descending lexicographic.
pub fn multidegrees_up_to(m: usize, max_degree: u32) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> =
        Monomial::up_to_degree(m, max_degree).into_iter().map(|mu| mu.exponents().to_vec()).collect();
    out.sort_by(|a, b| a.iter().sum::<u32>().cmp(&b.iter().sum::<u32>()).then_with(|| b.cmp(a)));
    out
}

/// Concrete monomials of `A(n,m)` with multidegree `a`: `n × m` exponent
/// matrices with column sums `a`, flattened slot-major.
pub fn concrete_monomials(n: usize, a: &[u32]) -> Vec<Monomial> {
    let m = a.len();
    let mut out = vec![vec![0u32; n * m]];
    for (i, &ai) in a.iter().enumerate() {
        let mut next = Vec::new();
        for base in &out {
            for comp in compositions(ai, n) {
                let mut e = base.clone();
                for (j, c) in comp.iter().enumerate() {
                    e[j * m + i] = *c;
                }
                next.push(e);
            }
        }
        out = next;
    }
    let mut monos: Vec<Monomial> = out.into_iter().map(Monomial::new).collect();
    monos.sort();
    monos
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn index_of<K: std::hash::Hash + Eq + Clone>(keys: &[K]) -> HashMap<K, usize> {
    keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect()
}

fn concrete_coords(p: &ConcretePoly, index: &HashMap<Monomial, usize>) -> Vec<BigInt> {
    let mut v = vec![BigInt::from(0); index.len()];
    for (mono, c) in p.terms().iter() {
        v[index[mono]] = c.to_integer();
    }
    v
}

fn orbit_coords(x: &MultiSymElement, index: &HashMap<OrbitIndex, usize>) -> Vec<BigInt> {
    let mut v = vec![BigInt::from(0); index.len()];
    for (alpha, c) in x.terms().iter() {
        v[*index.get(alpha).expect("term in the expected graded piece")] = c.to_integer();
    }
    v
}

/// The orbit basis of `A(n,m,a)^{S_n}` against two independent computations:
/// the span of symmetrized concrete monomials, and the orbit-sum vectors.
pub fn certify_basis(n: usize, m: usize, a: &[u32], budget: &Budget) -> Result<RankCertificate> {
    let started = Instant::now();
    assert_eq!(a.len(), m, "multidegree length");
    let basis = enumerate_basis(a, Some(n as u32));
    let monos = concrete_monomials(n, a);
    let index = index_of(&monos);
    let mut sym = Echelon::new(Field::Rationals, monos.len());
    let perms = permutations(n);
    for mono in &monos {
        budget.check()?;
        let mut v = vec![BigInt::from(0); monos.len()];
        for sigma in &perms {
            let e = mono.exponents();
            let mut img = vec![0u32; e.len()];
            for (j, &s) in sigma.iter().enumerate() {
                img[s * m..(s + 1) * m].copy_from_slice(&e[j * m..(j + 1) * m]);
            }
            v[index[&Monomial::new(img)]] += 1;
        }
        sym.insert(&v);
    }
    let mut orb = Echelon::new(Field::Rationals, monos.len());
    for alpha in &basis {
        budget.check()?;
        orb.insert(&concrete_coords(&orbit_sum(alpha, n, Z), &index));
    }
    let pass = sym.rank() == basis.len() && orb.rank() == basis.len();
    let mut cert = RankCertificate::new("basis", Some(n), m, a, "Q")
        .rank("basis", basis.len())
        .rank("symmetrized", sym.rank())
        .rank("orbit_sums", orb.rank());
    cert.rows = monos.len() + basis.len();
    cert.cols = monos.len();
    Ok(cert.finish(pass, started))
}

/// `π_n(e_α e_β)` against the concrete product, for every pair with
/// `∂(α) + ∂(β) = a` and `|α|, |β| ≤ n`.
pub fn certify_product(n: usize, m: usize, a: &[u32], budget: &Budget) -> Result<RankCertificate> {
    let started = Instant::now();
    let (mut pairs, mut failures) = (0usize, 0usize);
    for d in Monomial::divisors_of(a) {
        let d = d.exponents().to_vec();
        let e: Vec<u32> = a.iter().zip(&d).map(|(x, y)| x - y).collect();
        if e.iter().all(|&x| x == 0) || d > e {
            continue;
        }
        for alpha in enumerate_basis(&d, Some(n as u32)) {
            for beta in enumerate_basis(&e, Some(n as u32)) {
                budget.check()?;
                pairs += 1;
                let prod = MultiSymElement::basis(alpha.clone(), Z)
                    .multiply_projected(&MultiSymElement::basis(beta.clone(), Z), n)?;
                let mut lhs = ConcretePoly::zero(n, m, Z);
                for (g, c) in prod.terms().iter() {
                    lhs = lhs.add(&orbit_sum(g, n, Z).scale(c))?;
                }
                let rhs = orbit_sum(&alpha, n, Z).mul(&orbit_sum(&beta, n, Z))?;
                failures += usize::from(lhs != rhs);
            }
        }
    }
    let mut cert = RankCertificate::new("product", Some(n), m, a, "Z").rank("pairs", pairs).rank("failures", failures);
    cert.rows = pairs;
    Ok(cert.finish(failures == 0, started))
}

/// `eval_n(rewrite(α)) = e_α(n)` for every `α` with `∂(α) = a`, including
/// those with `|α| > n`, whose orbit sums vanish.
pub fn certify_rewrite(n: usize, m: usize, a: &[u32], budget: &Budget) -> Result<RankCertificate> {
    let started = Instant::now();
    let basis = enumerate_basis(a, None);
    let mut failures = 0;
    for alpha in &basis {
        budget.check()?;
        let g = rewrite_to_generators(alpha);
        failures += usize::from(eval_generator_poly(&g, n, m) != orbit_sum(alpha, n, Z));
    }
    let mut cert =
        RankCertificate::new("rewrite", Some(n), m, a, "Z").rank("indices", basis.len()).rank("failures", failures);
    cert.rows = basis.len();
    Ok(cert.finish(failures == 0, started))
}

type RelationTable = RwLock<HashMap<(Vec<u32>, u32), RankCertificate>>;

fn relation_cache() -> &'static RelationTable {
    static CACHE: OnceLock<RelationTable> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Whether the components of multidegree `a` of `e_k(f)`, over all `f`
/// without constant term, span `V_{k,a} = span{e_α : |α| = k, ∂(α) = a}`
/// over `Q`.
///
/// Probes `f` are sums `Σ λ_μ μ` over the monomials occurring in some such
/// `α`, with `λ_μ ∈ {0, 1}` first, ordered by support size; if they fail to
/// span, the coefficient range grows one step at a time up to `{0, …, k}`.
/// The answer does not depend on `n`, which only fixes `k > n`.
pub fn certify_relation_span(n: usize, m: usize, a: &[u32], k: u32, budget: &Budget) -> Result<RankCertificate> {
    let key = (a.to_vec(), k);
    if let Some(hit) = relation_cache().read().expect("relation cache poisoned").get(&key) {
        let mut hit = hit.clone();
        hit.n = Some(n);
        return Ok(hit);
    }
    let mut cert = relation_span_uncached(m, a, k, budget)?;
    relation_cache().write().expect("relation cache poisoned").insert(key, cert.clone());
    cert.n = Some(n);
    Ok(cert)
}

fn relation_span_uncached(m: usize, a: &[u32], k: u32, budget: &Budget) -> Result<RankCertificate> {
    let started = Instant::now();
    let target: Vec<OrbitIndex> = enumerate_basis(a, Some(k)).into_iter().filter(|x| x.size() == k).collect();
    let mut cert = RankCertificate::new("relations", None, m, a, "Q");
    cert.cols = target.len();
    if target.is_empty() {
        cert.note = Some(format!("no index of size {k}"));
        return Ok(cert.rank("V", 0).rank("span", 0).finish(true, started));
    }
    let index = index_of(&target);
    let mut universe: Vec<Monomial> =
        target.iter().flat_map(|x| x.iter().map(|(mu, _)| mu.clone()).collect::<Vec<_>>()).collect();
    universe.sort_by(|x, y| y.cmp(x));
    universe.dedup();
    let mut ech = Echelon::new(Field::Rationals, target.len());
    let mut probes = 0usize;
    let mut level = 1;
    'levels: while level <= k {
        for size in 1..=universe.len() {
            for support in combinations(universe.len(), size) {
                for lambdas in coefficient_vectors(size, level) {
                    budget.check()?;
                    probes += 1;
                    let mut terms = LinComb::zero(Q);
                    for (&t, &l) in support.iter().zip(&lambdas) {
                        terms.add_term(universe[t].clone(), &Q.from_int(l));
                    }
                    let f = Polynomial::from_terms(m, terms)?;
                    let e = expand_e_k_of_in(&f, k, Some(a))?;
                    ech.insert(&orbit_coords(&e, &index));
                    if ech.is_full() {
                        break 'levels;
                    }
                }
            }
        }
        level += 1;
    }
    cert.rows = probes;
    cert.probe_level = Some(level.min(k));
    let pass = ech.is_full();
    Ok(cert.rank("V", target.len()).rank("span", ech.rank()).finish(pass, started))
}

fn combinations(n: usize, r: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut state: Option<Vec<usize>> = if r <= n { Some((0..r).collect()) } else { None };
    std::iter::from_fn(move || {
        let current = state.clone()?;
        let mut next = current.clone();
        let mut i = r;
        state = loop {
            if i == 0 {
                break None;
            }
            i -= 1;
            if next[i] < n - r + i {
                next[i] += 1;
                for j in i + 1..r {
                    next[j] = next[j - 1] + 1;
                }
                break Some(next);
            }
        };
        Some(current)
    })
}

/// Vectors in `{1, …, level}^size` that use `level` somewhere (all ones at
/// level one).
fn coefficient_vectors(size: usize, level: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..size {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                (1..=level).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out.retain(|v| v.contains(&level));
    out
}

/// `rank C(m)_a − rank I_a = rank A(n,m,a)^{S_n}`, where `I_a` is spanned by
/// `b · rewrite(e_α)` for `|α| > n` and generator monomials `b` of the
/// complementary multidegree.
///
/// With `cross_check`, also requires every relation-span certificate for
/// `a' ≤ a` and `n < k ≤ |a'|` to pass, so the ideal is generated by the
/// `e_k(f)` with `k > n`.
pub fn certify_presentation(
    n: usize,
    m: usize,
    a: &[u32],
    ring: CoeffRing,
    cross_check: bool,
    budget: &Budget,
) -> Result<RankCertificate> {
    let started = Instant::now();
    let field = Field::for_ring(ring);
    let monos = generator_monomials(a);
    let index = index_of(&monos);
    let mut ideal = Echelon::new(field, monos.len());
    let mut rows = 0usize;
    'outer: for d in Monomial::divisors_of(a) {
        let d = d.exponents().to_vec();
        let rest: Vec<u32> = a.iter().zip(&d).map(|(x, y)| x - y).collect();
        let multipliers = generator_monomials(&rest);
        for alpha in enumerate_basis(&d, None).into_iter().filter(|x| x.size() as usize > n) {
            let g = rewrite_to_generators(&alpha);
            for b in &multipliers {
                budget.check()?;
                rows += 1;
                let mut v = vec![BigInt::from(0); monos.len()];
                for (mono, c) in g.iter() {
                    v[index[&mono.mul(b)]] += c.to_integer();
                }
                ideal.insert(&v);
                if ideal.is_full() {
                    break 'outer;
                }
            }
        }
    }
    let invariants = enumerate_basis(a, Some(n as u32)).len();
    let mut pass = monos.len() - ideal.rank() == invariants;
    let mut cert = RankCertificate::new("presentation", Some(n), m, a, &field.name())
        .rank("C_a", monos.len())
        .rank("I_a", ideal.rank())
        .rank("invariants", invariants);
    if cross_check {
        let mut checks = 0;
        for d in Monomial::divisors_of(a) {
            for k in n as u32 + 1..=d.degree() {
                let rel = certify_relation_span(n, m, d.exponents(), k, budget)?;
                checks += 1;
                pass &= rel.passed();
            }
        }
        cert = cert.rank("relation_checks", checks);
    }
    cert.rows = rows;
    cert.cols = monos.len();
    Ok(cert.finish(pass, started))
}

/// Spanning of `A(n,m,a)^{S_n}` by products of the given generator images
/// (each an element of `A(∞,m)` with its multidegree), computed inside
/// `A(n,m)`. Over `Z` the lattice of products is compared with the full
/// lattice through its Smith invariants.
fn products_span(
    n: usize,
    a: &[u32],
    ring: CoeffRing,
    images: &[(Vec<u32>, MultiSymElement)],
    budget: &Budget,
) -> Result<(usize, usize, usize, Option<Vec<BigInt>>)> {
    let target = enumerate_basis(a, Some(n as u32));
    let index = index_of(&target);
    let m = a.len();
    let mut span = match ring {
        CoeffRing::Integers => Span::Lattice(Lattice::new(target.len())),
        other => Span::Field(Echelon::new(Field::for_ring(other), target.len())),
    };
    let mut rows = 0;
    if !target.is_empty() {
        let mut walk = ProductWalk { n, images, index: &index, span: &mut span, rows: &mut rows, budget };
        walk.run(0, a.to_vec(), MultiSymElement::one(m, Z))?;
    }
    let (rank, snf) = match &span {
        Span::Field(e) => (e.rank(), None),
        Span::Lattice(l) => {
            let factors = smith_normal_form(&l.basis());
            (l.rank(), Some(factors))
        }
    };
    Ok((target.len(), rank, rows, snf))
}

enum Span {
    Field(Echelon),
    Lattice(Lattice),
}

impl Span {
    fn insert(&mut self, v: &[BigInt]) {
        match self {
            Span::Field(e) => {
                e.insert(v);
            }
            Span::Lattice(l) => l.insert(v),
        }
    }

    fn is_full(&self) -> bool {
        match self {
            Span::Field(e) => e.is_full(),
            Span::Lattice(l) => l.is_full(),
        }
    }
}

struct ProductWalk<'a> {
    n: usize,
    images: &'a [(Vec<u32>, MultiSymElement)],
    index: &'a HashMap<OrbitIndex, usize>,
    span: &'a mut Span,
    rows: &'a mut usize,
    budget: &'a Budget,
}

impl ProductWalk<'_> {
    /// Returns true once the span is full.
    fn run(&mut self, t: usize, rest: Vec<u32>, prod: MultiSymElement) -> Result<bool> {
        if rest.iter().all(|&r| r == 0) {
            self.budget.check()?;
            *self.rows += 1;
            self.span.insert(&orbit_coords(&prod, self.index));
            return Ok(self.span.is_full());
        }
        if t == self.images.len() || prod.is_zero() {
            return Ok(false);
        }
        let (d, img) = &self.images[t];
        let most = d.iter().zip(&rest).filter(|(e, _)| **e > 0).map(|(e, r)| r / e).min().unwrap_or(0);
        let mut powers = vec![prod];
        for _ in 0..most {
            let next = powers.last().expect("nonempty").multiply_projected(img, self.n)?;
            powers.push(next);
        }
        for c in (0..=most).rev() {
            let next: Vec<u32> = rest.iter().zip(d).map(|(r, e)| r - c * e).collect();
            if self.run(t + 1, next, powers[c as usize].clone())? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn generator_images(gens: &[GenSym]) -> Vec<(Vec<u32>, MultiSymElement)> {
    gens.iter()
        .map(|s| {
            let alpha = OrbitIndex::singleton(s.mu().clone(), s.index()).expect("valid generator");
            (s.multidegree(), MultiSymElement::basis(alpha, Z))
        })
        .collect()
}

/// Spanning of `A(n,m,a)^{S_n}` by products of `e_k(μ)` with `μ` primitive,
/// `k ≤ n` and `k·l(μ) ≤ max_generator_degree`.
pub fn certify_generation(
    n: usize,
    m: usize,
    a: &[u32],
    ring: CoeffRing,
    max_generator_degree: u32,
    budget: &Budget,
) -> Result<RankCertificate> {
    let started = Instant::now();
    let gens: Vec<GenSym> = generators_below(a)
        .into_iter()
        .filter(|s| s.index() as usize <= n && s.index() * s.mu().degree() <= max_generator_degree)
        .collect();
    let (dim, rank, rows, snf) = products_span(n, a, ring, &generator_images(&gens), budget)?;
    let field = if ring == Z { "Z".to_string() } else { Field::for_ring(ring).name() };
    let pass = match &snf {
        Some(f) => rank == dim && f.iter().all(num_traits::One::is_one),
        None => rank == dim,
    };
    let mut cert = RankCertificate::new("degree-bound", Some(n), m, a, &field)
        .rank("invariants", dim)
        .rank("span", rank)
        .rank("generators", gens.len());
    cert.rows = rows;
    cert.cols = dim;
    cert.invariant_factors = snf.map(|f| f.iter().map(BigInt::to_string).collect());
    cert.note = Some(format!("generator degree <= {max_generator_degree}"));
    Ok(cert.finish(pass, started))
}

/// `max(n, n(m-1))`.
pub fn generation_bound(n: usize, m: usize) -> u32 {
    n.max(n * m.saturating_sub(1)) as u32
}

/// One certificate per multidegree with `|a| ≤ max_total_degree` at the
/// bound `max(n, n(m-1))`, followed by the sharpness probe: the least
/// generator degree `D` at which every one of those pieces is spanned. The
/// probe passes iff `D` is at most the bound.
pub fn certify_generation_bound(
    n: usize,
    m: usize,
    ring: CoeffRing,
    max_total_degree: u32,
    budget: &Budget,
) -> Result<Vec<RankCertificate>> {
    let started = Instant::now();
    let bound = generation_bound(n, m);
    let degrees = multidegrees_up_to(m, max_total_degree);
    let mut out = Vec::new();
    for a in &degrees {
        out.push(certify_generation(n, m, a, ring, bound, budget)?);
    }
    let mut minimal = None;
    let mut witness = None;
    // Past the bound only to locate the true minimum; generators of degree
    // above `max_total_degree` cannot matter.
    for d in 1..=bound.max(max_total_degree) {
        let failing = if d == bound {
            out.iter().find(|c| !c.passed()).map(|c| c.multidegree.clone())
        } else {
            let mut first = None;
            for a in &degrees {
                if !certify_generation(n, m, a, ring, d, budget)?.passed() {
                    first = Some(a.clone());
                    break;
                }
            }
            first
        };
        match failing {
            None => {
                minimal = Some(d);
                break;
            }
            Some(a) => witness = Some((d, a)),
        }
    }
    let field = if ring == Z { "Z".to_string() } else { Field::for_ring(ring).name() };
    let mut probe = RankCertificate::new("degree-bound-sharpness", Some(n), m, &[], &field)
        .rank("bound", bound as usize)
        .rank("max_total_degree", max_total_degree as usize);
    if let Some(d) = minimal {
        probe = probe.rank("minimal_degree", d as usize);
    }
    probe.note = Some(match (&minimal, &witness) {
        (Some(d), Some((w, a))) => format!(
            "spanning first succeeds at degree {d}; degree {w} fails at a=({})",
            a.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
        ),
        (Some(d), None) => format!("spanning succeeds already at degree {d}"),
        (None, _) => format!("no generator degree up to {} spans", bound.max(max_total_degree)),
    });
    probe.rows = degrees.len();
    let pass = minimal.is_some_and(|d| d <= bound);
    out.push(probe.finish(pass, started));
    Ok(out)
}

/// The free ring `C(m)` against `A(∞,m)` in multidegree `a`: equal counts,
/// `σ` of the monomial basis independent over `Q`, and `σ ∘ rewrite = id`.
pub fn certify_freeness(m: usize, a: &[u32], budget: &Budget) -> Result<RankCertificate> {
    let started = Instant::now();
    let monos = generator_monomials(a);
    let basis = enumerate_basis(a, None);
    let index = index_of(&basis);
    let mut images = Echelon::new(Field::Rationals, basis.len());
    for b in &monos {
        budget.check()?;
        let g = GeneratorPoly::term(Z, b.clone(), &Z.one());
        images.insert(&orbit_coords(&sigma(&g, m), &index));
    }
    let mut round_trip_failures = 0;
    for alpha in &basis {
        budget.check()?;
        let back = sigma(&rewrite_to_generators(alpha), m);
        round_trip_failures += usize::from(back != MultiSymElement::basis(alpha.clone(), Z));
    }
    let pass = monos.len() == basis.len() && images.rank() == monos.len() && round_trip_failures == 0;
    let mut cert = RankCertificate::new("freeness", None, m, a, "Q")
        .rank("C_a", monos.len())
        .rank("basis", basis.len())
        .rank("sigma_images", images.rank())
        .rank("round_trip_failures", round_trip_failures);
    cert.rows = monos.len();
    cert.cols = basis.len();
    Ok(cert.finish(pass, started))
}

/// Over `Q`: the `e_1` rewrite round-trips for every `α` with `∂(α) = a`, and
/// products of `e_1(μ)` with `l(μ) ≤ n` span `A(n,m,a)^{S_n}`.
pub fn certify_rational(n: usize, m: usize, a: &[u32], budget: &Budget) -> Result<RankCertificate> {
    let started = Instant::now();
    let basis = enumerate_basis(a, None);
    let mut failures = 0;
    for alpha in &basis {
        budget.check()?;
        let g = rational_rewrite_to_e1(alpha, Q)?;
        failures += usize::from(eval_e1_poly(&g, n, m) != orbit_sum(alpha, n, Q));
    }
    let images: Vec<(Vec<u32>, MultiSymElement)> = Monomial::divisors_of(a)
        .into_iter()
        .filter(|mu| mu.degree() as usize <= n)
        .map(|mu| {
            (mu.exponents().to_vec(), MultiSymElement::basis(OrbitIndex::singleton(mu, 1).expect("nonconstant"), Z))
        })
        .collect();
    let (dim, rank, rows, _) = products_span(n, a, Q, &images, budget)?;
    let pass = failures == 0 && rank == dim;
    let mut cert = RankCertificate::new("rational", Some(n), m, a, "Q")
        .rank("indices", basis.len())
        .rank("round_trip_failures", failures)
        .rank("invariants", dim)
        .rank("e1_span", rank);
    cert.rows = rows;
    cert.cols = dim;
    Ok(cert.finish(pass, started))
}

/// The rewrite of `α` over `ring`, checked against `orbit_sum` at `n`.
pub fn check_rewrite_at(alpha: &OrbitIndex, n: usize, ring: CoeffRing) -> bool {
    let g = rewrite_in(alpha, ring);
    eval_generator_poly(&g, n, alpha.arity()) == orbit_sum(alpha, n, ring)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Budget {
        Budget::unlimited()
    }

    #[test]
    fn basis_examples() {
        let c = certify_basis(2, 1, &[2], &b()).unwrap();
        assert!(c.passed());
        assert_eq!(c.ranks["basis"], 2);
        assert_eq!(certify_basis(1, 2, &[1, 1], &b()).unwrap().ranks["basis"], 1);
        let c = certify_basis(2, 2, &[1, 1], &b()).unwrap();
        assert!(c.passed() && c.ranks["symmetrized"] == 2);
    }

    #[test]
    fn relation_examples() {
        let c = certify_relation_span(1, 1, &[2], 2, &b()).unwrap();
        assert!(c.passed() && c.ranks["V"] == 1);
        assert!(certify_relation_span(2, 2, &[2, 1], 3, &b()).unwrap().passed());
        let c = certify_relation_span(2, 2, &[1, 0], 3, &b()).unwrap();
        assert!(c.passed() && c.ranks["V"] == 0);
    }

    #[test]
    fn presentation_examples() {
        for d in 1..=3u32 {
            assert!(certify_presentation(3, 1, &[d], Q, true, &b()).unwrap().passed());
        }
        let c = certify_presentation(1, 2, &[1, 1], Q, true, &b()).unwrap();
        assert!(c.passed());
        assert_eq!((c.ranks["C_a"], c.ranks["I_a"], c.ranks["invariants"]), (2, 1, 1));
        assert!(certify_presentation(2, 2, &[2, 2], Q, true, &b()).unwrap().passed());
        assert!(certify_presentation(2, 2, &[2, 2], CoeffRing::PrimeField(2), false, &b()).unwrap().passed());
    }

    #[test]
    fn generation_small() {
        for c in certify_generation_bound(2, 2, Q, 4, &b()).unwrap() {
            assert!(c.passed(), "{c}");
        }
        let certs = certify_generation_bound(3, 1, Z, 4, &b()).unwrap();
        assert!(certs.iter().all(RankCertificate::passed));
    }

    #[test]
    fn freeness_examples() {
        for a in [vec![3u32], vec![1, 1], vec![2, 1]] {
            let c = certify_freeness(a.len(), &a, &b()).unwrap();
            assert!(c.passed(), "{c}");
        }
        assert_eq!(certify_freeness(2, &[1, 1], &b()).unwrap().ranks["C_a"], 2);
    }

    #[test]
    fn small_helpers() {
        assert_eq!(combinations(4, 2).count(), 6);
        assert_eq!(combinations(3, 0).count(), 1);
        assert_eq!(coefficient_vectors(2, 2).len(), 3);
        assert_eq!(concrete_monomials(3, &[1, 1]).len(), 9);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(multidegrees_up_to(2, 2), vec![vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn budget_is_enforced() {
        let spent = Budget::new(Duration::from_nanos(1));
        std::thread::sleep(Duration::from_millis(2));
        assert!(matches!(certify_basis(2, 2, &[2, 2], &spent), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn reports_are_reproducible() {
        let x = certify_presentation(2, 2, &[2, 1], Q, true, &b()).unwrap();
        let y = certify_presentation(2, 2, &[2, 1], Q, true, &b()).unwrap();
        assert!(x.same_outcome(&y));
        assert_eq!(x.report_line(), y.report_line());
        let json = serde_json::to_string(&x).unwrap();
        let back: RankCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }
}
