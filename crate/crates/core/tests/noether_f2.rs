//! Brute-force check, independent of the library, of the generator degrees of
//! the `S_2` invariants of `F_2[x_i(j)]` with three variables per slot.
//! Polynomials are sets of exponent vectors (coefficients mod 2).

use std::collections::{BTreeMap, BTreeSet};

const M: usize = 3;

type Exps = [u32; 2 * M];
type Poly = BTreeSet<Exps>;

fn swap(e: &Exps) -> Exps {
    let mut out = [0; 2 * M];
    out[..M].copy_from_slice(&e[M..]);
    out[M..].copy_from_slice(&e[..M]);
    out
}

fn multidegree(e: &Exps) -> [u32; M] {
    std::array::from_fn(|i| e[i] + e[M + i])
}

fn monomials_of_degree(d: u32) -> Vec<Exps> {
    let mut out = vec![[0; 2 * M]];
    for pos in 0..2 * M {
        out = out
            .into_iter()
            .flat_map(|e| {
                let used: u32 = e.iter().sum();
                (0..=d - used).map(move |k| {
                    let mut f = e;
                    f[pos] = k;
                    f
                })
            })
            .collect();
    }
    out.retain(|e| e.iter().sum::<u32>() == d);
    out
}

/// Orbit sums of degree `d`, grouped by multidegree.
fn invariants(d: u32) -> BTreeMap<[u32; M], Vec<Poly>> {
    let mut out: BTreeMap<[u32; M], Vec<Poly>> = BTreeMap::new();
    let mut seen = BTreeSet::new();
    for e in monomials_of_degree(d) {
        if seen.contains(&e) {
            continue;
        }
        let orbit: Poly = [e, swap(&e)].into_iter().collect();
        seen.extend(orbit.iter().copied());
        out.entry(multidegree(&e)).or_default().push(orbit);
    }
    out
}

fn mul(f: &Poly, g: &Poly) -> Poly {
    let mut out = Poly::new();
    for a in f {
        for b in g {
            let c: Exps = std::array::from_fn(|i| a[i] + b[i]);
            if !out.remove(&c) {
                out.insert(c);
            }
        }
    }
    out
}

fn rank(rows: &[Poly]) -> usize {
    let mut pivots: BTreeMap<Exps, Poly> = BTreeMap::new();
    for row in rows {
        let mut r = row.clone();
        while let Some(&lead) = r.iter().next_back() {
            match pivots.get(&lead) {
                Some(p) => r = r.symmetric_difference(p).copied().collect(),
                None => {
                    pivots.insert(lead, r);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// Multidegrees of total degree `d` carrying invariants that are not sums of
/// products of lower-degree invariants.
fn indecomposable_pieces(d: u32) -> Vec<[u32; M]> {
    let by_degree: Vec<_> = (0..=d).map(invariants).collect();
    let mut out = Vec::new();
    for (a, basis) in &by_degree[d as usize] {
        let mut products = Vec::new();
        for d1 in 1..=d / 2 {
            for (b, fs) in &by_degree[d1 as usize] {
                let c: [u32; M] = std::array::from_fn(|i| a[i].wrapping_sub(b[i]));
                if c.iter().any(|&x| x > a.iter().copied().max().unwrap_or(0)) {
                    continue;
                }
                if let Some(gs) = by_degree[(d - d1) as usize].get(&c) {
                    for f in fs {
                        products.extend(gs.iter().map(|g| mul(f, g)));
                    }
                }
            }
        }
        if rank(&products) < basis.len() {
            out.push(*a);
        }
    }
    out
}

#[test]
fn degree_three_generator_is_needed() {
    assert!(indecomposable_pieces(3).contains(&[1, 1, 1]));
}

#[test]
fn degree_four_has_no_new_generators() {
    assert_eq!(indecomposable_pieces(4), Vec::<[u32; M]>::new());
    assert_eq!(indecomposable_pieces(5), Vec::<[u32; M]>::new());
}
