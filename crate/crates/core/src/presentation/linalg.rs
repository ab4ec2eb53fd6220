//! Exact ranks over `Q` and `F_p`, lattice bases and Smith normal form.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::ringcore::CoeffRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// The field a rank over `ring` is taken in; `Z` ranks are taken over `Q`.
    pub fn for_ring(ring: CoeffRing) -> Field {
        match ring {
            CoeffRing::PrimeField(p) => Field::Prime(p),
            _ => Field::Rationals,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Field::Rationals => "Q".into(),
            Field::Prime(p) => format!("F{p}"),
        }
    }
}

/// A row-echelon basis grown one vector at a time.
///
/// Over `Q` rows stay integral: elimination is cross-multiplication followed
/// by division by the row content. A row with pivot `c` is zero left of `c`.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    width: usize,
    int_rows: BTreeMap<usize, Vec<BigInt>>,
    mod_rows: BTreeMap<usize, Vec<u64>>,
}

impl Echelon {
    pub fn new(field: Field, width: usize) -> Self {
        Echelon { field, width, int_rows: BTreeMap::new(), mod_rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.int_rows.len() + self.mod_rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.width
    }

    /// Adds `v` to the span; true when the rank grew.
    pub fn insert(&mut self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.width, "row length");
        match self.field {
            Field::Rationals => match self.reduce_int(v.to_vec()) {
                Some((col, row)) => {
                    self.int_rows.insert(col, row);
                    true
                }
                None => false,
            },
            Field::Prime(p) => {
                let row: Vec<u64> = v.iter().map(|x| reduce_mod(x, p)).collect();
                match self.reduce_mod(row, p) {
                    Some((col, row)) => {
                        self.mod_rows.insert(col, row);
                        true
                    }
                    None => false,
                }
            }
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        match self.field {
            Field::Rationals => self.reduce_int(v.to_vec()).is_none(),
            Field::Prime(p) => self.reduce_mod(v.iter().map(|x| reduce_mod(x, p)).collect(), p).is_none(),
        }
    }

    fn reduce_int(&self, mut v: Vec<BigInt>) -> Option<(usize, Vec<BigInt>)> {
        for col in 0..self.width {
            if v[col].is_zero() {
                continue;
            }
            let Some(row) = self.int_rows.get(&col) else {
                make_primitive(&mut v);
                return Some((col, v));
            };
            let (a, b) = (row[col].clone(), v[col].clone());
            let g = a.gcd(&b);
            let (a, b) = (a / &g, b / &g);
            for j in col..self.width {
                v[j] = &v[j] * &a - &row[j] * &b;
            }
            make_primitive(&mut v);
        }
        None
    }

    fn reduce_mod(&self, mut v: Vec<u64>, p: u64) -> Option<(usize, Vec<u64>)> {
        for col in 0..self.width {
            if v[col] == 0 {
                continue;
            }
            let Some(row) = self.mod_rows.get(&col) else {
                let inv = crate::ringcore::coeff::mod_inverse(v[col], p);
                for x in v.iter_mut().skip(col) {
                    *x = mul_mod(*x, inv, p);
                }
                return Some((col, v));
            };
            let f = v[col];
            for j in col..self.width {
                v[j] = (v[j] + p - mul_mod(f, row[j], p)) % p;
            }
        }
        None
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn reduce_mod(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    u64::try_from(r).expect("residue fits a word")
}

fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in v.iter_mut() {
        *x = &*x / &g;
    }
}

/// Exact rank of a list of equal-length vectors.
pub fn rank_over(field: Field, rows: &[Vec<BigInt>]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let mut ech = Echelon::new(field, first.len());
    for r in rows {
        ech.insert(r);
        if ech.is_full() {
            break;
        }
    }
    ech.rank()
}

/// A basis of the `Z`-lattice spanned by the rows, in Hermite form: pivots
/// are positive and each pivot row is zero left of its pivot.
#[derive(Clone, Debug)]
pub struct Lattice {
    width: usize,
    rows: BTreeMap<usize, Vec<BigInt>>,
}

impl Lattice {
    pub fn new(width: usize) -> Self {
        Lattice { width, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, v: &[BigInt]) {
        let mut v = v.to_vec();
        let mut col = 0;
        while col < self.width {
            if v[col].is_zero() {
                col += 1;
                continue;
            }
            let Some(row) = self.rows.get(&col).cloned() else {
                if v[col].is_negative() {
                    v.iter_mut().for_each(|x| *x = -&*x);
                }
                self.rows.insert(col, v);
                return;
            };
            // replace (row, v) by (g-combination, eliminated v) with a unimodular step
            let e = row[col].extended_gcd(&v[col]);
            let (a, b) = (&row[col] / &e.gcd, &v[col] / &e.gcd);
            let mut top: Vec<BigInt> = (0..self.width).map(|j| &row[j] * &e.x + &v[j] * &e.y).collect();
            let rest: Vec<BigInt> = (0..self.width).map(|j| &v[j] * &a - &row[j] * &b).collect();
            if top[col].is_negative() {
                top.iter_mut().for_each(|x| *x = -&*x);
            }
            self.rows.insert(col, top);
            v = rest;
            col += 1;
        }
    }

    /// True iff the rows span all of `Z^width`.
    pub fn is_full(&self) -> bool {
        self.rank() == self.width && self.rows.iter().all(|(c, r)| r[*c].is_one())
    }

    pub fn basis(&self) -> Vec<Vec<BigInt>> {
        self.rows.values().cloned().collect()
    }
}

/// Invariant factors `d_1 | d_2 | …` of an integer matrix; one per diagonal
/// position, zeros included.
#[allow(clippy::needless_range_loop)]
pub fn smith_normal_form(matrix: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let size = rows.min(cols);
    let mut diag = Vec::with_capacity(size);
    for t in 0..size {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()));
            let Some((pi, pj)) = pivot else {
                diag.resize(size, BigInt::zero());
                return diag;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for j in t..cols {
                        let d = &q * &a[t][j];
                        a[i][j] -= d;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for i in t..rows {
                        let d = &q * &a[i][t];
                        a[i][j] -= d;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let add = a[i][j].clone();
                        a[t][j] += add;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(rank_over(Field::Rationals, &m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])), 3);
        assert_eq!(rank_over(Field::Rationals, &m(&[&[1, 2], &[1, 2], &[2, 4]])), 1);
        assert_eq!(rank_over(Field::Prime(2), &m(&[&[1, 1], &[1, 1]])), 1);
        assert_eq!(rank_over(Field::Rationals, &m(&[&[2, 0], &[0, 2]])), 2);
        assert_eq!(rank_over(Field::Prime(2), &m(&[&[2, 0], &[0, 2]])), 0);
        assert_eq!(rank_over(Field::Rationals, &[]), 0);
    }

    #[test]
    fn smith_examples() {
        let b = |x: i64| BigInt::from(x);
        assert_eq!(smith_normal_form(&m(&[&[1, 0], &[0, 2]])), vec![b(1), b(2)]);
        assert_eq!(smith_normal_form(&m(&[&[0]])), vec![b(0)]);
        assert_eq!(smith_normal_form(&m(&[&[2, 0], &[0, 3]])), vec![b(1), b(6)]);
        assert_eq!(smith_normal_form(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])), vec![b(2), b(6), b(12)]);
    }

    #[test]
    fn lattice_spans() {
        let mut l = Lattice::new(2);
        l.insert(&m(&[&[2, 0]])[0]);
        l.insert(&m(&[&[3, 1]])[0]);
        assert!(!l.is_full());
        l.insert(&m(&[&[1, 0]])[0]);
        assert!(l.is_full());
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<BigInt>>> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec((-4i64..5).prop_map(BigInt::from), c), r)
        })
    }

    proptest! {
        #[test]
        fn smith_is_consistent_with_ranks(a in small_matrix()) {
            let d = smith_normal_form(&a);
            let nonzero = d.iter().filter(|x| !x.is_zero()).count();
            prop_assert_eq!(nonzero, rank_over(Field::Rationals, &a));
            for w in d.windows(2) {
                prop_assert!(w[1].is_zero() || w[1].is_multiple_of(&w[0]));
            }
            // rank mod p drops exactly at the factors divisible by p
            for p in [2u64, 3, 5] {
                let units = d.iter().filter(|x| !x.is_multiple_of(&BigInt::from(p))).count();
                prop_assert_eq!(units, rank_over(Field::Prime(p), &a));
            }
            let mut lat = Lattice::new(a[0].len());
            a.iter().for_each(|r| lat.insert(r));
            prop_assert_eq!(lat.rank(), nonzero);
            let full = nonzero == a[0].len() && d.iter().all(|x| x.is_one());
            prop_assert_eq!(lat.is_full(), full);
        }
    }
}
