use multisym::concrete::{elementary_tuple, orbit_sum};
use multisym::orbitring::{MultiSymElement, OrbitIndex};
use multisym::presentation::{
    certify_presentation, eval_generator_poly, generator_multidegree, multidegrees_up_to, rational_rewrite_to_e1,
    rewrite_to_generators, Budget,
};
use multisym::ringcore::parse::{
    parse_concrete, parse_e1_poly, parse_elementary_poly, parse_generator_poly, parse_multisym, parse_orbit_index,
    parse_polynomial,
};
use multisym::ringcore::{binomial, CoeffRing, Monomial, Polynomial};
use multisym::symfun::{newton_p_in_e, plethysm_p, power_sum, substitute_elementary, weight};
use proptest::prelude::*;
use rayon::prelude::*;

const Z: CoeffRing = CoeffRing::Integers;
const Q: CoeffRing = CoeffRing::Rationals;

fn monomial(m: usize, max_exp: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_exp, m)
        .prop_filter("nonconstant", |e| e.iter().any(|&x| x > 0))
        .prop_map(Monomial::new)
}

fn index(m: usize, max_size: u32) -> impl Strategy<Value = OrbitIndex> {
    prop::collection::vec((monomial(m, 2), 1..=2u32), 1..=3).prop_filter_map("size bound", move |entries| {
        OrbitIndex::from_entries(m, entries).ok().filter(|a| a.size() <= max_size)
    })
}

fn polynomial(m: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((monomial(m, 2), -3i64..=3), 1..=3).prop_map(move |terms| {
        terms.into_iter().fold(Polynomial::zero(m, Z), |acc, (mu, c)| {
            acc.add(&Polynomial::from_monomial(mu, Z, &Z.from_int(c))).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn parse_format_identity(alpha in index(2, 3), beta in index(2, 3), f in polynomial(2), c in -5i64..=5) {
        let x = MultiSymElement::basis(alpha.clone(), Z).scale(&Z.from_int(c))
            .add(&MultiSymElement::basis(beta.clone(), Z)).unwrap();
        prop_assert_eq!(parse_multisym(&x.to_string(), 2, Z).unwrap(), x);
        prop_assert_eq!(parse_orbit_index(&alpha.to_string(), 2).unwrap(), alpha.clone());
        prop_assert_eq!(parse_polynomial(&f.to_string(), 2, Z).unwrap(), f);
        let g = rewrite_to_generators(&alpha);
        prop_assert_eq!(&parse_generator_poly(&g.to_string(), 2, Z).unwrap(), &*g);
        let h = rational_rewrite_to_e1(&beta, Q).unwrap();
        prop_assert_eq!(parse_e1_poly(&h.to_string(), 2, Q).unwrap(), h);
        let p = orbit_sum(&alpha, 3, Z);
        prop_assert_eq!(parse_concrete(&p.to_string(), 3, 2, Z).unwrap(), p);
    }

    #[test]
    fn tuple_argument_symmetry(f in polynomial(2), g in polynomial(2), a in 1..=2u32, b in 1..=2u32) {
        let n = 3;
        let fg = elementary_tuple(&[f.clone(), g.clone()], &[a, b], n).unwrap();
        let gf = elementary_tuple(&[g, f], &[b, a], n).unwrap();
        prop_assert_eq!(fg, gf);
    }

    #[test]
    fn repeated_argument_collapse(f in polynomial(2), g in polynomial(2), a in 1..=2u32, b in 1..=2u32) {
        let n = 4;
        let split = elementary_tuple(&[f.clone(), f.clone(), g.clone()], &[a, b, 1], n).unwrap();
        let merged = elementary_tuple(&[f, g], &[a + b, 1], n).unwrap();
        let c = binomial((a + b) as u64, a as u64);
        prop_assert_eq!(split, merged.scale(&Z.from_int(c)));
    }

    #[test]
    fn orbit_sum_multidegree(alpha in index(2, 3)) {
        let p = orbit_sum(&alpha, 3, Z);
        for (mono, _) in p.terms().iter() {
            prop_assert_eq!(p.term_multidegree(mono), alpha.multidegree());
        }
    }

    #[test]
    fn product_grading_and_size(alpha in index(2, 3), beta in index(2, 3)) {
        let x = MultiSymElement::basis(alpha.clone(), Z);
        let y = MultiSymElement::basis(beta.clone(), Z);
        let want: Vec<u32> = alpha.multidegree().iter().zip(beta.multidegree()).map(|(u, v)| u + v).collect();
        for (gamma, _) in x.multiply(&y).unwrap().terms().iter() {
            prop_assert_eq!(gamma.multidegree(), want.clone());
            prop_assert!(gamma.size() >= alpha.size().max(beta.size()));
            prop_assert!(gamma.size() <= alpha.size() + beta.size());
        }
    }

    #[test]
    fn kernel_is_an_ideal(alpha in index(2, 3), beta in index(2, 2), n in 1..=2usize) {
        prop_assume!(alpha.size() as usize > n);
        let prod = MultiSymElement::basis(beta, Z).multiply(&MultiSymElement::basis(alpha, Z)).unwrap();
        prop_assert!(prod.terms().keys().all(|g| g.size() as usize > n));
    }

    #[test]
    fn rewriting_soundness_and_grading(alpha in index(2, 3)) {
        let g = rewrite_to_generators(&alpha);
        for (mono, _) in g.iter() {
            prop_assert_eq!(generator_multidegree(mono, 2), alpha.multidegree());
        }
        for n in alpha.size() as usize..=alpha.size() as usize + 1 {
            prop_assert_eq!(eval_generator_poly(&g, n, 2), orbit_sum(&alpha, n, Z));
        }
    }
}

#[test]
fn newton_consistency() {
    for k in 1..=6 {
        for n_vars in k as usize..=k as usize + 1 {
            assert_eq!(substitute_elementary(&newton_p_in_e(k), n_vars), power_sum(k, n_vars, Z), "k={k}");
        }
    }
}

#[test]
fn plethysm_weights() {
    for h in 1..=3 {
        for k in 1..=3 {
            assert!(plethysm_p(h, k).keys().all(|mono| weight(mono) == h * k), "P({h},{k})");
        }
    }
    assert_eq!(*plethysm_p(1, 2), parse_elementary_poly("e1^2 - 2*e2", Z).unwrap());
}

#[test]
fn certificates_agree_across_thread_counts() {
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            multidegrees_up_to(2, 5)
                .par_iter()
                .map(|a| certify_presentation(2, 2, a, Q, true, &Budget::unlimited()).unwrap())
                .collect::<Vec<_>>()
        })
    };
    let one = run(1);
    let four = run(4);
    assert_eq!(one.len(), four.len());
    assert!(one.iter().zip(&four).all(|(x, y)| x.same_outcome(y)));
}
