mod common;

use mdeg::classify::{classify, Verdict};
use mdeg::exactpoly::{Degree, Monomial, Polynomial};
use mdeg::obstruction::{elementary_reachable, pair_precondition, su_lower_bound, BoundParams};
use mdeg::polymap::{
    compose_maps, poisson_bracket_degree, realize_factors, verify_inverse, FactorList, PolyMap,
};
use mdeg::realizer::{realize, DegreeTuple};
use mdeg::search::{census, SearchParams};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn poly(dim: usize, max_exp: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (-4i64..=4, 1i64..=3, prop::collection::vec(0..=max_exp, dim)),
        0..5,
    )
    .prop_map(move |terms| {
        let terms: Vec<_> = terms
            .into_iter()
            .map(|(num, den, exps)| {
                (
                    common::int(num) / common::int(den),
                    Monomial::new(exps).unwrap(),
                )
            })
            .collect();
        Polynomial::from_terms(dim, terms).unwrap()
    })
}

fn factor_list(dim: usize, max_len: usize) -> impl Strategy<Value = FactorList> {
    any::<u64>().prop_map(move |seed| {
        common::random_factor_list(&mut ChaCha8Rng::seed_from_u64(seed), dim, max_len)
    })
}

fn deg(p: &Polynomial) -> Degree {
    p.total_degree()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(3, 3), b in poly(3, 3), c in poly(3, 3)) {
        let zero = Polynomial::zero(3);
        let one = Polynomial::one(3);
        prop_assert_eq!(a.checked_add(&b).unwrap(), b.checked_add(&a).unwrap());
        prop_assert_eq!(a.checked_mul(&b).unwrap(), b.checked_mul(&a).unwrap());
        prop_assert_eq!(
            a.checked_add(&b).unwrap().checked_add(&c).unwrap(),
            a.checked_add(&b.checked_add(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.checked_mul(&b).unwrap().checked_mul(&c).unwrap(),
            a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.checked_mul(&b.checked_add(&c).unwrap()).unwrap(),
            a.checked_mul(&b).unwrap().checked_add(&a.checked_mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.checked_add(&zero).unwrap(), a.clone());
        prop_assert_eq!(a.checked_mul(&one).unwrap(), a.clone());
        prop_assert!(a.checked_sub(&a).unwrap().is_zero());
        prop_assert!(a.checked_add(&a.neg()).unwrap().is_zero());
    }

    #[test]
    fn degree_rules(a in poly(3, 4), b in poly(3, 4)) {
        let prod = a.checked_mul(&b).unwrap();
        match (deg(&a), deg(&b)) {
            (Degree::Finite(x), Degree::Finite(y)) => prop_assert_eq!(deg(&prod), Degree::Finite(x + y)),
            _ => prop_assert!(prod.is_zero()),
        }
        prop_assert!(deg(&a.checked_add(&b).unwrap()) <= deg(&a).max(deg(&b)));
        prop_assert!(a.is_normalized() && prod.is_normalized());
        prop_assert!(a.terms().all(|(_, c)| *c != common::int(0)));
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(
        a in poly(2, 3),
        b in poly(2, 3),
        s in poly(3, 2),
        t in poly(3, 2),
    ) {
        let args = [s, t];
        let sum = a.checked_add(&b).unwrap().compose(&args).unwrap();
        let prod = a.checked_mul(&b).unwrap().compose(&args).unwrap();
        let (ca, cb) = (a.compose(&args).unwrap(), b.compose(&args).unwrap());
        prop_assert_eq!(sum, ca.checked_add(&cb).unwrap());
        prop_assert_eq!(prod, ca.checked_mul(&cb).unwrap());
    }

    #[test]
    fn text_round_trip(a in poly(3, 4)) {
        prop_assert_eq!(Polynomial::parse(&a.to_string(), 3).unwrap(), a);
    }

    #[test]
    fn composition_is_associative(x in factor_list(3, 2), y in factor_list(3, 2), z in factor_list(3, 2)) {
        let (fx, fy, fz) = (
            realize_factors(&x).unwrap(),
            realize_factors(&y).unwrap(),
            realize_factors(&z).unwrap(),
        );
        let left = compose_maps(&compose_maps(&fx, &fy).unwrap(), &fz).unwrap();
        let right = compose_maps(&fx, &compose_maps(&fy, &fz).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        // a list realizes its factors applied left to right
        let joined = realize_factors(&x.then(&y).unwrap()).unwrap();
        prop_assert_eq!(joined, compose_maps(&fy, &fx).unwrap());
    }

    #[test]
    fn factor_lists_invert(list in factor_list(3, 5)) {
        prop_assert!(verify_inverse(&list).unwrap());
        let id = realize_factors(&FactorList::identity(3)).unwrap();
        prop_assert_eq!(id, PolyMap::identity(3));
    }

    #[test]
    fn factor_list_json_round_trip(list in factor_list(3, 5)) {
        let text = serde_json::to_string(&list).unwrap();
        let back: FactorList = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, list);
    }

    #[test]
    fn bracket_degree_range(f in poly(3, 3), g in poly(3, 3)) {
        let b = poisson_bracket_degree(&f, &g).unwrap();
        prop_assert!(b == 0 || b >= 2);
        if b > 0 {
            let (Degree::Finite(n), Degree::Finite(m)) = (deg(&f), deg(&g)) else {
                return Err(TestCaseError::fail("nonzero bracket of a zero polynomial"));
            };
            prop_assert!(b <= n + m);
        }
        prop_assert_eq!(poisson_bracket_degree(&f, &f).unwrap(), 0);
        prop_assert_eq!(poisson_bracket_degree(&g, &f).unwrap(), b);
    }

    #[test]
    fn bound_is_monotone_in_bracket(n in 1u32..20, extra in 1u32..20, deg_y in 0u32..40, lb in 2u32..30) {
        let m = n + extra;
        prop_assume!(pair_precondition(n, m));
        let a = su_lower_bound(&BoundParams::new(n, m, deg_y, lb).unwrap());
        let b = su_lower_bound(&BoundParams::new(n, m, deg_y, lb + 1).unwrap());
        prop_assert!(b >= a);
    }

    #[test]
    fn multiples_of_the_smaller_degree_are_reachable(n in 1u32..12, extra in 1u32..12, a in 1u32..10) {
        let m = n + extra;
        prop_assume!(pair_precondition(n, m));
        let report = elementary_reachable(n, m, a * n).unwrap();
        prop_assert!(report.reachable);
    }

    #[test]
    fn classification_is_permutation_invariant(d in prop::array::uniform3(1u32..=30)) {
        let reference = classify(&d).unwrap();
        for p in [[0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            prop_assert_eq!(classify(&[d[p[0]], d[p[1]], d[p[2]]]).unwrap(), reference.clone());
        }
        let mut sorted = d;
        sorted.sort_unstable();
        reference.verify(&sorted).unwrap();
    }

    #[test]
    fn small_leading_degree_is_constructible(d2 in 1u32..=40, d3 in 1u32..=40, d1 in 1u32..=2) {
        let t = DegreeTuple::new(&[d1, d2, d3]).unwrap();
        let list = realize(&t).unwrap();
        let mut got = realize_factors(&list).unwrap().multidegree().unwrap();
        got.sort_unstable();
        prop_assert_eq!(got, t.sorted().to_vec());
    }
}

#[test]
fn verdicts_are_mutually_exclusive_on_census() {
    let c = census(&SearchParams::new(11, 2_000)).unwrap();
    for e in &c.entries {
        let v = classify(&e.multidegree).unwrap();
        assert!(!v.is_not_tame(), "{:?}", e.multidegree);
        if let Verdict::Realizable { factors } = &v {
            v.verify(&e.multidegree).unwrap();
            assert_eq!(factors.dimension(), 3);
        }
    }
}
