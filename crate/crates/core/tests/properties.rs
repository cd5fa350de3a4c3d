use proptest::prelude::*;

use qgrass::grass::{quasi_exponent, Localization};
use qgrass::twist::{cycle_minor_set, MinorSet, TwistModel};
use qgrass::{
    consecutive_minor, cycle_index_set, maximal_minor, normalize, tilde, Gen, IndexSet, LaurentScalar, NCPoly, Word,
};

fn word(m: usize, n: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=m, 1..=n), 0..=max_len)
        .prop_map(|v| Word::new(v.into_iter().map(|(i, j)| Gen::new(i, j)).collect()))
}

fn scalar() -> impl Strategy<Value = LaurentScalar> {
    (-3i64..=3, -4i64..=4).prop_filter_map("nonzero", |(c, e)| (c != 0).then(|| LaurentScalar::monomial(c, e)))
}

fn poly(m: usize, n: usize) -> impl Strategy<Value = NCPoly> {
    prop::collection::vec((scalar(), word(m, n, 3)), 1..=3).prop_map(move |terms| {
        terms.into_iter().fold(NCPoly::zero(m, n), |acc, (c, w)| {
            &acc + &NCPoly::from_word(m, n, w).unwrap().scale(&c)
        })
    })
}

fn index_set(n: usize, k: usize) -> impl Strategy<Value = IndexSet> {
    prop::sample::subsequence((1..=n).collect::<Vec<_>>(), k).prop_map(move |v| IndexSet::new(v, n).unwrap())
}

fn minor_product(m: usize, n: usize) -> impl Strategy<Value = NCPoly> {
    (scalar(), prop::collection::vec(index_set(n, m), 1..=2)).prop_map(move |(c, sets)| {
        sets.iter()
            .fold(NCPoly::one(m, n), |acc, s| &acc * &maximal_minor(s, m, n).unwrap())
            .scale(&c)
    })
}

fn canonical(p: &NCPoly) -> bool {
    p.terms().all(|(w, c)| w.is_normal() && !c.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn products_are_canonical_and_associative(a in poly(2, 3), b in poly(2, 3), c in poly(2, 3)) {
        let ab = &a * &b;
        prop_assert!(canonical(&ab));
        prop_assert_eq!(&ab * &c, &a * &(&b * &c));
    }

    #[test]
    fn multiplication_distributes(a in poly(2, 4), b in poly(2, 4), c in poly(2, 4)) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn normalize_agrees_with_generator_products(w in word(3, 3, 5)) {
        let r = normalize(&w, 3, 3).unwrap();
        prop_assert!(canonical(&r.poly));
        let product = w.0.iter().fold(NCPoly::one(3, 3), |acc, g| {
            &acc * &NCPoly::generator(3, 3, g.row.into(), g.col.into()).unwrap()
        });
        prop_assert_eq!(r.poly, product);
    }

    #[test]
    fn content_is_additive(a in word(2, 4, 3), b in word(2, 4, 3)) {
        let (pa, pb) = (NCPoly::from_word(2, 4, a.clone()).unwrap(), NCPoly::from_word(2, 4, b.clone()).unwrap());
        prop_assert_eq!((&pa * &pb).column_content().unwrap(), &a.content(4) + &b.content(4));
    }

    #[test]
    fn tilde_is_the_residue_in_range(j in -50i64..50, n in 1usize..9) {
        let r = tilde(j, n);
        prop_assert!((1..=n).contains(&r));
        prop_assert_eq!((j - r as i64).rem_euclid(n as i64), 0);
    }

    #[test]
    fn index_sets_are_sorted_and_reject_repeats(v in prop::collection::vec(1usize..=6, 1..5)) {
        let mut distinct = v.clone();
        distinct.sort_unstable();
        distinct.dedup();
        match IndexSet::new(v.clone(), 6) {
            Ok(s) => {
                prop_assert_eq!(distinct.len(), v.len());
                prop_assert!(s.elems().windows(2).all(|w| w[0] < w[1]));
            }
            Err(_) => prop_assert!(distinct.len() < v.len()),
        }
    }

    #[test]
    fn cycling_an_index_set_has_order_dividing_n(s in index_set(6, 3)) {
        let mut cur = s.clone();
        for _ in 0..6 {
            cur = cycle_index_set(&cur).0;
        }
        prop_assert_eq!(cur, s);
    }

    #[test]
    fn consecutive_minors_quasi_commute(alpha in 1usize..=5, s in index_set(5, 2)) {
        let center = maximal_minor(&consecutive_minor(alpha, 2, 5), 2, 5).unwrap();
        let other = maximal_minor(&s, 2, 5).unwrap();
        prop_assert!(quasi_exponent(&center, &other).is_ok());
    }

    #[test]
    fn localized_product_is_associative(
        alpha in 1usize..=4,
        a in minor_product(2, 4), b in minor_product(2, 4), c in minor_product(2, 4),
        ka in 0u32..=2, kb in 0u32..=2, kc in 0u32..=2,
    ) {
        let loc = Localization::new(2, 4, alpha).unwrap();
        let [a, b, c] = [(a, ka), (b, kb), (c, kc)].map(|(p, k)| loc.make(p, k).unwrap());
        let left = loc.mul(&loc.mul(&a, &b).unwrap(), &c).unwrap();
        let right = loc.mul(&a, &loc.mul(&b, &c).unwrap()).unwrap();
        prop_assert!(loc.eq(&left, &right).unwrap());
    }

    #[test]
    fn denominators_cancel(alpha in 1usize..=4, a in minor_product(2, 4), k in 1u32..=2) {
        let loc = Localization::new(2, 4, alpha).unwrap();
        let x = loc.make(a.clone(), 0).unwrap();
        let mut d = loc.unit();
        for _ in 0..k {
            d = loc.mul(&d, &loc.make(loc.center().clone(), 0).unwrap()).unwrap();
        }
        let back = loc.mul(&loc.make(a, k).unwrap(), &d).unwrap();
        prop_assert!(loc.eq(&back, &x).unwrap());
    }

    #[test]
    fn twisted_product_is_associative(a in minor_product(2, 4), b in minor_product(2, 4), c in minor_product(2, 4)) {
        let tm = TwistModel::grass(2, 4);
        let [a, b, c] = [a, b, c].map(|p| tm.twist_grass(p).unwrap());
        let left = tm.twisted_mul(&tm.twisted_mul(&a, &b).unwrap(), &c).unwrap();
        let right = tm.twisted_mul(&a, &tm.twisted_mul(&b, &c).unwrap()).unwrap();
        prop_assert!(tm.eq(&left, &right).unwrap());
    }

    #[test]
    fn minor_set_cycling_is_a_bijection_of_order_n(sets in prop::collection::btree_set(index_set(5, 2), 0..6)) {
        let s = MinorSet::new(2, 5, sets).unwrap();
        let mut cur = cycle_minor_set(&s);
        prop_assert_eq!(cur.len(), s.len());
        for _ in 1..5 {
            cur = cycle_minor_set(&cur);
        }
        prop_assert_eq!(cur, s);
    }
}
