//! Property tests against brute-force oracles.

use num::{BigInt, BigRational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use scl_core::bounds::lower_bound;
use scl_core::engine::{paired_index, scl, scl_values, PairedVector};
use scl_core::graphs::{abstract_graph, isomorphic, CompleteDigraphFlow, MDGraph};
use scl_core::hardness::{
    append_balance, coss, coss_gadget, essential_gadget, ss, ssp, collapse, zero_subsets,
};
use scl_core::numerics::{solve_lp, LpStatus, Rational};
use scl_core::scorecard::{random_bounded_lp, random_words, vertex_optimum};
use scl_core::synth::{lemma_numbers, lemma_uniqueness};
use scl_core::words::{parse_word, render_word};

fn big(r: &Rational) -> BigRational {
    BigRational::new(r.numer(), r.denom())
}

fn rational() -> impl Strategy<Value = Rational> {
    prop_oneof![
        (-50i64..50, 1i64..50).prop_map(|(p, q)| Rational::new(p, q)),
        (any::<i64>(), 1i64..=i64::MAX).prop_map(|(p, q)| Rational::new(p, q)),
    ]
}

fn nonzero_list(max_len: usize, max_abs: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(
        (1..=max_abs, any::<bool>()).prop_map(|(v, neg)| if neg { -v } else { v }),
        1..=max_len,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rational_matches_bigrational(a in rational(), b in rational()) {
        prop_assert_eq!(big(&(&a + &b)), big(&a) + big(&b));
        prop_assert_eq!(big(&(&a - &b)), big(&a) - big(&b));
        prop_assert_eq!(big(&(&a * &b)), big(&a) * big(&b));
        if !b.is_zero() {
            prop_assert_eq!(big(&(&a / &b)), big(&a) / big(&b));
        }
        prop_assert_eq!(a.cmp(&b), big(&a).cmp(&big(&b)));
    }

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &a), &Rational::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip(), Rational::one());
        }
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn simplex_matches_vertex_enumeration(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lp = random_bounded_lp(&mut rng);
        let res = solve_lp(&lp).unwrap();
        match vertex_optimum(&lp).unwrap() {
            Some(best) => {
                prop_assert_eq!(res.status, LpStatus::Optimal);
                prop_assert_eq!(res.value.clone(), Some(best));
                prop_assert!(lp.is_feasible(res.witness.as_ref().unwrap()));
            }
            None => prop_assert_eq!(res.status, LpStatus::Infeasible),
        }
    }

    #[test]
    fn word_text_round_trip(seed in any::<u64>()) {
        for w in random_words(8, seed) {
            let text = render_word(&w);
            prop_assert_eq!(parse_word(&text).unwrap(), w);
        }
    }

    #[test]
    fn pairing_is_a_bijection(n in 1usize..8) {
        let mut hit = vec![false; n * n];
        for k in 0..n {
            for l in 0..n {
                let (i, j) = paired_index(n, k, l);
                prop_assert!(i < n && j < n && !hit[i * n + j]);
                hit[i * n + j] = true;
            }
        }
    }

    #[test]
    fn paired_vector_from_any_side(n in 1usize..5, entries in prop::collection::vec(0i64..5, 16)) {
        let v = CompleteDigraphFlow::from_entries(
            n,
            entries[..n * n].iter().map(|&e| Rational::from(e)).collect(),
        ).unwrap();
        prop_assert!(PairedVector::from_a(v).is_paired());
    }

    #[test]
    fn ss_is_ssp_of_balanced(a in nonzero_list(7, 6)) {
        let balanced = append_balance(&a).unwrap();
        prop_assert_eq!(ss(&a).unwrap(), ssp(&balanced).unwrap());
    }

    #[test]
    fn lemma_numbers_are_unique(f in prop::collection::vec(1i64..4, 1..4)) {
        let w = lemma_numbers(&f).unwrap();
        prop_assert!(w.iter().all(|&x| x > 0));
        if let Some(unique) = lemma_uniqueness(&f, &w) {
            prop_assert!(unique);
        }
    }

    #[test]
    fn collapse_preserves_vanishing_subsets(
        vectors in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..7)
    ) {
        let c = collapse(&vectors, vectors.len() as i64).unwrap();
        let scalars: Vec<Vec<i64>> = c.values.iter().map(|&v| vec![v]).collect();
        prop_assert_eq!(zero_subsets(&vectors).unwrap(), zero_subsets(&scalars).unwrap());
    }

    #[test]
    fn subdivision_does_not_change_abstraction(
        extra in prop::collection::vec((0usize..3, 0usize..3), 0..3),
        split in 0usize..5,
        weights in prop::collection::vec(-5i64..=5, 8),
        cut in -5i64..=5,
    ) {
        let mut edges = vec![(0, 1), (1, 2), (2, 0)];
        edges.extend(extra);
        let m = edges.len();
        let g = MDGraph::new(3, edges.clone()).unwrap().with_weights(weights[..m].to_vec()).unwrap();
        let e = split % m;
        let (u, v) = edges[e];
        let mut sub_edges = edges.clone();
        sub_edges[e] = (u, 3);
        sub_edges.push((3, v));
        let mut sub_weights = weights[..m].to_vec();
        sub_weights[e] = cut;
        sub_weights.push(weights[e] - cut);
        let sub = MDGraph::new(4, sub_edges).unwrap().with_weights(sub_weights).unwrap();
        let a = abstract_graph(&g).unwrap();
        let b = abstract_graph(&sub).unwrap();
        prop_assert!(isomorphic(&a, &b).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gadget_is_essential_iff_no_proper_zero_subset(a in nonzero_list(4, 4)) {
        let a = append_balance(&a).unwrap();
        prop_assume!(a[a.len() - 1] != 0);
        let g = essential_gadget(&a).unwrap();
        prop_assert_eq!(g.is_essential(), !ssp(&a).unwrap());
    }

    #[test]
    fn coss_gadget_decides_coss(a in nonzero_list(4, 4)) {
        prop_assume!(a.iter().sum::<i64>() != 0);
        prop_assert_eq!(coss_gadget(&a).unwrap().is_essential(), coss(&a).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn lower_bound_is_below_lp_value(seed in any::<u64>()) {
        for w in random_words(4, seed) {
            let r = scl(&w, 1, false).unwrap();
            prop_assert!(lower_bound(&w) <= r.value, "{}", render_word(&w));
        }
    }

    #[test]
    fn lp_value_is_monotone_in_bound(seed in any::<u64>()) {
        for w in random_words(2, seed) {
            let values: Vec<Rational> = scl_values(&w, 3).unwrap().into_iter().map(|r| r.value).collect();
            prop_assert!(values.windows(2).all(|p| p[1] <= p[0]), "{}: {:?}", render_word(&w), values);
        }
    }
}

#[test]
fn bigint_promotion_is_exact() {
    let m = Rational::from(i64::MAX);
    let sq = &m * &m;
    assert_eq!(sq.numer(), BigInt::from(i64::MAX) * BigInt::from(i64::MAX));
    assert_eq!(&sq / &m, m);
}
