mod common;

use std::collections::BTreeSet;

use common::Naive;
use proptest::prelude::*;
use sigmaforge::setcalc::{self, GroupSet};
use sigmaforge::{Group, Subgroup};

fn arb_factors() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..10, 1..=3)
        .prop_filter("order at most 64", |f| f.iter().product::<usize>() <= 64)
}

/// A group together with `count` subsets of it, each drawn by a random density.
fn arb_sets(count: usize) -> impl Strategy<Value = (Vec<usize>, Vec<Vec<usize>>)> {
    arb_factors().prop_flat_map(move |f| {
        let n: usize = f.iter().product();
        let one = (0u32..=100).prop_flat_map(move |p| {
            prop::collection::vec(0u32..100, n)
                .prop_map(move |rolls| (0..n).filter(|&i| rolls[i] < p).collect::<Vec<_>>())
        });
        (Just(f), prop::collection::vec(one, count))
    })
}

fn set(g: &Group, xs: &[usize]) -> GroupSet {
    GroupSet::from_indices(g, xs.iter().copied()).unwrap()
}

fn as_btree(s: &GroupSet) -> BTreeSet<usize> {
    s.iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn subset_sums_match_oracle((f, sets) in arb_sets(1)) {
        let g = Group::new(&f).unwrap();
        let a: Vec<usize> = sets[0].iter().copied().take(12).collect();
        let sigma = setcalc::subset_sums(&set(&g, &a));
        prop_assert_eq!(as_btree(&sigma), Naive::new(&f).subset_sums(&a));
    }

    #[test]
    fn sigma_contains_a_and_zero((f, sets) in arb_sets(1)) {
        let g = Group::new(&f).unwrap();
        let a = set(&g, &sets[0]);
        let sigma = setcalc::subset_sums(&a);
        prop_assert!(sigma.contains(0));
        prop_assert!(a.is_subset(&sigma).unwrap());
    }

    #[test]
    fn sigma_is_monotone((f, sets) in arb_sets(2)) {
        let g = Group::new(&f).unwrap();
        let a = set(&g, &sets[0]);
        let b = a.intersection(&set(&g, &sets[1])).unwrap();
        prop_assert!(setcalc::subset_sums(&b).is_subset(&setcalc::subset_sums(&a)).unwrap());
    }

    #[test]
    fn sigma_decomposes_into_pairs((f, sets) in arb_sets(1)) {
        let g = Group::new(&f).unwrap();
        let a = set(&g, &sets[0]);
        let mut acc = GroupSet::singleton(&g, 0).unwrap();
        for x in a.iter() {
            acc = setcalc::sumset(&acc, &set(&g, &[0, x])).unwrap();
        }
        prop_assert_eq!(acc, setcalc::subset_sums(&a));
    }

    #[test]
    fn sumset_and_stabilizer_match_oracle((f, sets) in arb_sets(2)) {
        let g = Group::new(&f).unwrap();
        let naive = Naive::new(&f);
        let (a, b) = (set(&g, &sets[0]), set(&g, &sets[1]));
        let ab = setcalc::sumset(&a, &b).unwrap();
        prop_assert_eq!(as_btree(&ab), naive.sumset(&as_btree(&a), &as_btree(&b)));
        prop_assert_eq!(as_btree(setcalc::stabilizer(&ab).as_set()), naive.stabilizer(&as_btree(&ab)));
    }

    #[test]
    fn stabilizer_is_monotone_under_sums((f, sets) in arb_sets(2)) {
        let g = Group::new(&f).unwrap();
        let s = set(&g, &sets[0]);
        let st = setcalc::sumset(&s, &set(&g, &sets[1])).unwrap();
        prop_assert!(setcalc::stabilizer(&s).is_subgroup_of(&setcalc::stabilizer(&st)));
    }

    #[test]
    fn large_pairs_sum_to_everything((f, sets) in arb_sets(2)) {
        let g = Group::new(&f).unwrap();
        let (a, b) = (set(&g, &sets[0]), set(&g, &sets[1]));
        if a.len() + b.len() > g.order() {
            prop_assert!(setcalc::sumset(&a, &b).unwrap().is_full());
        }
    }

    #[test]
    fn delta_identities((f, sets) in arb_sets(1), x in 0usize..64, y in 0usize..64) {
        let g = Group::new(&f).unwrap();
        let s = set(&g, &sets[0]);
        let (x, y) = (g.element_at(x % g.order()).unwrap(), g.element_at(y % g.order()).unwrap());
        let d = |e| setcalc::delta(&s, e).unwrap();
        prop_assert_eq!(setcalc::gamma(&s, &x).unwrap() + d(&x), s.len());
        prop_assert_eq!(d(&x), setcalc::delta(&s.complement(), &x).unwrap());
        let xy = g.add(&x, &y).unwrap();
        prop_assert!(d(&xy) <= d(&x) + d(&y));
    }

    #[test]
    fn sigma_is_a_union_of_stabilizer_cosets((f, sets) in arb_sets(1)) {
        let g = Group::new(&f).unwrap();
        let sigma = setcalc::subset_sums(&set(&g, &sets[0]));
        let h = setcalc::stabilizer(&sigma);
        prop_assert_eq!(sigma.len() % h.order(), 0);
        prop_assert_eq!(h.saturate(&sigma).unwrap(), sigma.clone());
        let (_, folded) = setcalc::fold_to_quotient(&sigma, &h).unwrap();
        prop_assert_eq!(sigma.len(), h.order() * folded.len());
    }

    #[test]
    fn generated_subgroups_are_closed((f, sets) in arb_sets(1)) {
        let g = Group::new(&f).unwrap();
        let h = sigmaforge::generated_subgroup(&set(&g, &sets[0]));
        prop_assert!(Subgroup::try_from_set(h.as_set().clone()).is_ok());
        prop_assert_eq!(g.order() % h.order(), 0);
    }
}
