mod common;

use lcanet_core::oracle::{build_tight_witness, naive_plus_closure};
use lcanet_core::{
    analyze, check_x1, check_x2, classical_closure, equivalence_classes, extract_leq, plus_closure,
    plus_closure_scheduled, Error, Pair, Relation, Schedule,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closure_matches_literal_rules(r in common::relation(5)) {
        prop_assert_eq!(plus_closure(&r).into_closure(), naive_plus_closure(&r));
    }

    #[test]
    fn closure_operator_axioms(r in common::relation(5), seed: u64) {
        let plus = plus_closure(&r).into_closure();
        prop_assert!(r.is_subset(&plus).unwrap());
        prop_assert_eq!(plus_closure(&plus).into_closure(), plus.clone());
        let sub = common::sub_relation(&r, seed);
        prop_assert!(plus_closure(&sub).closure().is_subset(&plus).unwrap());
    }

    #[test]
    fn closure_contains_tc_and_is_closed(r in common::relation(5)) {
        let res = plus_closure(&r);
        let plus = res.closure();
        prop_assert!(r.transitive_closure().is_subset(plus).unwrap());
        prop_assert!(plus.is_cross_consistent());
        prop_assert_eq!(&plus.transitive_closure(), plus);
        prop_assert_eq!(plus.support_plus(), r.support_plus());
        prop_assert_eq!(res.support_plus(), r.support_plus());
        for p in plus.support() {
            prop_assert!(plus.contains(p, p));
            prop_assert!(plus.contains(Pair::singleton(p.lo()), p));
            prop_assert!(plus.contains(Pair::singleton(p.hi()), p));
        }
    }

    #[test]
    fn schedule_does_not_matter(r in common::relation(6)) {
        prop_assert_eq!(
            plus_closure_scheduled(&r, Schedule::Fifo).into_closure(),
            plus_closure_scheduled(&r, Schedule::Lifo).into_closure()
        );
    }

    #[test]
    fn x1_keeps_singleton_classes_apart(r in common::relation(5)) {
        let res = plus_closure(&r);
        if check_x1(&res).is_empty() {
            let part = equivalence_classes(&res);
            for x in r.leaf_set().leaves() {
                let c = part.class_of(Pair::singleton(x)).unwrap();
                prop_assert_eq!(part.members(c), &[Pair::singleton(x)]);
            }
        }
    }

    #[test]
    fn closed_relations_satisfy_x2(r in common::relation(5)) {
        let plus = plus_closure(&r).into_closure();
        let again = plus_closure(&plus);
        prop_assert!(check_x2(&plus, &again).unwrap().is_empty());
    }

    #[test]
    fn verdict_is_consistent(r in common::relation(5)) {
        let v = analyze(&r).verdict;
        prop_assert_eq!(v.realizable, v.x1_violations.is_empty() && v.x2_violations.is_empty());
        prop_assert_eq!(v.strict, v.realizable && r.transitive_closure().is_asymmetric());
        prop_assert_eq!(v.asymmetry_witness.is_none(), r.transitive_closure().is_asymmetric());
    }

    #[test]
    fn classical_closure_equals_witness_relation(r in common::realizable(4)) {
        let cl = classical_closure(&r).unwrap();
        let witness = build_tight_witness(&r).unwrap();
        let mask = cl.support_plus_mask();
        prop_assert_eq!(extract_leq(&witness).restrict(&mask), cl.clone());
        prop_assert_eq!(cl, plus_closure(&r).into_closure());
    }
}

#[test]
fn classical_closure_of_unrealizable_is_an_error() {
    let x = lcanet_core::oracle::leaf_set(3);
    let r = Relation::from_names(x, &[("a", "b", "c", "c")]).unwrap();
    assert_eq!(classical_closure(&r), Err(Error::NotRealizable));
}

#[test]
fn classical_closure_of_empty_is_diagonal_on_singletons() {
    let x = lcanet_core::oracle::leaf_set(3);
    let cl = classical_closure(&Relation::empty(x.clone())).unwrap();
    let diag = Relation::from_facts(
        x.clone(),
        x.leaves().map(|a| (Pair::singleton(a), Pair::singleton(a))),
    );
    assert_eq!(cl, diag);
}
