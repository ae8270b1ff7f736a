use frt_lab::fundamental::{descending_seq, find_alpha_large, fund_step, is_alpha_large};
use frt_lab::{EvalFn, FiniteSet, Ordinal};
use proptest::prelude::*;

fn o(s: &str) -> Ordinal {
    s.parse().unwrap()
}

fn set(xs: &[u64]) -> FiniteSet {
    FiniteSet::new(xs.to_vec()).unwrap()
}

fn nonzero() -> impl Strategy<Value = Ordinal> {
    let leaf = (0u64..4).prop_map(Ordinal::nat);
    let any = leaf.prop_recursive(3, 16, 3, |inner| {
        prop::collection::vec((inner, 1u64..4), 0..3).prop_map(|mut terms| {
            terms.sort_by(|a, b| b.0.cmp(&a.0));
            terms.dedup_by(|a, b| a.0 == b.0);
            Ordinal::from_terms(terms).unwrap()
        })
    });
    any.prop_filter("nonzero", |a| !a.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn fund_step_descends(a in nonzero(), n in 0u64..30) {
        prop_assert!(fund_step(&a, n).unwrap() < a);
    }
}

proptest! {
    #[test]
    fn limit_steps_grow_with_the_index(a in nonzero(), n in 0u64..20) {
        if a.is_limit() {
            prop_assert!(fund_step(&a, n).unwrap() <= fund_step(&a, n + 1).unwrap());
        }
    }

    #[test]
    fn supersets_of_large_sets_are_large(a in nonzero(), xs in prop::collection::btree_set(0u64..9, 0..7), extra in prop::collection::btree_set(0u64..9, 0..4)) {
        let small = FiniteSet::new(xs.iter().copied().collect()).unwrap();
        let big = FiniteSet::new(xs.union(&extra).copied().collect()).unwrap();
        if is_alpha_large(&a, &small) {
            prop_assert!(is_alpha_large(&a, &big));
        }
    }
}

#[test]
fn fund_step_examples() {
    assert_eq!(fund_step(&o("w"), 3).unwrap(), o("3"));
    assert_eq!(fund_step(&o("w+1"), 5).unwrap(), o("w"));
    assert_eq!(fund_step(&o("w^w"), 2).unwrap(), o("w^2"));
    assert_eq!(fund_step(&o("w^2"), 0).unwrap(), o("0"));
    assert!(fund_step(&o("0"), 1).is_err());
}

#[test]
fn largeness_examples() {
    assert!(is_alpha_large(&o("w"), &set(&[1, 2])));
    assert!(is_alpha_large(&o("3"), &set(&[4, 9, 20])));
    assert!(!is_alpha_large(&o("w"), &set(&[5])));
    assert!(is_alpha_large(&o("0"), &set(&[])));
}

#[test]
fn find_examples() {
    let x1 = EvalFn::shift(1);
    assert_eq!(
        find_alpha_large(&o("w*2"), &x1, 0).unwrap(),
        set(&[1, 2, 3, 4, 5, 6])
    );
    assert_eq!(find_alpha_large(&o("0"), &x1, 7).unwrap(), set(&[]));
    assert_eq!(
        find_alpha_large(&o("w"), &EvalFn::identity(), 1).unwrap(),
        set(&[1, 2])
    );
    assert!(
        find_alpha_large(&o("w"), &EvalFn::constant(3), 0).is_err(),
        "not increasing"
    );
}

#[test]
fn descending_examples() {
    let seq = descending_seq(&o("w^2"), 3, &EvalFn::shift(1)).unwrap();
    assert_eq!(seq, [o("w^2"), o("w"), o("2")]);
    let seq = descending_seq(&o("5"), 10, &EvalFn::identity()).unwrap();
    assert_eq!(seq.len(), 6);
    assert_eq!(seq.last().unwrap(), &o("0"));
    assert_eq!(
        descending_seq(&o("w"), 2, &EvalFn::constant(7)).unwrap(),
        [o("w"), o("7")]
    );
    assert!(descending_seq(&o("0"), 2, &EvalFn::identity()).is_err());
}
