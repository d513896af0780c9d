//! Randomized invariants: permutation algebra identities and the
//! print/parse round trip of the construction language.

use proptest::prelude::*;

use codegree::dsl::{self, GroupSpec};
use codegree::perm::Permutation;

fn perm_strategy(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

proptest! {
    #[test]
    fn composition_is_associative(
        a in perm_strategy(7),
        b in perm_strategy(7),
        c in perm_strategy(7),
    ) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn inverse_cancels(a in perm_strategy(8)) {
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert!(a.inverse().compose(&a).is_identity());
    }

    #[test]
    fn inverse_of_product_reverses(a in perm_strategy(6), b in perm_strategy(6)) {
        prop_assert_eq!(
            a.compose(&b).inverse(),
            b.inverse().compose(&a.inverse())
        );
    }

    #[test]
    fn power_by_order_is_identity(a in perm_strategy(9)) {
        prop_assert!(a.pow(a.order()).is_identity());
    }

    #[test]
    fn conjugation_preserves_order(a in perm_strategy(7), t in perm_strategy(7)) {
        prop_assert_eq!(a.conjugate_by(&t).order(), a.order());
    }

    #[test]
    fn cycle_notation_round_trips(a in perm_strategy(10)) {
        let text = a.to_cycle_string();
        let back = Permutation::from_cycles(10, &text).unwrap();
        prop_assert_eq!(a, back);
    }
}

fn leaf_spec() -> impl Strategy<Value = GroupSpec> {
    prop_oneof![
        (prop::sample::select(vec![2u64, 3, 5, 7]), 1u32..4)
            .prop_map(|(p, n)| GroupSpec::ElemAb { p, n }),
        (2u64..40).prop_map(|n| GroupSpec::Cyclic { n }),
        (2u32..=5).prop_map(|f| GroupSpec::Sl2 { f }),
        prop::sample::select(vec![
            GroupSpec::FrobSinger { pk: 2, q: 3, copies: 1 },
            GroupSpec::FrobSinger { pk: 4, q: 3, copies: 1 },
            GroupSpec::FrobSinger { pk: 3, q: 7, copies: 2 },
            GroupSpec::Named { tag: "SL2of3".to_string(), params: vec![] },
            GroupSpec::Named { tag: "Q8onCq2".to_string(), params: vec![5] },
            GroupSpec::Named {
                tag: "TwoStepFrobenius".to_string(),
                params: vec![2, 3, 2, 1],
            },
            GroupSpec::SdpMatrix {
                q: 7,
                dim: 2,
                matrices: vec![vec![vec![2, 0], vec![0, 4]]],
                complement: "C3".to_string(),
            },
        ]),
    ]
}

fn spec_strategy() -> impl Strategy<Value = GroupSpec> {
    leaf_spec().prop_recursive(3, 12, 2, |inner| {
        (inner.clone(), inner)
            .prop_map(|(a, b)| GroupSpec::DirProd(Box::new(a), Box::new(b)))
    })
}

proptest! {
    #[test]
    fn spec_print_parse_round_trips(spec in spec_strategy()) {
        let text = spec.to_string();
        let back = dsl::parse_spec(&text).unwrap();
        prop_assert_eq!(spec, back);
    }
}
