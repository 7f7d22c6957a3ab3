//! Randomised structural properties: canonical forms are stable and the
//! text format round-trips.

use proptest::prelude::*;

use treedeform::prelude::*;
use treedeform::text::{format_forest, format_lincomb, format_tree, parse_forest, parse_tree};
use treedeform::tree::NodeLabel;

fn arb_index() -> impl Strategy<Value = MultiIndex> {
    (0u32..3).prop_map(|n| MultiIndex::new(vec![n]))
}

fn arb_edge() -> impl Strategy<Value = EdgeLabel> {
    (0u32..2, arb_index()).prop_map(|(kind, index)| EdgeLabel { kind, index })
}

fn arb_tree() -> impl Strategy<Value = DecoratedTree> {
    let leaf = arb_index().prop_map(DecoratedTree::leaf);
    leaf.prop_recursive(3, 12, 3, |inner| {
        (arb_index(), prop::collection::vec((arb_edge(), inner), 0..3)).prop_map(
            |(index, branches)| DecoratedTree::new(NodeLabel::plain(index), branches),
        )
    })
}

fn arb_forest() -> impl Strategy<Value = Forest> {
    prop::collection::vec(arb_tree(), 0..3).prop_map(Forest::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn tree_text_round_trips(t in arb_tree()) {
        let cfg = SessionConfig::default();
        let printed = format_tree(&cfg, &t);
        prop_assert_eq!(parse_tree(&cfg, &printed).unwrap(), LinComb::basis(t));
    }

    #[test]
    fn forest_text_round_trips(f in arb_forest()) {
        let cfg = SessionConfig::default();
        let printed = format_forest(&cfg, &f);
        let parsed = parse_forest(&cfg, &printed).unwrap();
        prop_assert_eq!(parsed.iter().next().unwrap().0, &f);
    }

    #[test]
    fn lincomb_text_round_trips(
        terms in prop::collection::vec((arb_tree(), -4i64..5), 1..4)
    ) {
        let cfg = SessionConfig::default();
        let mut x = LinComb::zero();
        for (t, c) in terms {
            x.add_term(t, Q::from_integer(c.into()));
        }
        let printed = format_lincomb(&x, |t| format_tree(&cfg, t));
        if x.is_zero() {
            prop_assert_eq!(printed, "0");
        } else {
            prop_assert_eq!(parse_tree(&cfg, &printed).unwrap(), x);
        }
    }

    #[test]
    fn construction_is_canonical(t in arb_tree()) {
        // rebuilding from reversed branch lists must give the same value
        fn rebuild_reversed(t: &DecoratedTree) -> DecoratedTree {
            let mut branches: Vec<_> = t
                .branches()
                .iter()
                .map(|(e, s)| (e.clone(), rebuild_reversed(s)))
                .collect();
            branches.reverse();
            DecoratedTree::new(t.root().clone(), branches)
        }
        prop_assert_eq!(rebuild_reversed(&t), t);
    }

    #[test]
    fn symmetry_factor_is_preserved_by_forest_product(f in arb_forest(), g in arb_forest()) {
        use treedeform::lincomb::SymmetryFactor;
        // multiset union only regroups trees; the pairing diagonal of the
        // product forest never vanishes
        let prod = f.mul(&g);
        prop_assert!(prod.symmetry_factor() >= f.symmetry_factor());
    }
}
