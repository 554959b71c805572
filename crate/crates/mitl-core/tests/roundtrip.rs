//! Display and parse are mutually inverse on the formula tree.

use mitl_core::{parse_mitl, MitlFormula, TimeInterval};
use proptest::prelude::*;

fn interval_strategy() -> impl Strategy<Value = TimeInterval> {
    (0u64..5, 1u64..6, any::<bool>(), any::<bool>(), any::<bool>()).prop_map(
        |(lo, width, lo_open, up_open, unbounded)| {
            if unbounded {
                TimeInterval::unbounded(lo, lo_open)
            } else {
                TimeInterval::bounded(lo, lo + width, lo_open, up_open)
            }
        },
    )
}

fn formula_strategy() -> impl Strategy<Value = MitlFormula> {
    let leaf = prop_oneof![
        Just(MitlFormula::prop("p")),
        Just(MitlFormula::prop("q")),
        Just(MitlFormula::prop("r_1")),
    ];
    leaf.prop_recursive(4, 32, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(MitlFormula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| MitlFormula::and(a, b)),
            (interval_strategy(), inner.clone()).prop_map(|(i, f)| MitlFormula::eventually(i, f)),
            (interval_strategy(), inner.clone()).prop_map(|(i, f)| MitlFormula::globally(i, f)),
            (interval_strategy(), inner.clone())
                .prop_map(|(i, f)| MitlFormula::past_eventually(i, f)),
            (interval_strategy(), inner.clone(), inner.clone())
                .prop_map(|(i, a, b)| MitlFormula::until(i, a, b)),
            (interval_strategy(), inner.clone(), inner)
                .prop_map(|(i, a, b)| MitlFormula::since(i, a, b)),
        ]
    })
}

proptest! {
    #[test]
    fn parse_inverts_display(f in formula_strategy()) {
        let printed = f.to_string();
        let reparsed = parse_mitl(&printed).unwrap_or_else(|e| {
            panic!("failed to reparse '{}': {}", printed, e)
        });
        prop_assert_eq!(f, reparsed, "printed as '{}'", printed);
    }
}
