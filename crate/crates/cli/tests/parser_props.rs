use fwdiff_cli::parse_ring;
use proptest::prelude::*;

fn base() -> impl Strategy<Value = String> {
    prop_oneof![
        prop::sample::select(vec![2u64, 3, 5, 7]).prop_map(|p| format!("Fp({p})")),
        prop::sample::select(vec![2u64, 3, 5]).prop_map(|p| format!("Zp2({p})")),
        Just("Fq(2,2)".to_string()),
        Just("Fq(3,2,i^2 + 1)".to_string()),
    ]
}

/// Random expressions in `x, y, z` with every operator, parentheses and
/// literals larger than the characteristic.
fn expr() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["x", "y", "z"]).prop_map(str::to_string),
        (0u64..200).prop_map(|n| n.to_string()),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} + {b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} - {b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a}*{b}")),
            (inner.clone(), 0u32..4).prop_map(|(a, e)| format!("({a})^{e}")),
            inner.clone().prop_map(|a| format!("-({a})")),
            inner.prop_map(|a| format!("({a})")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn print_then_parse_is_identity(b in base(), rels in prop::collection::vec(expr(), 0..3)) {
        let mut text = format!("# generated\nbase: {b}\nvars: x, y, z\n");
        for r in &rels {
            text.push_str(&format!("rel: {r}\n"));
        }
        let first = parse_ring(&text).unwrap();
        let printed = first.print();
        let second = parse_ring(&printed).unwrap();
        prop_assert_eq!(&second, &first);
        prop_assert_eq!(second.print(), printed);
    }

    #[test]
    fn arbitrary_text_never_panics(text in "[a-z0-9:,()^*+\\-# \n]{0,80}") {
        if let Err(e) = parse_ring(&text) {
            prop_assert!(e.line >= 1 && e.column >= 1);
            prop_assert!(e.line <= text.lines().count().max(1) + 1);
        }
    }

    #[test]
    fn corrupted_relations_carry_positions(r in expr(), cut in 0usize..40, junk in "[@!$%&;]") {
        let cut = cut.min(r.len());
        let broken = format!("{}{junk}{}", &r[..cut], &r[cut..]);
        let text = format!("base: Fp(5)\nvars: x, y, z\nrel: {broken}\n");
        let e = parse_ring(&text).unwrap_err();
        prop_assert_eq!(e.line, 3);
        prop_assert_eq!(e.column, 6 + cut);
    }
}
