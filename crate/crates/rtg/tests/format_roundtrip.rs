//! Bit-exact round-trips for RTS/RTG v1 and their JSON mirrors.

use proptest::prelude::*;
use rtg::format::{
    parse_rtg, parse_rtg_auto, parse_rts, parse_rts_auto, write_rtg, write_rtg_json, write_rts,
    write_rts_json,
};
use rtg_core::{ColorSymbol, Graph, RainbowSequence};

fn arb_sequence() -> impl Strategy<Value = RainbowSequence> {
    (1u32..=6, 0usize..=20).prop_flat_map(|(k, n)| {
        let symbols = ColorSymbol::count(k).unwrap() as u64;
        proptest::collection::vec(0..symbols, n).prop_map(move |digits| {
            let entries =
                digits.into_iter().map(|d| ColorSymbol::from_index(k, d as u128)).collect();
            RainbowSequence::new(k, entries).unwrap()
        })
    })
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (0usize..=12).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(
            move |bits| {
                let mut code = 0u128;
                for (i, &b) in bits.iter().enumerate() {
                    code |= (b as u128) << i;
                }
                Graph::from_upper_code(n, code)
            },
        )
    })
}

proptest! {
    #[test]
    fn rts_text_roundtrip_is_bit_exact(seq in arb_sequence()) {
        let text = write_rts(&seq);
        let back = parse_rts(&text).unwrap();
        prop_assert_eq!(&back, &seq);
        prop_assert_eq!(write_rts(&back), text);
    }

    #[test]
    fn rtg_text_roundtrip_is_bit_exact(g in arb_graph()) {
        let text = write_rtg(&g);
        let back = parse_rtg(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(write_rtg(&back), text);
    }

    #[test]
    fn json_mirrors_roundtrip(seq in arb_sequence(), g in arb_graph()) {
        let json = serde_json::to_string(&write_rts_json(&seq)).unwrap();
        prop_assert_eq!(parse_rts_auto(&json).unwrap(), seq);
        let json = serde_json::to_string(&write_rtg_json(&g)).unwrap();
        prop_assert_eq!(parse_rtg_auto(&json).unwrap(), g);
    }
}
