//! Randomized invariants complementing the exhaustive small-length tests:
//! the same laws on words far beyond the exhaustive range.

use proptest::prelude::*;

use tangent_words::derivation::{desubstitute, desubstitute_accelerated};
use tangent_words::geometry::{mechanical_prefix, round_sig, LatticeSegment};
use tangent_words::word::Word;
use tangent_words::{is_analytic_tangent, is_balanced, is_tangent};

fn word(max: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(0u8..=1, 0..=max).prop_map(Word::from_letters)
}

fn random_factor(w: &Word, start: usize, len: usize) -> Word {
    let start = start.min(w.len());
    let len = len.min(w.len() - start);
    w.factor_at(start, len)
}

proptest! {
    #[test]
    fn accelerated_step_equals_repeated_plain_steps(w in word(200)) {
        if let Ok((fast, rule)) = desubstitute_accelerated(&w) {
            let m = w.runs().shortest_inner_run(rule.letter()).unwrap();
            let mut slow = w.clone();
            for _ in 0..m {
                slow = desubstitute(&slow).unwrap().0;
            }
            prop_assert_eq!(fast, slow);
        }
    }

    #[test]
    fn membership_chain_on_arbitrary_words(w in word(18)) {
        prop_assert!(!is_balanced(&w) || is_analytic_tangent(&w));
        prop_assert!(!is_analytic_tangent(&w) || is_tangent(&w));
        prop_assert!(!is_tangent(&w) || w.is_k_balanced(2));
    }

    #[test]
    fn balance_and_tangency_are_reversal_invariant(w in word(80)) {
        prop_assert_eq!(is_balanced(&w), is_balanced(&w.reversed()));
        prop_assert_eq!(is_tangent(&w), is_tangent(&w.reversed()));
    }

    #[test]
    fn mechanical_prefixes_and_their_factors_are_balanced(
        num in 1u64..1000,
        den in 1000u64..2000,
        rho in 0u64..1000,
        n in 0usize..=120,
        start in 0usize..=120,
        len in 0usize..=120,
    ) {
        let w = mechanical_prefix(num as f64 / den as f64, rho as f64 / 1000.0, n);
        prop_assert!(is_balanced(&w));
        prop_assert!(is_balanced(&random_factor(&w, start, len)));
    }

    #[test]
    fn slalom_words_and_their_factors_are_tangent(
        g in 2u64..=8,
        per in 1u64..=3,
        mask in any::<u64>(),
        start in 0usize..=40,
        len in 0usize..=40,
    ) {
        let seg = LatticeSegment::new(per * g, g);
        let mask = mask & ((1 << seg.interior_points()) - 1);
        let w = seg.slalom_word(mask).unwrap();
        prop_assert!(is_tangent(&w));
        prop_assert!(is_tangent(&random_factor(&w, start, len)));
    }

    #[test]
    fn constant_slalom_words_and_their_factors_are_analytic(
        p in 1u64..=6,
        q in 1u64..=6,
        g in 2u64..=4,
        start in 0usize..=48,
        len in 0usize..=48,
    ) {
        let seg = LatticeSegment::new(p * g, q * g);
        let (above, under) = seg.analytic_slalom_pair().unwrap();
        prop_assert!(is_analytic_tangent(&above));
        prop_assert!(is_analytic_tangent(&under));
        prop_assert!(is_analytic_tangent(&random_factor(&above, start, len)));
        prop_assert!(is_analytic_tangent(&random_factor(&under, start, len)));
    }

    #[test]
    fn rounding_to_report_precision_is_idempotent(x in any::<f64>()) {
        let rounded = round_sig(x);
        if x.is_finite() {
            prop_assert!(rounded.is_finite());
            prop_assert_eq!(round_sig(rounded), rounded);
            if x != 0.0 {
                prop_assert!((rounded - x).abs() <= x.abs() * 1e-11);
            }
        } else {
            prop_assert_eq!(rounded.to_bits(), x.to_bits());
        }
    }
}
