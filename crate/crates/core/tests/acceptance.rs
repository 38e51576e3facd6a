//! Acceptance suite: one test per release criterion, so the test harness
//! prints one pass/fail line per criterion. Each test states its own
//! tolerance or runtime budget and fails loudly when missed.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use tangent_words::counting::{self, ClosedFormVariant};
use tangent_words::derivation;
use tangent_words::geometry::{
    cutting_sequence, multigrid_factor_scan, CurveKind, CurveSpec, GeometryError, GridPlacement,
    LatticeSegment,
};
use tangent_words::word::all_words;
use tangent_words::{is_analytic_tangent, is_balanced, is_tangent, Language, LanguageLab, Word};

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn within(start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    assert!(elapsed <= budget, "runtime budget {budget:?} exceeded: {elapsed:?}");
}

#[test]
fn criterion_01_balanced_complexity_matches_the_closed_form() {
    let start = Instant::now();
    let profile = LanguageLab::new().complexity_profile(Language::Balanced, 22).unwrap();
    assert_eq!(&profile.p[..11], &[1, 2, 4, 8, 14, 24, 36, 54, 76, 104, 136]);
    for (n, &p) in profile.p.iter().enumerate() {
        assert_eq!(p as u128, counting::lipatov_balanced(n as u64), "p_{n}");
    }
    within(start, Duration::from_secs(60));
}

#[test]
fn criterion_02_long_run_derivation_example_is_bit_exact() {
    let start = Instant::now();
    let word = w("100100010010010010001001000100");
    let trace = derivation::derive_accelerated(&word);
    let outputs: Vec<String> = trace.steps.iter().map(|s| s.output.to_string()).collect();
    assert_eq!(outputs, ["110111101101", "01100"]);
    assert_eq!(trace.final_word, w("01100"));
    assert!(is_analytic_tangent(&word));
    within(start, Duration::from_secs(1));
}

#[test]
fn criterion_03_figure_words_classify_as_published() {
    let start = Instant::now();
    assert!(is_tangent(&w("0110100110")));
    assert!(is_analytic_tangent(&w("1001010110")));
    assert!(!is_analytic_tangent(&w("0110100110")));
    within(start, Duration::from_secs(1));
}

#[test]
fn criterion_04_derivation_and_counting_balance_oracles_agree() {
    let start = Instant::now();
    for n in 0..=16 {
        for word in all_words(n) {
            assert_eq!(
                is_balanced(&word),
                word.is_k_balanced(1),
                "balance oracles disagree on {word}"
            );
        }
    }
    within(start, Duration::from_secs(300));
}

#[test]
fn criterion_05_no_weak_bispecials_in_either_language() {
    let start = Instant::now();
    let lab = LanguageLab::new();
    for lang in [Language::Tangent, Language::Analytic] {
        for n in 0..=12 {
            let census = lab.bispecial_census(lang, n).unwrap();
            assert_eq!(census.wb(), 0, "weak bispecial of {lang} at length {n}: {:?}", census.weak);
        }
    }
    within(start, Duration::from_secs(300));
}

#[test]
fn criterion_06_complexity_increments_satisfy_the_bispecial_identity() {
    let lab = LanguageLab::new();
    for lang in [Language::Tangent, Language::Analytic] {
        let s = lab.complexity_profile(lang, 13).unwrap().first_differences();
        for n in 0..=11usize {
            let census = lab.bispecial_census(lang, n).unwrap();
            assert_eq!(
                s[n + 1] as i64 - s[n] as i64,
                census.sb() as i64 - census.wb() as i64,
                "{lang} at length {n}"
            );
        }
    }
}

#[test]
fn criterion_07_segment_constructions_exhaust_the_strong_bispecials() {
    let start = Instant::now();
    let lab = LanguageLab::new();
    for n in 0..=10u64 {
        let total = n + 2;

        let mut tangent_words = BTreeSet::new();
        let mut analytic_words = BTreeSet::new();
        for p in 1..total {
            let seg = LatticeSegment::new(p, total - p);
            if seg.gcd() == 1 {
                let coding = seg.coding().unwrap();
                tangent_words.insert(coding.clone());
                analytic_words.insert(coding);
            } else {
                tangent_words.extend(seg.slalom_bispecials().unwrap());
                let (above, under) = seg.analytic_slalom_pair().unwrap();
                analytic_words.insert(above);
                analytic_words.insert(under);
            }
        }

        let tangent_census: BTreeSet<Word> =
            lab.bispecial_census(Language::Tangent, n as usize).unwrap().strong.into_iter().collect();
        assert_eq!(tangent_words, tangent_census, "tangent strong bispecials at length {n}");
        assert_eq!(tangent_census.len() as u128, counting::candidate_sb_tangent(n));

        let analytic_census: BTreeSet<Word> =
            lab.bispecial_census(Language::Analytic, n as usize).unwrap().strong.into_iter().collect();
        assert_eq!(analytic_words, analytic_census, "analytic strong bispecials at length {n}");
        assert_eq!(analytic_census.len() as u128, counting::candidate_sb_analytic(n));

        if n <= 4 {
            assert_eq!(tangent_census.len(), [1, 2, 4, 4, 10][n as usize]);
            assert_eq!(analytic_census.len(), [1, 2, 4, 4, 8][n as usize]);
        }
    }
    within(start, Duration::from_secs(300));
}

#[test]
fn criterion_08_reconciliation_flags_the_published_tables_and_clears_the_candidates() {
    let report = counting::reconcile(&LanguageLab::new(), 12).unwrap();
    assert_eq!(report.rows.len(), 13);
    for row in &report.rows {
        assert!(row.flags.cand_analytic, "candidate analytic count off at n={}", row.n);
        assert!(row.flags.cand_tangent, "candidate tangent count off at n={}", row.n);
        assert!(row.flags.cand_sb_analytic, "candidate analytic sb off at n={}", row.n);
        assert!(row.flags.cand_sb_tangent, "candidate tangent sb off at n={}", row.n);
        // The published closed forms agree only before their first slips
        // at n = 2 and n = 4.
        assert_eq!(row.flags.paper_analytic, row.n < 2, "published analytic flag at n={}", row.n);
        assert_eq!(row.flags.paper_tangent, row.n < 4, "published tangent flag at n={}", row.n);
    }
    assert_eq!(report.rows[2].paper_analytic, 5);
    assert_eq!(report.rows[2].enum_analytic, 4);
    assert_eq!(report.rows[4].paper_tangent, 18);
    assert_eq!(report.rows[4].enum_tangent, 16);
}

#[test]
fn criterion_09_growth_orders_are_cubic_and_exponential() {
    let start = Instant::now();
    for n in 20..=60u64 {
        let p = counting::analytic_closed_form(n, ClosedFormVariant::GeometricCandidate) as f64;
        let ratio = p / (n as f64).powi(3);
        assert!((0.05..=5.0).contains(&ratio), "analytic growth ratio {ratio} at n={n}");
    }
    for n in 30..=58u64 {
        let a = counting::tangent_closed_form(n, ClosedFormVariant::GeometricCandidate).unwrap();
        let b = counting::tangent_closed_form(n + 2, ClosedFormVariant::GeometricCandidate).unwrap();
        let ratio = b as f64 / a as f64;
        assert!((1.7..=2.3).contains(&ratio), "tangent growth ratio {ratio} at n={n}");
    }
    within(start, Duration::from_secs(1));
}

#[test]
fn criterion_10_inclusion_chain_holds_with_strictness_witnesses() {
    let start = Instant::now();
    let audit = LanguageLab::new().inclusion_audit(14).unwrap();
    let found: Vec<(String, String, String)> = audit
        .witnesses
        .iter()
        .map(|x| (x.smaller.to_string(), x.larger.to_string(), x.word.to_string()))
        .collect();
    assert_eq!(
        found,
        [
            ("balanced".into(), "analytic".into(), "0011".into()),
            ("analytic".into(), "tangent".into(), "001100".into()),
            ("tangent".into(), "2balanced".into(), "00011".into()),
        ]
    );
    within(start, Duration::from_secs(120));
}

#[test]
fn criterion_11_every_analytic_word_splits_into_two_balanced_halves() {
    let start = Instant::now();
    let lab = LanguageLab::new();
    for n in 0..=14 {
        for member in lab.enumerate(Language::Analytic, n).unwrap() {
            assert!(
                tangent_words::lang::splits_into_two_balanced(&member).is_some(),
                "analytic word {member} admits no balanced split"
            );
        }
    }
    within(start, Duration::from_secs(120));
}

#[test]
fn criterion_12_curve_coder_matches_the_geometry() {
    let start = Instant::now();

    let line = CurveSpec {
        kind: CurveKind::Line { slope: 2f64.sqrt() - 1.0, intercept: 0.25 },
        domain: (0.3, 143.3),
    };
    let word = cutting_sequence(&line, &GridPlacement { mesh: 1.0, offset: (0.0, 0.0) }).unwrap();
    assert!(word.len() >= 200, "only {} crossings", word.len());
    assert!(is_balanced(&word));

    // Gentle curvature so that 16-letter windows stay close to a tangent
    // line even at the coarsest mesh; the slope runs from 0.2 to 1.4, so
    // the scan still crosses the delicate neighbourhoods of slope 1/3,
    // 1/2, and 1.
    let parabola =
        CurveSpec { kind: CurveKind::Parabola { a: 0.02, b: 0.0, c: 0.0 }, domain: (5.0, 35.0) };
    let report = multigrid_factor_scan(&parabola, &[0.1, 0.05, 0.025], 3, 16).unwrap();
    assert_eq!(report.entries.len(), 9);
    for entry in &report.entries {
        for factor in &entry.factors {
            assert!(
                factor.tangent && factor.analytic,
                "factor {} at mesh {} is not analytic",
                factor.w,
                entry.mesh
            );
        }
    }

    let diagonal =
        CurveSpec { kind: CurveKind::Line { slope: 1.0, intercept: 0.0 }, domain: (0.5, 2.5) };
    let hit = cutting_sequence(&diagonal, &GridPlacement { mesh: 1.0, offset: (0.0, 0.0) });
    assert!(matches!(hit, Err(GeometryError::CornerHit { .. })), "expected a corner hit: {hit:?}");

    within(start, Duration::from_secs(30));
}
