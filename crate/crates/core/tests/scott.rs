use scattered::scott::{
    classify, classify_complexity, eval_finite, make_phi_l, make_phi_m, make_phi_r, sat_scott, scott_rank1,
    simple_axioms, ComplexityClass, Formula,
};
use scattered::selftest::RANK1_BATTERY;
use scattered::{parse_term, OrderTerm};
use ComplexityClass::*;

fn t(s: &str) -> OrderTerm {
    parse_term(s).unwrap()
}

#[test]
fn phi_m_counts_block_size() {
    // in a finite order the 1-block of every point is the whole order
    for m in 1..=8 {
        let f = make_phi_m(m, "x").unwrap();
        for size in 1..=8u64 {
            for x in 0..size as usize {
                let got = eval_finite(&f, &OrderTerm::fin(size), &[("x", x)]).unwrap();
                assert_eq!(got, size == m as u64, "phi^{m} on {size} at {x}");
            }
        }
    }
}

#[test]
fn phi_r_and_phi_l_fail_in_finite_orders() {
    for size in 1..=5u64 {
        for x in 0..size as usize {
            for f in [make_phi_r("x"), make_phi_l("x")] {
                assert!(!eval_finite(&f, &OrderTerm::fin(size), &[("x", x)]).unwrap());
            }
        }
    }
}

#[test]
fn battery_sentences_are_at_most_dsigma3() {
    for s in RANK1_BATTERY {
        let sentence = scott_rank1(&t(s)).unwrap();
        let class = classify_complexity(&sentence.formula);
        assert!(class.le(DSigma(3)), "{s}: {class}");
        assert_eq!(class, sentence.claimed_class, "{s}");
        assert!(sentence.formula.free_vars().is_empty(), "{s}");
        assert!(class.le(classify(&t(s)).upper_bound), "{s}");
    }
}

#[test]
fn sentences_separate_the_battery() {
    for a in RANK1_BATTERY {
        let s = scott_rank1(&t(a)).unwrap();
        for b in RANK1_BATTERY {
            assert_eq!(sat_scott(&s, &t(b)).unwrap(), a == b, "{a} vs {b}");
        }
        // any presentation of the same order satisfies it
        let shifted = OrderTerm::sum([t(a), OrderTerm::fin(0)]);
        assert!(sat_scott(&s, &shifted).unwrap());
    }
}

#[test]
fn sentence_json_round_trip() {
    let s = scott_rank1(&t("w+2+w*")).unwrap();
    let text = serde_json::to_string(&s).unwrap();
    let back: scattered::scott::ScottSentence = serde_json::from_str(&text).unwrap();
    assert_eq!(back, s);
    let f: Formula = serde_json::from_str(&serde_json::to_string(&s.formula).unwrap()).unwrap();
    assert_eq!(f, s.formula);
}

#[test]
fn classification() {
    let cases = [
        ("w", Pi(3), Some(true)),
        ("w+w*", Pi(3), Some(true)),
        ("z", Pi(3), Some(true)),
        ("2+z+1", Pi(3), Some(true)),
        ("w+w", DSigma(3), Some(true)),
        ("w+3+w*", DSigma(3), Some(true)),
        ("4", DSigma(1), Some(true)),
        ("w^2", Pi(5), None),
        ("w^2+w^2", DSigma(5), None),
    ];
    for (s, class, optimal) in cases {
        let r = classify(&t(s));
        assert_eq!((r.upper_bound, r.optimal), (class, optimal), "{s}");
    }
}

#[test]
fn simple_axioms_hold_for_simple_orders() {
    for (s, n) in [("w", 3), ("w*", 3), ("w+w*", 4), ("w^2", 3), ("omegastar(w^2)", 3)] {
        let axioms = simple_axioms(&t(s)).unwrap();
        assert_eq!(axioms.len(), n, "{s}");
        let rank = scattered::term::hausdorff_rank(&t(s));
        assert!(axioms.iter().all(|f| classify_complexity(f).le(Pi(2 * rank + 1))), "{s}");
    }
    assert!(simple_axioms(&t("w+1")).is_err());
}
