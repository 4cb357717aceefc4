use proptest::prelude::*;
use scattered::backforth::{brute_force_leq, cap_stability_check, iso, leq_bf, BfEngine, Caps};
use scattered::selftest::RANK1_BATTERY;
use scattered::{parse_term, OrderTerm};

fn t(s: &str) -> OrderTerm {
    parse_term(s).unwrap()
}

fn battery() -> Vec<OrderTerm> {
    RANK1_BATTERY.iter().map(|s| t(s)).collect()
}

#[test]
fn examples() {
    let caps = Caps::default();
    let leq = |a: &str, b: &str, k| leq_bf(&t(a), &t(b), k, &caps).unwrap().holds;
    assert!(leq("w^2", "w", 2) && leq("w", "w^2", 2));
    assert!(leq("w*3", "w*2", 3) && leq("w*2", "w", 3));
    assert!(leq("3", "2", 1) && !leq("2", "3", 1));
    assert!(!leq("w", "w*2", 3));
    let r = cap_stability_check(&t("5"), &t("5"), 3, &caps).unwrap();
    assert!(r.stable && r.result.holds);
}

#[test]
fn level_limit() {
    assert!(leq_bf(&t("w"), &t("w"), 7, &Caps::default()).is_err());
    let bad = Caps { index_factor: 0, ..Caps::default() };
    assert!(leq_bf(&t("w"), &t("w"), 1, &bad).is_err());
}

#[test]
fn battery_laws() {
    let terms = battery();
    let mut e = BfEngine::new(Caps::default());
    // size with every infinite order counted as 7
    let size = |x: &OrderTerm| x.size().map_or(7, |n| n.min(7));
    for a in &terms {
        for k in 0..=4 {
            assert!(e.leq_terms(a, a, k), "{a} reflexive at {k}");
        }
        for b in &terms {
            let mut prev = true;
            for k in 0..=4 {
                let now = e.leq_terms(a, b, k);
                assert!(prev || !now, "{a} <= {b} not monotone at {k}");
                if now && k >= 1 {
                    assert!(e.leq_terms(b, a, k - 1), "{a} <=_{k} {b} without the flip");
                }
                prev = now;
            }
            assert_eq!(e.leq_terms(a, b, 1), size(b) <= size(a), "{a} <=_1 {b}");
        }
    }
}

#[test]
fn witnesses_replay() {
    let mut e = BfEngine::new(Caps::default());
    for (a, b, k) in [("w", "w+w", 3), ("2", "3", 1), ("w+w*", "z", 3), ("1+z", "z", 4)] {
        let (a, b) = (t(a), t(b));
        let r = e.query(&a, &b, k).unwrap();
        assert!(!r.holds);
        let w = r.witness.expect("false verdicts carry a witness");
        assert!(e.replay(&a, &w, k), "{a} vs {b}");
    }
}

#[test]
fn rank_two_iso_implies_low_levels() {
    let mut e = BfEngine::new(Caps::default());
    for (a, b) in [("w^2", "omega(w+1)"), ("w^2", "w+w^2"), ("omega(z)", "w*+omega(w+w*)"), ("w^2+w*", "omega(1+w)+w*")] {
        let (a, b) = (t(a), t(b));
        assert!(iso(&a, &b).unwrap(), "{a} ~ {b}");
        assert!(e.leq_terms(&a, &b, 2) && e.leq_terms(&b, &a, 2), "{a} ~ {b}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn finite_orders_match_brute_force(a in 0u64..=8, b in 0u64..=8, k in 0u32..=4) {
        let (ea, eb): (Vec<u64>, Vec<u64>) = ((0..a).collect(), (0..b).collect());
        let want = brute_force_leq(&ea, &eb, k).unwrap();
        let got = leq_bf(&OrderTerm::fin(a), &OrderTerm::fin(b), k, &Caps::default()).unwrap().holds;
        prop_assert_eq!(got, want);
        let mut plain = BfEngine::new(Caps::default()).without_shortcuts();
        prop_assert_eq!(plain.leq_terms(&OrderTerm::fin(a), &OrderTerm::fin(b), k), want);
    }
}
