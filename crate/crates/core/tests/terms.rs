use proptest::prelude::*;
use scattered::backforth::iso;
use scattered::term::{blocks1, condense, hausdorff_rank, BlockAtom};
use scattered::{normalize, parse_term, reduce, OrderTerm};

fn t(s: &str) -> OrderTerm {
    parse_term(s).unwrap()
}

/// Terms of rank at most 1: sums of finite chains, ω, ω* and ζ.
fn rank_one() -> impl Strategy<Value = OrderTerm> {
    let piece = prop_oneof![
        (0u64..4).prop_map(OrderTerm::fin),
        (1u64..3).prop_map(|n| OrderTerm::omega(OrderTerm::fin(n))),
        (1u64..3).prop_map(|n| OrderTerm::omega_star(OrderTerm::fin(n))),
        Just(OrderTerm::zeta()),
    ];
    prop::collection::vec(piece, 1..6).prop_map(OrderTerm::sum)
}

/// Terms of rank at most 2.
fn rank_two() -> impl Strategy<Value = OrderTerm> {
    let piece = prop_oneof![
        3 => rank_one(),
        1 => rank_one().prop_map(OrderTerm::omega),
        1 => rank_one().prop_map(OrderTerm::omega_star),
    ];
    prop::collection::vec(piece, 1..4).prop_map(OrderTerm::sum)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    F(u64),
    W,
    Ws,
    Z,
}

fn tokens(t: &OrderTerm, out: &mut Vec<Tok>) {
    match t {
        OrderTerm::Fin(0) => {}
        OrderTerm::Fin(n) => out.push(Tok::F(*n)),
        OrderTerm::Sum(ps) => ps.iter().for_each(|p| tokens(p, out)),
        OrderTerm::Omega(b) => match b.size() {
            Some(0) => {}
            Some(_) => out.push(Tok::W),
            None => panic!("rank one only"),
        },
        OrderTerm::OmegaStar(b) => match b.size() {
            Some(0) => {}
            Some(_) => out.push(Tok::Ws),
            None => panic!("rank one only"),
        },
    }
}

/// 1-blocks of a rank-one term, joining neighbours at finite distance.
fn block_oracle(t: &OrderTerm) -> Vec<Tok> {
    let mut raw = Vec::new();
    tokens(t, &mut raw);
    let mut out: Vec<Tok> = Vec::new();
    for tok in raw {
        let joined = match (out.last().copied(), tok) {
            (Some(Tok::F(a)), Tok::F(b)) => Some(Tok::F(a + b)),
            (Some(Tok::F(_)), Tok::W) => Some(Tok::W),
            (Some(Tok::Ws), Tok::F(_)) => Some(Tok::Ws),
            (Some(Tok::Ws), Tok::W) => Some(Tok::Z),
            _ => None,
        };
        match joined {
            Some(j) => *out.last_mut().unwrap() = j,
            None => out.push(tok),
        }
    }
    out
}

fn atoms(t: &OrderTerm) -> Vec<Tok> {
    blocks1(t)
        .atoms()
        .unwrap()
        .into_iter()
        .map(|a| match a {
            BlockAtom::F(n) => Tok::F(n),
            BlockAtom::W => Tok::W,
            BlockAtom::Wstar => Tok::Ws,
            BlockAtom::Z => Tok::Z,
        })
        .collect()
}

#[test]
fn parse_examples() {
    assert_eq!(t("w"), OrderTerm::omega(OrderTerm::fin(1)));
    assert_eq!(
        t("w*+3+w"),
        OrderTerm::Sum(vec![OrderTerm::w_star(), OrderTerm::fin(3), OrderTerm::w()])
    );
    assert_eq!(t("omega(1+w)"), OrderTerm::omega(OrderTerm::w()));
    assert!(parse_term("w+").is_err());
    assert!(parse_term("99999999999999999999999").is_err());
}

#[test]
fn ranks() {
    for (s, r) in [("0", 0), ("w+2+w*", 1), ("omega(z)", 2), ("w^2*3+w", 2), ("omegastar(w^2)", 3)] {
        assert_eq!(hausdorff_rank(&t(s)), r, "{s}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn blocks_match_oracle(a in rank_one()) {
        prop_assert_eq!(atoms(&a), block_oracle(&a));
    }

    #[test]
    fn rank_one_iso_matches_oracle(a in rank_one(), b in rank_one()) {
        prop_assert_eq!(iso(&a, &b).unwrap(), block_oracle(&a) == block_oracle(&b));
    }

    #[test]
    fn rewrites_preserve_type(a in rank_two()) {
        prop_assert!(iso(&a, &normalize(&a)).unwrap());
        prop_assert!(iso(&a, &reduce(&a)).unwrap());
        prop_assert!(iso(&a, &parse_term(&a.to_string()).unwrap()).unwrap());
        prop_assert_eq!(hausdorff_rank(&a), hausdorff_rank(&reduce(&a)));
        prop_assert_eq!(hausdorff_rank(&a), hausdorff_rank(&a.reversed()));
        prop_assert_eq!(a.reversed().reversed(), a);
    }

    #[test]
    fn absorption_laws(a in rank_one()) {
        prop_assume!(a.size() != Some(0));
        let w = OrderTerm::omega(a.clone());
        let ws = OrderTerm::omega_star(a.clone());
        prop_assert!(iso(&w, &a.plus(&w)).unwrap());
        prop_assert!(iso(&ws, &ws.plus(&a)).unwrap());
        prop_assert!(iso(&w, &OrderTerm::omega(a.times(2))).unwrap());
    }

    #[test]
    fn iso_is_symmetric_and_mirrors(a in rank_two(), b in rank_two()) {
        let ab = iso(&a, &b).unwrap();
        prop_assert_eq!(ab, iso(&b, &a).unwrap());
        prop_assert_eq!(ab, iso(&a.reversed(), &b.reversed()).unwrap());
        if ab {
            prop_assert_eq!(hausdorff_rank(&a), hausdorff_rank(&b));
        }
    }

    #[test]
    fn condensation_lowers_rank(a in rank_two()) {
        let r = hausdorff_rank(&a);
        prop_assume!(r > 0);
        prop_assert_eq!(hausdorff_rank(&condense(&a)), r - 1);
    }
}
