use super::{BfEngine, Caps};
use crate::error::{Error, Result};
use crate::term::{blocks1, hausdorff_rank, isomorphic, reduce, OrderTerm};
use serde::{Deserialize, Serialize};

pub const DEFAULT_MAX_RANK: u32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoMethod {
    Rank,
    Finite,
    Blocks,
    Syntactic,
    Condensation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoReport {
    pub iso: bool,
    pub rank: u32,
    pub method: IsoMethod,
}

pub fn iso(a: &OrderTerm, b: &OrderTerm) -> Result<bool> {
    Ok(iso_report(a, b, DEFAULT_MAX_RANK)?.iso)
}

/// Decides `a ≅ b` for terms of rank at most `max_rank`.
///
/// Rank 0 compares sizes and rank 1 compares the lists of 1-blocks. Higher
/// ranks compare condensations labelled by block type, level by level.
pub fn iso_report(a: &OrderTerm, b: &OrderTerm, max_rank: u32) -> Result<IsoReport> {
    let (ra, rb) = (hausdorff_rank(a), hausdorff_rank(b));
    for r in [ra, rb] {
        if r > max_rank {
            return Err(Error::RankTooHigh { rank: r, max: max_rank });
        }
    }
    let report = |iso, method| IsoReport { iso, rank: ra, method };
    if ra != rb {
        return Ok(report(false, IsoMethod::Rank));
    }
    Ok(match ra {
        0 => report(a.size() == b.size(), IsoMethod::Finite),
        1 => report(blocks1(a).atoms() == blocks1(b).atoms(), IsoMethod::Blocks),
        _ if reduce(a) == reduce(b) => report(true, IsoMethod::Syntactic),
        _ => report(isomorphic(a, b), IsoMethod::Condensation),
    })
}

/// Both `a ≤_k b` and `b ≤_k a` at `k = 2α + 2`, which for terms of rank `α`
/// is equivalent to isomorphism. Only as reliable as the caps.
pub fn iso_bf(a: &OrderTerm, b: &OrderTerm, caps: &Caps) -> Result<bool> {
    let level = 2 * hausdorff_rank(a).max(hausdorff_rank(b)) + 2;
    let caps = Caps { max_level: level.max(caps.max_level), ..*caps };
    caps.validate()?;
    let mut engine = BfEngine::new(caps);
    Ok(engine.leq_terms(a, b, level) && engine.leq_terms(b, a, level))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_term;

    fn t(s: &str) -> OrderTerm {
        parse_term(s).unwrap()
    }

    #[test]
    fn examples() {
        assert!(iso(&t("w"), &t("w")).unwrap());
        assert!(!iso(&t("w"), &t("w*2")).unwrap());
        assert!(iso(&t("1+w"), &t("w")).unwrap());
        assert!(iso(&t("w*+w"), &t("z")).unwrap());
        assert!(iso(&t("w*+3+w"), &t("z")).unwrap());
        assert!(!iso(&t("w+1"), &t("w")).unwrap());
    }

    #[test]
    fn rank_two_syntactic() {
        let r = iso_report(&t("w+w^2"), &t("w^2"), 2).unwrap();
        assert!(r.iso);
        assert_eq!(r.method, IsoMethod::Syntactic);
        let r = iso_report(&t("w^2+w"), &t("w^2"), 2).unwrap();
        assert!(!r.iso);
        assert_eq!(r.method, IsoMethod::Condensation);
        assert!(iso(&t("w^2"), &t("omega(w+1)")).unwrap());
    }

    #[test]
    fn back_and_forth_agrees_on_rank_one() {
        let caps = Caps::default();
        for (a, b) in [("w", "1+w"), ("z", "w*+w"), ("w", "w+1"), ("w+w*", "z")] {
            assert_eq!(iso_bf(&t(a), &t(b), &caps).unwrap(), iso(&t(a), &t(b)).unwrap(), "{a} vs {b}");
        }
    }

    #[test]
    fn rank_limit() {
        assert_eq!(iso(&t("w^3"), &t("w^3")), Err(Error::RankTooHigh { rank: 3, max: 2 }));
    }
}
