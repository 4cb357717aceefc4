//! Back-and-forth relations `≤_k` between orders presented by terms.
//!
//! `A ≤_k B` holds when every Π_k sentence true in `A` is true in `B`. For
//! `k ≥ 1` it is decided through interval decompositions: for every cut tuple
//! of `B` into `B_0, …, B_m` there must be a cut tuple of `A` into
//! `A_0, …, A_m` with `B_i ≤_{k-1} A_i` for every `i`. Level 0 is always true.

mod brute;
mod engine;
mod iso;

pub use brute::{brute_force_leq, BRUTE_MAX_LEVEL, BRUTE_MAX_SIZE};
pub use engine::BfEngine;
pub use iso::{iso, iso_bf, iso_report, IsoMethod, IsoReport, DEFAULT_MAX_RANK};

use crate::error::{Error, Result};
use crate::term::OrderTerm;
use serde::{Deserialize, Serialize};

pub const DEFAULT_MAX_LEVEL: u32 = 6;

/// Enumeration caps.
///
/// At level `k` copy indices under ω- and ω*-sums range over
/// `0..=index_factor·2^k` and, when `tuple_factor` is set, cut tuples have
/// length at most `tuple_factor·2^k`. Without a tuple factor tuples are
/// unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub index_factor: u64,
    pub tuple_factor: Option<u64>,
    pub max_level: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { index_factor: 2, tuple_factor: None, max_level: DEFAULT_MAX_LEVEL }
    }
}

impl Caps {
    pub fn index_cap(&self, k: u32) -> u64 {
        self.index_factor << k
    }

    pub fn tuple_cap(&self, k: u32) -> Option<u64> {
        self.tuple_factor.map(|f| f << k)
    }

    /// Both caps multiplied by `2^times`.
    pub fn doubled(&self, times: u32) -> Caps {
        Caps {
            index_factor: self.index_factor << times,
            tuple_factor: self.tuple_factor.map(|f| f << times),
            max_level: self.max_level,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.index_factor == 0 {
            return Err(Error::InvalidCaps("index factor must be positive".into()));
        }
        if self.tuple_factor == Some(0) {
            return Err(Error::InvalidCaps("tuple factor must be positive".into()));
        }
        if self.index_factor.leading_zeros() < self.max_level + 1 {
            return Err(Error::InvalidCaps("index factor overflows at the maximum level".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapsUsed {
    pub index: u64,
    pub tuple: Option<u64>,
}

/// A challenger cut tuple of the right-hand order with no response, given by
/// the intervals it cuts that order into.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub intervals: Vec<OrderTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BfResult {
    pub holds: bool,
    pub level: u32,
    pub caps: CapsUsed,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl BfEngine {
    /// Decides `a ≤_k b`, with a witness when it fails.
    pub fn query(&mut self, a: &OrderTerm, b: &OrderTerm, k: u32) -> Result<BfResult> {
        let caps = *self.caps();
        caps.validate()?;
        if k > caps.max_level {
            return Err(Error::LevelTooHigh { level: k, max: caps.max_level });
        }
        let (ia, ib) = (self.id_of(a), self.id_of(b));
        let (holds, refutation) = self.decide(ia, ib, k);
        Ok(BfResult {
            holds,
            level: k,
            caps: CapsUsed { index: caps.index_cap(k), tuple: caps.tuple_cap(k) },
            stable: None,
            witness: refutation.map(|intervals| Witness { intervals }),
        })
    }

    /// Whether `witness` is a challenger tuple against `a` at level `k` that
    /// has no response, i.e. whether it replays to a false verdict.
    pub fn replay(&mut self, a: &OrderTerm, witness: &Witness, k: u32) -> bool {
        let ia = self.id_of(a);
        !self.responds(ia, &witness.intervals, k)
    }

    /// Decides `a ≤_k b` as a bool.
    pub fn leq_terms(&mut self, a: &OrderTerm, b: &OrderTerm, k: u32) -> bool {
        let (ia, ib) = (self.id_of(a), self.id_of(b));
        self.leq(ia, ib, k)
    }
}

/// Decides `A ≤_k B` under `caps`.
pub fn leq_bf(a: &OrderTerm, b: &OrderTerm, k: u32, caps: &Caps) -> Result<BfResult> {
    BfEngine::new(*caps).query(a, b, k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub level: u32,
    /// Verdicts under caps `c`, `2c` and `4c`.
    pub verdicts: Vec<bool>,
    pub stable: bool,
    pub result: BfResult,
}

/// Re-decides `A ≤_k B` under caps `c`, `2c` and `4c`; the verdict is stable
/// when all three agree.
pub fn cap_stability_check(a: &OrderTerm, b: &OrderTerm, k: u32, caps: &Caps) -> Result<StabilityReport> {
    let mut verdicts = Vec::with_capacity(3);
    let mut last = None;
    for times in 0..3 {
        let r = leq_bf(a, b, k, &caps.doubled(times))?;
        verdicts.push(r.holds);
        last = Some(r);
    }
    let stable = verdicts.windows(2).all(|w| w[0] == w[1]);
    let mut result = last.expect("three runs");
    result.stable = Some(stable);
    Ok(StabilityReport { level: k, verdicts, stable, result })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_term;

    fn t(s: &str) -> OrderTerm {
        parse_term(s).unwrap()
    }

    fn leq(a: &str, b: &str, k: u32) -> bool {
        leq_bf(&t(a), &t(b), k, &Caps::default()).unwrap().holds
    }

    #[test]
    fn finite_cardinality_at_level_one() {
        assert!(leq("3", "2", 1));
        assert!(!leq("2", "3", 1));
        assert!(leq("w", "5", 1));
        assert!(!leq("5", "w", 1));
    }

    #[test]
    fn ordinal_facts() {
        assert!(leq("w^2", "w", 2));
        assert!(leq("w", "w^2", 2));
        assert!(leq("w*3", "w*2", 3));
        assert!(leq("w*2", "w", 3));
        assert!(!leq("w", "w*2", 3));
        assert!(!leq("w*2", "w*3", 4));
    }

    #[test]
    fn witness_replays() {
        let caps = Caps::default();
        let mut e = BfEngine::new(caps);
        let r = e.query(&t("w"), &t("w*2"), 3).unwrap();
        assert!(!r.holds);
        let w = r.witness.unwrap();
        assert!(e.replay(&t("w"), &w, 3));
        let mut fresh = BfEngine::new(caps).without_shortcuts();
        assert!(fresh.replay(&t("w"), &w, 3));
    }

    #[test]
    fn level_and_caps_validated() {
        assert_eq!(
            leq_bf(&t("w"), &t("w"), 7, &Caps::default()),
            Err(Error::LevelTooHigh { level: 7, max: 6 })
        );
        let bad = Caps { index_factor: 0, ..Caps::default() };
        assert!(matches!(leq_bf(&t("w"), &t("w"), 1, &bad), Err(Error::InvalidCaps(_))));
        let bad = Caps { tuple_factor: Some(0), ..Caps::default() };
        assert!(matches!(leq_bf(&t("w"), &t("w"), 1, &bad), Err(Error::InvalidCaps(_))));
    }

    #[test]
    fn level_zero_is_trivial() {
        assert!(leq("0", "w^2", 0));
    }

    #[test]
    fn stability_examples() {
        let c = Caps::default();
        let r = cap_stability_check(&t("w"), &t("w^2"), 2, &c).unwrap();
        assert!(r.stable && r.result.holds);
        let r = cap_stability_check(&t("5"), &t("5"), 3, &c).unwrap();
        assert!(r.stable && r.result.holds);
    }
}
