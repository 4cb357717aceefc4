use super::run::{ConstructionRun, Elem, Recorder, RunKind, Sigma3Variant};
use super::schedule::EnumerationFamily;
use crate::error::Result;
use std::collections::HashMap;

/// Backbone `⟨x, 0⟩` with the gap before `⟨x+1, 0⟩` filled whenever `W_x`
/// grows: an ω-tail for `omega_plus_omega`, an ω-head and ω*-tail for
/// `omega_plus_zeta`. Starred variants reverse the order.
pub fn run_sigma3_limit(family: &EnumerationFamily, stages: u64, variant: Sigma3Variant) -> Result<ConstructionRun> {
    family.validate()?;
    let two_sided = variant.base() == Sigma3Variant::OmegaPlusZeta;
    let mut r = Recorder::new();
    let mut backbone = 0u64;
    let mut left: HashMap<u64, Elem> = HashMap::new();
    let mut right: HashMap<u64, Elem> = HashMap::new();
    for s in 0..stages {
        r.stage = s;
        let firing: Vec<u64> = if s == 0 { Vec::new() } else { family.firing(s).collect() };
        let need = firing.iter().map(|x| x + 1).max().unwrap_or(0).max(s);
        while backbone <= need {
            r.push_back(Elem::Pair(backbone, 0), None)?;
            backbone += 1;
        }
        for x in firing {
            if two_sided {
                let l = *left.get(&x).unwrap_or(&Elem::Pair(x, 0));
                let rt = *right.get(&x).unwrap_or(&Elem::Pair(x + 1, 0));
                let (el, er) = (Elem::Pair(x, 2 * s), Elem::Pair(x, 2 * s + 1));
                r.insert_after(el, Some(l), Some(x))?;
                r.insert_before(er, rt, Some(x))?;
                left.insert(x, el);
                right.insert(x, er);
            } else {
                r.insert_before(Elem::Pair(x, s), Elem::Pair(x + 1, 0), Some(x))?;
            }
        }
    }
    Ok(r.finish(RunKind::Sigma3Limit { variant }, stages, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{replay, Schedule};

    fn periodic_at_2() -> EnumerationFamily {
        EnumerationFamily::new([(2, Schedule::Periodic { start: 1, period: 1 })])
    }

    #[test]
    fn predecessors_accumulate() {
        let run = run_sigma3_limit(&periodic_at_2(), 20, Sigma3Variant::OmegaPlusOmega).unwrap();
        let p3 = run.position(Elem::Pair(3, 0)).unwrap();
        let p2 = run.position(Elem::Pair(2, 0)).unwrap();
        assert_eq!(p3 - p2 - 1, 19);
        assert_eq!(run.order[p3 - 1], Elem::Pair(2, 19));
        replay(&run).unwrap();
    }

    #[test]
    fn hand_run() {
        let run = run_sigma3_limit(&periodic_at_2(), 3, Sigma3Variant::OmegaPlusOmega).unwrap();
        let p = Elem::Pair;
        assert_eq!(run.order, vec![p(0, 0), p(1, 0), p(2, 0), p(2, 1), p(2, 2), p(3, 0)]);
    }

    #[test]
    fn two_sided() {
        let run = run_sigma3_limit(&periodic_at_2(), 3, Sigma3Variant::OmegaPlusZeta).unwrap();
        let p = Elem::Pair;
        assert_eq!(run.order, vec![p(0, 0), p(1, 0), p(2, 0), p(2, 2), p(2, 4), p(2, 5), p(2, 3), p(3, 0)]);
        replay(&run).unwrap();
    }

    #[test]
    fn starred_is_reversal() {
        for (star, base) in [
            (Sigma3Variant::OmegaStarSq, Sigma3Variant::OmegaPlusOmega),
            (Sigma3Variant::ZetaPlusOmegaStar, Sigma3Variant::OmegaPlusZeta),
        ] {
            let a = run_sigma3_limit(&periodic_at_2(), 12, star).unwrap();
            let b = run_sigma3_limit(&periodic_at_2(), 12, base).unwrap();
            let mut rev = b.order.clone();
            rev.reverse();
            assert_eq!(a.order, rev);
            assert_eq!(a.events, b.events);
            replay(&a).unwrap();
        }
    }
}
