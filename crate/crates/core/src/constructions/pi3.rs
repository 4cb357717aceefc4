use super::run::{ConstructionRun, Elem, InsertionRule, Recorder, RunKind};
use super::schedule::EnumerationFamily;
use crate::error::Result;

/// The ω construction: interval `[b_x, b_{x+1}]` gains fresh elements whenever
/// `W_x` grows, so it becomes dense exactly when `W_x` is infinite.
pub fn run_pi3_omega(family: &EnumerationFamily, stages: u64) -> Result<ConstructionRun> {
    run_pi3_omega_with(family, stages, InsertionRule::EveryPair)
}

pub fn run_pi3_omega_with(family: &EnumerationFamily, stages: u64, rule: InsertionRule) -> Result<ConstructionRun> {
    family.validate()?;
    let mut r = Recorder::new();
    let mut backbone = 0u64;
    for s in 0..stages {
        r.stage = s;
        let firing: Vec<u64> = if s == 0 { Vec::new() } else { family.firing(s).collect() };
        let need = firing.iter().map(|x| x + 1).max().unwrap_or(0).max(s);
        while backbone <= need {
            r.push_back(Elem::Backbone(backbone), None)?;
            backbone += 1;
        }
        let mut fresh = 0u64;
        for x in firing {
            let (lo, hi) = (r.pos(Elem::Backbone(x)), r.pos(Elem::Backbone(x + 1)));
            match rule {
                InsertionRule::EveryPair => {
                    let lefts: Vec<Elem> = r.order[lo..hi].to_vec();
                    for a in lefts {
                        r.insert_after(Elem::Fresh(s, fresh), Some(a), Some(x))?;
                        fresh += 1;
                    }
                }
                InsertionRule::OnePerInterval => {
                    r.insert_after(Elem::Fresh(s, fresh), Some(r.order[hi - 1]), Some(x))?;
                    fresh += 1;
                }
            }
        }
    }
    Ok(r.finish(RunKind::Pi3Omega { rule }, stages, None))
}
