use super::run::{ConstructionRun, Elem, Event, Recorder, RunKind, WorkerState};
use super::schedule::EnumerationFamily;
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// The ω+n+ω* construction. At each stage the least worker `x` whose set grew
/// acts: it places its block `c^x_1 < … < c^x_n` if it has none, adds a new
/// element on each side of the block, and initiates every `y > x`.
pub fn run_priority(family: &EnumerationFamily, n: u64, stages: u64) -> Result<ConstructionRun> {
    if n == 0 {
        return Err(Error::InvalidArgument("block size must be at least 1".into()));
    }
    family.validate()?;
    let mut r = Recorder::new();
    let mut workers: BTreeMap<u64, WorkerState> = BTreeMap::new();
    for t in 1..stages {
        r.stage = t;
        let Some(x) = family.firing(t).next() else { continue };
        let s = t - 1;
        r.log(Event::Act { stage: t, worker: x });
        let holds = |w: &BTreeMap<u64, WorkerState>, y: u64| w.get(&y).is_some_and(|st| st.constants.is_some());
        if !holds(&workers, x) {
            let block: Vec<Elem> = (1..=n).map(|i| Elem::Pair(s, i)).collect();
            let anchor = workers
                .iter()
                .find(|(_, st)| st.constants.is_some())
                .map(|(_, st)| *st.constants.as_ref().unwrap().last().unwrap());
            let mut after = anchor;
            for &c in &block {
                r.insert_after(c, after, Some(x))?;
                after = Some(c);
            }
            r.log(Event::Assign { stage: t, worker: x, constants: block.clone() });
            workers.insert(x, WorkerState { constants: Some(block), initiated: false });
        }
        let block = workers[&x].constants.clone().unwrap();
        r.insert_before(Elem::Pair(s, 0), block[0], Some(x))?;
        r.insert_after(Elem::Pair(s, n + 1), Some(block[block.len() - 1]), Some(x))?;
        for (&y, st) in workers.range_mut(x + 1..) {
            if st.constants.is_some() {
                st.constants = None;
                st.initiated = true;
                r.log(Event::Initiate { stage: t, worker: y, by: x });
            }
        }
    }
    Ok(r.finish(RunKind::Priority { n }, stages, Some(workers)))
}

/// Per worker: (actions, initiations suffered, actions by lower workers).
pub fn initiation_accounting(run: &ConstructionRun) -> BTreeMap<u64, (u64, u64, u64)> {
    let mut acts: BTreeMap<u64, u64> = BTreeMap::new();
    let mut inits: BTreeMap<u64, u64> = BTreeMap::new();
    for ev in &run.events {
        match ev {
            Event::Act { worker, .. } => *acts.entry(*worker).or_default() += 1,
            Event::Initiate { worker, .. } => *inits.entry(*worker).or_default() += 1,
            _ => {}
        }
    }
    let ids: std::collections::BTreeSet<u64> = acts.keys().chain(inits.keys()).copied().collect();
    ids.into_iter()
        .map(|x| {
            let lower = acts.range(..x).map(|(_, c)| c).sum();
            (x, (acts.get(&x).copied().unwrap_or(0), inits.get(&x).copied().unwrap_or(0), lower))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{replay, Schedule};

    #[test]
    fn hand_run() {
        let f = EnumerationFamily::new([(1, Schedule::Periodic { start: 1, period: 1 })]);
        let run = run_priority(&f, 2, 4).unwrap();
        let p = Elem::Pair;
        // stage 1 places <0,1> <0,2> with endpoints, later stages add endpoints only
        assert_eq!(run.order, vec![p(0, 0), p(1, 0), p(2, 0), p(0, 1), p(0, 2), p(2, 3), p(1, 3), p(0, 3)]);
        assert_eq!(run.workers.as_ref().unwrap()[&1].constants, Some(vec![p(0, 1), p(0, 2)]));
        replay(&run).unwrap();
    }

    #[test]
    fn single_infinite_worker_is_stable() {
        let f = EnumerationFamily::new([(1, Schedule::Periodic { start: 1, period: 1 })]);
        let run = run_priority(&f, 2, 50).unwrap();
        let assigns = run.events.iter().filter(|e| matches!(e, Event::Assign { worker: 1, .. })).count();
        let inits = run.events.iter().filter(|e| matches!(e, Event::Initiate { worker: 1, .. })).count();
        assert_eq!((assigns, inits), (1, 0));
        assert_eq!(run.order.len(), 2 + 2 * 49);
    }

    #[test]
    fn empty_family() {
        let run = run_priority(&EnumerationFamily::default(), 3, 30).unwrap();
        assert!(run.order.is_empty() && run.events.is_empty());
        assert!(run_priority(&EnumerationFamily::default(), 0, 3).is_err());
    }

    #[test]
    fn lower_worker_resets_higher() {
        let f = EnumerationFamily::new([
            (0, Schedule::Periodic { start: 3, period: 3 }),
            (2, Schedule::Periodic { start: 1, period: 1 }),
        ]);
        let run = run_priority(&f, 1, 20).unwrap();
        replay(&run).unwrap();
        for (x, (_, inits, lower)) in initiation_accounting(&run) {
            assert!(inits <= lower, "worker {x}");
        }
        // each action of 0 initiates 2, which then places a fresh block after c^0
        let inits2 = run.events.iter().filter(|e| matches!(e, Event::Initiate { worker: 2, by: 0, .. })).count();
        assert_eq!(inits2, 6);
        let c0 = run.workers.as_ref().unwrap()[&0].constants.clone().unwrap();
        let c2 = run.workers.as_ref().unwrap()[&2].constants.clone().unwrap();
        assert!(run.position(c0[0]).unwrap() < run.position(c2[0]).unwrap());
    }
}
