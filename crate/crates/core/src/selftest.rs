//! Acceptance suites, shared by `scattered selftest` and the test harness.

use crate::backforth::{brute_force_leq, cap_stability_check, iso, leq_bf, BfEngine, Caps};
use crate::constructions::{
    diagnose, initiation_accounting, replay, run_block_reduction, run_pi3_omega, run_priority, Constant, Elem,
    EnumerationFamily, Event, RelationTable, Row, Schedule, YRule,
};
use crate::scott::{
    classify_complexity, make_phi_m, make_phi_r, make_successor, sat_scott, scott_rank1, sim_formula, ComplexityClass,
};
use crate::term::{hausdorff_rank, parse_term, OrderTerm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const DEFAULT_SEED: u64 = 20240607;

/// Pairwise non-isomorphic orders of rank 1.
pub const RANK1_BATTERY: [&str; 20] = [
    "w", "w*", "z", "w+w", "w*+w*", "w+w*", "w+z", "z+w*", "w+1+w*", "w+2+w*", "1+z", "z+2", "1+z+1", "w+1", "3+w*",
    "z+z", "w+w+w", "w+3+w*+z", "z+w", "w*+z",
];

/// Terms with their Hausdorff ranks, worked out by hand.
pub const RANK_BATTERY: [(&str, u32); 15] = [
    ("5", 0),
    ("0", 0),
    ("w", 1),
    ("w*", 1),
    ("w+w", 1),
    ("w+2+w*", 1),
    ("z", 1),
    ("3+w*+w+3", 1),
    ("w^2", 2),
    ("omega(1+w)", 2),
    ("omegastar(w*)", 2),
    ("w^2*3+w", 2),
    ("omega(z)", 2),
    ("w+w^2+w*", 2),
    ("w^3", 3),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub const CRITERIA: [(u8, &str); 8] = [
    (1, "oracle equivalence on finite orders"),
    (2, "golden ordinal facts"),
    (3, "rank suite"),
    (4, "scott battery"),
    (5, "complexity anchors"),
    (6, "rank-1 iso law"),
    (7, "construction laws"),
    (8, "partition composition"),
];

pub fn run_all(seed: u64) -> Vec<CriterionOutcome> {
    CRITERIA.iter().map(|&(id, _)| run_criterion(id, seed)).collect()
}

/// Runs criterion `id` (1 to 8); `seed` drives the randomized ones.
pub fn run_criterion(id: u8, seed: u64) -> CriterionOutcome {
    let name = CRITERIA.iter().find(|c| c.0 == id).map_or("unknown", |c| c.1);
    let result = match id {
        1 => oracle_equivalence(6, 4),
        2 => golden_facts(),
        3 => rank_suite(),
        4 => scott_battery(),
        5 => complexity_anchors(),
        6 => iso_law(),
        7 => construction_laws(),
        8 => partition_composition(seed, 200),
        _ => Err(format!("no criterion {id}")),
    };
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionOutcome { id, name, passed, detail }
}

type Check = std::result::Result<String, String>;

fn term(s: &str) -> OrderTerm {
    parse_term(s).expect("battery terms parse")
}

fn battery() -> Vec<OrderTerm> {
    RANK1_BATTERY.iter().map(|s| term(s)).collect()
}

fn failures(bad: Vec<String>, total: usize, what: &str) -> Check {
    if bad.is_empty() {
        Ok(format!("{total}/{total} {what}"))
    } else {
        let shown: Vec<&str> = bad.iter().take(5).map(String::as_str).collect();
        Err(format!("{}/{total} {what} failed: {}", bad.len(), shown.join("; ")))
    }
}

/// `leq_bf` against brute force on all finite orders up to `max_size`, with
/// and without the engine's shortcuts.
pub fn oracle_equivalence(max_size: u64, max_level: u32) -> Check {
    let mut bad = Vec::new();
    let mut total = 0;
    let caps = Caps::default();
    let mut plain = BfEngine::new(caps).without_shortcuts();
    for a in 0..=max_size {
        for b in 0..=max_size {
            let (ea, eb): (Vec<u64>, Vec<u64>) = ((0..a).collect(), (0..b).collect());
            for k in 0..=max_level {
                total += 1;
                let truth = brute_force_leq(&ea, &eb, k).map_err(|e| e.to_string())?;
                let (ta, tb) = (OrderTerm::fin(a), OrderTerm::fin(b));
                let fast = leq_bf(&ta, &tb, k, &caps).map_err(|e| e.to_string())?.holds;
                let slow = plain.leq_terms(&ta, &tb, k);
                if fast != truth || slow != truth {
                    bad.push(format!("{a} <=_{k} {b}: brute {truth}, leq_bf {fast}, no shortcuts {slow}"));
                }
            }
        }
    }
    failures(bad, total, "verdicts agree")
}

fn golden_facts() -> Check {
    let facts = [
        ("w^2", "w", 2, true),
        ("w", "w^2", 2, true),
        ("w*3", "w*2", 3, true),
        ("w*2", "w", 3, true),
        ("w", "w*2", 3, false),
        ("w*2", "w*3", 4, false),
    ];
    let mut bad = Vec::new();
    for (a, b, k, want) in facts {
        let r = cap_stability_check(&term(a), &term(b), k, &Caps::default()).map_err(|e| e.to_string())?;
        if !r.stable || r.verdicts[0] != want {
            bad.push(format!("{a} <=_{k} {b}: verdicts {:?} under c, 2c, 4c, expected {want}", r.verdicts));
        }
    }
    failures(bad, facts.len(), "facts hold and are stable under two cap doublings")
}

fn rank_suite() -> Check {
    let bad = RANK_BATTERY
        .iter()
        .filter(|(s, r)| hausdorff_rank(&term(s)) != *r)
        .map(|(s, r)| format!("{s}: got {}, expected {r}", hausdorff_rank(&term(s))))
        .collect();
    failures(bad, RANK_BATTERY.len(), "ranks exact")
}

fn scott_battery() -> Check {
    let terms = battery();
    let mut bad = Vec::new();
    for (i, l) in terms.iter().enumerate() {
        let s = scott_rank1(l).map_err(|e| e.to_string())?;
        if classify_complexity(&s.formula) != s.claimed_class {
            bad.push(format!("{}: sentence is {} but claims {}", RANK1_BATTERY[i], classify_complexity(&s.formula), s.claimed_class));
        }
        for (j, m) in terms.iter().enumerate() {
            let sat = sat_scott(&s, m).map_err(|e| e.to_string())?;
            let same = iso(l, m).map_err(|e| e.to_string())?;
            if sat != same || same != (i == j) {
                bad.push(format!("{} vs {}: sat {sat}, iso {same}", RANK1_BATTERY[i], RANK1_BATTERY[j]));
            }
        }
    }
    failures(bad, terms.len() * terms.len(), "pairs agree")
}

fn complexity_anchors() -> Check {
    use ComplexityClass::*;
    let mut got: Vec<(String, ComplexityClass, ComplexityClass)> = vec![
        ("S(x,y)".into(), classify_complexity(&make_successor()), Pi(1)),
        ("phi^r".into(), classify_complexity(&make_phi_r("x")), Pi(3)),
        ("phi^m".into(), classify_complexity(&make_phi_m(2, "x").map_err(|e| e.to_string())?), DSigma(2)),
    ];
    for k in 1..=3 {
        let f = sim_formula(k).map_err(|e| e.to_string())?;
        got.push((format!("~_{k}"), classify_complexity(&f), Sigma(2 * k)));
    }
    let claims = [
        ("w", Pi(3)),
        ("w*", Pi(3)),
        ("w+w*", Pi(3)),
        ("w+w", DSigma(3)),
        ("w*+w*", DSigma(3)),
        ("w+z", DSigma(3)),
        ("z+w*", DSigma(3)),
        ("w+1+w*", DSigma(3)),
    ];
    for (t, want) in claims {
        let s = scott_rank1(&term(t)).map_err(|e| e.to_string())?;
        got.push((format!("scott({t})"), s.claimed_class, want));
    }
    let total = got.len();
    let bad = got.into_iter().filter(|(_, g, w)| g != w).map(|(n, g, w)| format!("{n}: {g}, expected {w}")).collect();
    failures(bad, total, "classes match")
}

/// `A ≤_4 B` iff `A ≅ B` over all ordered battery pairs.
fn iso_law() -> Check {
    let terms = battery();
    let mut engine = BfEngine::new(Caps::default());
    let mut bad = Vec::new();
    for (i, a) in terms.iter().enumerate() {
        for (j, b) in terms.iter().enumerate() {
            let leq = engine.leq_terms(a, b, 4);
            let same = iso(a, b).map_err(|e| e.to_string())?;
            if leq != same {
                bad.push(format!("{} <=_4 {}: {leq}, iso {same}", RANK1_BATTERY[i], RANK1_BATTERY[j]));
            }
        }
    }
    failures(bad, terms.len() * terms.len(), "pairs agree")
}

fn construction_laws() -> Check {
    let mut notes = Vec::new();
    gap_law(10)?;
    notes.push("gap law 2^s - 1 for s <= 10".to_string());
    notes.push(priority_fairness(50)?);
    notes.push(block_tables()?);
    Ok(notes.join(", "))
}

/// Replays a run and checks a fresh run reproduces its log byte for byte.
fn check_run(run: &crate::constructions::ConstructionRun, again: crate::error::Result<crate::constructions::ConstructionRun>) -> std::result::Result<(), String> {
    replay(run).map_err(|e| e.to_string())?;
    let again = again.map_err(|e| e.to_string())?;
    if again.to_json() != run.to_json() {
        return Err("rerun produced a different log".into());
    }
    Ok(())
}

pub fn gap_law(max_s: u32) -> std::result::Result<(), String> {
    let family = EnumerationFamily::new([(0, Schedule::Periodic { start: 1, period: 1 })]);
    for s in 1..=max_s {
        let stages = s as u64 + 1;
        let run = run_pi3_omega(&family, stages).map_err(|e| e.to_string())?;
        check_run(&run, run_pi3_omega(&family, stages))?;
        let gap = run.position(Elem::Backbone(1)).unwrap() - run.position(Elem::Backbone(0)).unwrap() - 1;
        if gap != (1usize << s) - 1 {
            return Err(format!("after {s} active stages the gap has {gap} elements"));
        }
    }
    Ok(())
}

/// A unique infinite worker among finite ones keeps its constants from some
/// stage on and every one of its actions leaves no higher worker holding
/// constants.
pub fn priority_fairness(stages: u64) -> Check {
    let family = EnumerationFamily::new([
        (0, Schedule::Finite(vec![4, 9])),
        (1, Schedule::Periodic { start: 2, period: 2 }),
        (2, Schedule::Finite(vec![3, 5, 7, 11])),
        (3, Schedule::Finite(vec![1, 13, 15])),
    ]);
    let n = 2;
    let run = run_priority(&family, n, stages).map_err(|e| e.to_string())?;
    check_run(&run, run_priority(&family, n, stages))?;
    for (x, (_, inits, lower)) in initiation_accounting(&run) {
        if inits > lower {
            return Err(format!("worker {x} initiated {inits} times after {lower} lower actions"));
        }
    }
    let mut holding: std::collections::BTreeSet<u64> = Default::default();
    let mut last_action = None;
    let check = |last: Option<(u64, u64)>, holding: &std::collections::BTreeSet<u64>| match last {
        Some((1, s)) if holding.range(2..).next().is_some() => {
            Err(format!("a higher worker kept its constants after the action at stage {s}"))
        }
        _ => Ok(()),
    };
    for ev in &run.events {
        match ev {
            Event::Assign { worker, .. } => {
                holding.insert(*worker);
            }
            Event::Initiate { worker, .. } => {
                holding.remove(worker);
            }
            Event::Act { stage, worker } => {
                check(last_action, &holding)?;
                last_action = Some((*worker, *stage));
            }
            _ => {}
        }
    }
    check(last_action, &holding)?;
    let target = OrderTerm::sum([OrderTerm::w(), OrderTerm::fin(n), OrderTerm::w_star()]);
    let report = diagnose(&run, &target);
    let w1 = report.workers.iter().find(|w| w.worker == 1).ok_or("worker 1 never acted")?;
    match w1.stable_since {
        Some(s) if s < report.window_start && w1.actions_in_window > 0 => {
            Ok(format!("priority worker 1 stable from stage {s} over {stages} stages"))
        }
        _ => Err(format!("worker 1 not stable: {w1:?}")),
    }
}

/// Every 4-row table on chains 0 and 1 with witnesses below 3.
pub fn block_tables() -> Check {
    let rules = [
        YRule::Constant(Constant::All),
        YRule::Constant(Constant::None),
        YRule::Periodic { period: 2, holes: vec![] },
        YRule::Periodic { period: 2, holes: vec![0] },
        YRule::Periodic { period: 3, holes: vec![2] },
    ];
    let slots: Vec<(u64, u64)> = (0..2).flat_map(|n| (0..3).map(move |x| (n, x))).collect();
    let mut tables = 0usize;
    for mask in 0u32..(1 << slots.len()) {
        if mask.count_ones() != 4 {
            continue;
        }
        let chosen: Vec<(u64, u64)> = slots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, s)| *s).collect();
        for code in 0..rules.len().pow(4) {
            let rows = chosen
                .iter()
                .enumerate()
                .map(|(i, &(n, x))| Row { n, x, y_rule: rules[code / rules.len().pow(i as u32) % rules.len()].clone() })
                .collect();
            let table = RelationTable { rows };
            check_table(&table)?;
            tables += 1;
        }
    }
    Ok(format!("{tables} block tables"))
}

fn check_table(table: &RelationTable) -> std::result::Result<(), String> {
    let (count, stages) = (2, 40);
    let (run, _) = run_block_reduction(table, count, stages).map_err(|e| e.to_string())?;
    check_run(&run, run_block_reduction(table, count, stages).map(|r| r.0))?;
    let report = diagnose(&run, &OrderTerm::fin(1));
    for n in 0..count {
        // ∃x ∀y over one common period of every rule
        let in_s = (0..3).any(|x| (0..6).all(|y| table.holds(n, x, y)));
        let growing = report.regions.iter().any(|r| r.region == n && r.growing);
        if in_s == growing {
            return Err(format!("chain {n} growing={growing} but membership {in_s} for {table:?}"));
        }
    }
    Ok(())
}

/// `A1 ≤_k B1 ∧ A2 ≤_k B2 ⇒ A1+1+A2 ≤_k B1+1+B2` on seeded battery draws.
pub fn partition_composition(seed: u64, samples: usize) -> Check {
    let terms = battery();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut engine = BfEngine::new(Caps::default());
    let mut bad = Vec::new();
    let mut premised = 0;
    for _ in 0..samples {
        let k = rng.gen_range(0..=4);
        let pick = |rng: &mut ChaCha8Rng| {
            let a = rng.gen_range(0..terms.len());
            let b = if rng.gen_bool(0.5) { a } else { rng.gen_range(0..terms.len()) };
            (a, b)
        };
        let ((a1, b1), (a2, b2)) = (pick(&mut rng), pick(&mut rng));
        if !(engine.leq_terms(&terms[a1], &terms[b1], k) && engine.leq_terms(&terms[a2], &terms[b2], k)) {
            continue;
        }
        premised += 1;
        let join = |x: usize, y: usize| OrderTerm::sum([terms[x].clone(), OrderTerm::fin(1), terms[y].clone()]);
        if !engine.leq_terms(&join(a1, a2), &join(b1, b2), k) {
            bad.push(format!(
                "{}+1+{} <=_{k} {}+1+{}",
                RANK1_BATTERY[a1], RANK1_BATTERY[a2], RANK1_BATTERY[b1], RANK1_BATTERY[b2]
            ));
        }
    }
    failures(bad, samples, &format!("combinations hold (seed {seed}, {premised} with true premises)"))
}
