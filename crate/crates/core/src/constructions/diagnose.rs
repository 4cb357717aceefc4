use super::run::{ConstructionRun, Event, RunKind, Sigma3Variant};
use crate::backforth::iso;
use crate::term::OrderTerm;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ConsistentWithTarget,
    Diverging,
    Inconclusive,
}

/// Growth of one interval, chain or worker region, from the log.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionStats {
    pub region: u64,
    pub inserted: u64,
    pub inserted_in_window: u64,
    pub last_growth: Option<u64>,
    pub growing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkerStats {
    pub worker: u64,
    pub actions: u64,
    pub actions_in_window: u64,
    pub initiations: u64,
    /// Stage of the last assignment of constants still held at the end.
    pub stable_since: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    /// First stage of the late window in which growth counts as ongoing.
    pub window_start: u64,
    pub size: u64,
    pub regions: Vec<RegionStats>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub workers: Vec<WorkerStats>,
    /// Limit type suggested by the growth pattern, if any.
    pub predicted: Option<String>,
    pub verdict: Verdict,
    pub note: String,
}

/// Compares the limit suggested by the log with `target`. Regions still
/// growing in the second half of the run are taken to grow forever.
pub fn diagnose(run: &ConstructionRun, target: &OrderTerm) -> ConvergenceReport {
    let window_start = run.stages / 2;
    let mut regions: BTreeMap<u64, RegionStats> = BTreeMap::new();
    for ev in &run.events {
        if let Event::Insert { stage, region: Some(x), .. } = ev {
            let r = regions.entry(*x).or_insert(RegionStats {
                region: *x,
                inserted: 0,
                inserted_in_window: 0,
                last_growth: None,
                growing: false,
            });
            if *stage == 0 {
                continue;
            }
            r.inserted += 1;
            r.last_growth = Some(*stage);
            if *stage >= window_start {
                r.inserted_in_window += 1;
                r.growing = true;
            }
        }
    }
    let mut report = ConvergenceReport {
        window_start,
        size: run.order.len() as u64,
        regions: regions.into_values().collect(),
        workers: Vec::new(),
        predicted: None,
        verdict: Verdict::Inconclusive,
        note: String::new(),
    };
    if run.stages < 2 {
        report.note = "too few stages".into();
        return report;
    }
    let growing = report.regions.iter().filter(|r| r.growing).count() as u64;
    let w = OrderTerm::w;
    let predicted = match run.kind {
        RunKind::Pi3Omega { .. } => {
            if growing > 0 {
                report.note = format!("{growing} interval(s) still gaining elements, dense in the limit");
                report.verdict = Verdict::Diverging;
                return report;
            }
            report.note = "every interval has stopped growing".into();
            w()
        }
        RunKind::Sigma3Limit { variant } => {
            report.note = format!("{growing} growing gap(s), each a limit-point candidate");
            let gap = match variant.base() {
                Sigma3Variant::OmegaPlusOmega => w(),
                _ => w().plus(&OrderTerm::w_star()),
            };
            let t = OrderTerm::sum((0..growing).map(|_| gap.clone()).chain([w()]));
            if variant.mirrored() {
                t.reversed()
            } else {
                t
            }
        }
        RunKind::Priority { n } => match priority(run, &mut report) {
            Some(true) => OrderTerm::sum([w(), OrderTerm::fin(n), OrderTerm::w_star()]),
            Some(false) => {
                let shape = OrderTerm::sum([w(), OrderTerm::fin(n), OrderTerm::w_star()]);
                report.verdict = match iso(&shape, target) {
                    Ok(true) => Verdict::Diverging,
                    _ => Verdict::Inconclusive,
                };
                return report;
            }
            None => return report,
        },
        RunKind::BlockReduction { count } => {
            let mut parts: Vec<OrderTerm> = (0..count)
                .map(|n| match report.regions.iter().find(|r| r.region == n) {
                    Some(r) if r.growing => w(),
                    Some(r) => OrderTerm::fin(1 + r.inserted),
                    None => OrderTerm::fin(1),
                })
                .collect();
            parts.push(OrderTerm::fin(1));
            report.note = format!("{growing} chain(s) still growing");
            OrderTerm::sum(parts)
        }
    };
    report.predicted = Some(predicted.to_string());
    report.verdict = match iso(&predicted, target) {
        Ok(true) => Verdict::ConsistentWithTarget,
        Ok(false) => Verdict::Diverging,
        Err(e) => {
            report.note = format!("cannot compare with the target: {e}");
            Verdict::Inconclusive
        }
    };
    report
}

/// Fills worker statistics. `Some(true)` when one worker kept its constants
/// since before the window and keeps acting, `Some(false)` when no worker
/// does, `None` when nobody acted.
fn priority(run: &ConstructionRun, report: &mut ConvergenceReport) -> Option<bool> {
    let mut stats: BTreeMap<u64, WorkerStats> = BTreeMap::new();
    fn entry(m: &mut BTreeMap<u64, WorkerStats>, x: u64) -> &mut WorkerStats {
        m.entry(x)
            .or_insert(WorkerStats { worker: x, actions: 0, actions_in_window: 0, initiations: 0, stable_since: None })
    }
    for ev in &run.events {
        match ev {
            Event::Act { stage, worker } => {
                let s = entry(&mut stats, *worker);
                s.actions += 1;
                if *stage >= report.window_start {
                    s.actions_in_window += 1;
                }
            }
            Event::Assign { stage, worker, .. } => entry(&mut stats, *worker).stable_since = Some(*stage),
            Event::Initiate { worker, .. } => {
                let s = entry(&mut stats, *worker);
                s.initiations += 1;
                s.stable_since = None;
            }
            _ => {}
        }
    }
    report.workers = stats.into_values().collect();
    if report.workers.iter().all(|w| w.actions == 0) {
        report.note = "no worker acted".into();
        return None;
    }
    let holder = report.workers.iter().find(|w| w.stable_since.is_some());
    match holder {
        Some(h) if h.stable_since.unwrap() < report.window_start && h.actions_in_window > 0 => {
            report.note = format!("worker {} holds its block since stage {} and keeps acting", h.worker, h.stable_since.unwrap());
            Some(true)
        }
        _ => {
            report.note = "no worker holds its block through the window while acting".into();
            Some(false)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::*;
    use crate::term::parse_term;

    fn periodic(x: u64) -> EnumerationFamily {
        EnumerationFamily::new([(x, Schedule::Periodic { start: 1, period: 1 })])
    }

    fn finite() -> EnumerationFamily {
        EnumerationFamily::new([(0, Schedule::Finite(vec![1, 3])), (4, Schedule::Finite(vec![2, 5]))])
    }

    fn t(s: &str) -> OrderTerm {
        parse_term(s).unwrap()
    }

    #[test]
    fn pi3() {
        let run = run_pi3_omega(&finite(), 12).unwrap();
        assert_eq!(diagnose(&run, &t("w")).verdict, Verdict::ConsistentWithTarget);
        let run = run_pi3_omega(&periodic(1), 8).unwrap();
        assert_eq!(diagnose(&run, &t("w")).verdict, Verdict::Diverging);
    }

    #[test]
    fn sigma3() {
        let run = run_sigma3_limit(&periodic(2), 20, Sigma3Variant::OmegaPlusOmega).unwrap();
        let rep = diagnose(&run, &t("w+w"));
        assert_eq!(rep.regions.iter().filter(|r| r.growing).count(), 1);
        assert_eq!(rep.verdict, Verdict::ConsistentWithTarget);
        assert_eq!(diagnose(&run, &t("w")).verdict, Verdict::Diverging);
        let run = run_sigma3_limit(&finite(), 20, Sigma3Variant::OmegaPlusOmega).unwrap();
        assert_eq!(diagnose(&run, &t("w")).verdict, Verdict::ConsistentWithTarget);
        let cases = [
            (Sigma3Variant::OmegaStarSq, "w*+w*"),
            (Sigma3Variant::OmegaPlusZeta, "w+z"),
            (Sigma3Variant::ZetaPlusOmegaStar, "z+w*"),
        ];
        for (v, target) in cases {
            let run = run_sigma3_limit(&periodic(2), 20, v).unwrap();
            assert_eq!(diagnose(&run, &t(target)).verdict, Verdict::ConsistentWithTarget, "{target}");
        }
    }

    #[test]
    fn priority() {
        let target = t("w+2+w*");
        let empty = run_priority(&EnumerationFamily::default(), 2, 30).unwrap();
        assert_eq!(diagnose(&empty, &target).verdict, Verdict::Inconclusive);
        let run = run_priority(&periodic(1), 2, 50).unwrap();
        let rep = diagnose(&run, &target);
        assert_eq!(rep.verdict, Verdict::ConsistentWithTarget);
        assert_eq!(rep.workers[0].stable_since, Some(1));
        let run = run_priority(&finite(), 2, 30).unwrap();
        assert_eq!(diagnose(&run, &target).verdict, Verdict::Diverging);
    }

    #[test]
    fn block_reduction() {
        let table = RelationTable::from_json(r#"{"rows": [{"n": 0, "x": 2, "y_rule": "all"}]}"#).unwrap();
        let (run, _) = run_block_reduction(&table, 2, 30).unwrap();
        let rep = diagnose(&run, &t("3+w+1"));
        assert_eq!(rep.verdict, Verdict::ConsistentWithTarget);
        assert!(!rep.regions[0].growing && rep.regions[1].growing);
    }
}
