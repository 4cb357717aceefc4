use super::run::{ConstructionRun, Elem, Event, Recorder, RunKind};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Constant {
    All,
    None,
}

/// Which `y` satisfy `R(n, x, y)` for one row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum YRule {
    Constant(Constant),
    Periodic { period: u64, holes: Vec<u64> },
}

impl YRule {
    pub fn holds(&self, y: u64) -> bool {
        match self {
            YRule::Constant(c) => *c == Constant::All,
            YRule::Periodic { period, holes } => !holes.contains(&(y % period)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub n: u64,
    pub x: u64,
    pub y_rule: YRule,
}

/// `R(n, x, y)` by table lookup; absent `(n, x)` rows are false.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTable {
    pub rows: Vec<Row>,
}

impl RelationTable {
    pub fn from_json(text: &str) -> Result<Self> {
        let t: RelationTable = serde_json::from_str(text).map_err(|e| Error::MalformedTable(e.to_string()))?;
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = std::collections::HashSet::new();
        for row in &self.rows {
            if !seen.insert((row.n, row.x)) {
                return Err(Error::MalformedTable(format!("duplicate row n={} x={}", row.n, row.x)));
            }
            if let YRule::Periodic { period, holes } = &row.y_rule {
                if *period == 0 {
                    return Err(Error::MalformedTable("period must be at least 1".into()));
                }
                if holes.iter().any(|h| h >= period) {
                    return Err(Error::MalformedTable("holes must lie below the period".into()));
                }
            }
        }
        Ok(())
    }

    pub fn holds(&self, n: u64, x: u64, y: u64) -> bool {
        self.rows.iter().find(|r| r.n == n && r.x == x).is_some_and(|r| r.y_rule.holds(y))
    }

    /// `∃x ∀y R(n, x, y)`.
    pub fn in_s(&self, n: u64) -> bool {
        self.rows.iter().any(|r| {
            r.n == n
                && match &r.y_rule {
                    YRule::Constant(c) => *c == Constant::All,
                    YRule::Periodic { holes, .. } => holes.is_empty(),
                }
        })
    }
}

/// Chains `C_0, …, C_{N-1}` followed by a closing marker `c_N`. Chain `C_n`
/// grows by one element each time its current witness `x` is refuted, and
/// stays put while the witness survives. Returns the run with the marker
/// pairs `(c_n, c_{n+1})`.
pub fn run_block_reduction(
    table: &RelationTable,
    count: u64,
    stages: u64,
) -> Result<(ConstructionRun, Vec<(Elem, Elem)>)> {
    table.validate()?;
    let mut r = Recorder::new();
    for n in 0..=count {
        r.push_back(Elem::Block(n, 0), if n < count { Some(n) } else { None })?;
    }
    let mut state: BTreeMap<u64, (u64, u64, u64)> = (0..count).map(|n| (n, (0, 0, 1))).collect();
    for s in 1..stages {
        r.stage = s;
        for n in 0..count {
            let (x, y, len) = state[&n];
            if table.holds(n, x, y) {
                state.insert(n, (x, y + 1, len));
                continue;
            }
            r.log(Event::Refute { stage: s, n, witness: x });
            r.insert_after(Elem::Block(n, len), Some(Elem::Block(n, len - 1)), Some(n))?;
            state.insert(n, (x + 1, 0, len + 1));
        }
    }
    let pairs = (0..count).map(|n| (Elem::Block(n, 0), Elem::Block(n + 1, 0))).collect();
    Ok((r.finish(RunKind::BlockReduction { count }, stages, None), pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::replay;

    fn chain_len(run: &ConstructionRun, n: u64) -> usize {
        run.order.iter().filter(|e| matches!(e, Elem::Block(m, _) if *m == n)).count()
    }

    #[test]
    fn freeze_and_grow() {
        let t = RelationTable::from_json(
            r#"{"rows": [{"n": 0, "x": 2, "y_rule": "all"},
                         {"n": 1, "x": 0, "y_rule": {"period": 3, "holes": [0]}},
                         {"n": 1, "x": 1, "y_rule": {"period": 3, "holes": [1]}},
                         {"n": 1, "x": 2, "y_rule": {"period": 3, "holes": [2]}}]}"#,
        )
        .unwrap();
        assert!(t.in_s(0) && !t.in_s(1));
        let (run, pairs) = run_block_reduction(&t, 2, 40).unwrap();
        replay(&run).unwrap();
        // C_0 refutes x = 0 and x = 1 once each, then x = 2 survives
        assert_eq!(chain_len(&run, 0), 3);
        assert!(chain_len(&run, 1) > 10);
        assert_eq!(pairs, vec![(Elem::Block(0, 0), Elem::Block(1, 0)), (Elem::Block(1, 0), Elem::Block(2, 0))]);
        let last = run.events.iter().filter_map(|e| match e {
            Event::Refute { stage, n: 0, .. } => Some(*stage),
            _ => None,
        });
        assert_eq!(last.max(), Some(2));
    }

    #[test]
    fn malformed() {
        for bad in [
            r#"{"rows": [{"n": 0, "x": 0, "y_rule": {"period": 0, "holes": []}}]}"#,
            r#"{"rows": [{"n": 0, "x": 0, "y_rule": {"period": 2, "holes": [2]}}]}"#,
            r#"{"rows": [{"n": 0, "x": 0, "y_rule": "all"}, {"n": 0, "x": 0, "y_rule": "none"}]}"#,
            r#"{"rows": [{"n": 0, "x": 0, "y_rule": "some"}]}"#,
            r#"{"rows": 3}"#,
        ] {
            assert!(matches!(RelationTable::from_json(bad), Err(Error::MalformedTable(_))), "{bad}");
        }
    }
}
