use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Stages at which a new element enters `W_x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Schedule {
    Finite(Vec<u64>),
    Periodic { start: u64, period: u64 },
}

impl Schedule {
    pub fn fires(&self, stage: u64) -> bool {
        match self {
            Schedule::Finite(v) => v.binary_search(&stage).is_ok(),
            Schedule::Periodic { start, period } => stage >= *start && (stage - start) % period == 0,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Schedule::Periodic { .. })
    }

    /// Nothing enters at stage 0, since only `y < s` may enter by stage `s`.
    pub fn validate(&self) -> Result<()> {
        match self {
            Schedule::Finite(v) => {
                if v.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::ScheduleViolation("finite schedule must be strictly increasing".into()));
                }
                if v.first() == Some(&0) {
                    return Err(Error::ScheduleViolation("no element can enter at stage 0".into()));
                }
            }
            Schedule::Periodic { start, period } => {
                if *period == 0 {
                    return Err(Error::ScheduleViolation("period must be at least 1".into()));
                }
                if *start == 0 {
                    return Err(Error::ScheduleViolation("no element can enter at stage 0".into()));
                }
            }
        }
        Ok(())
    }
}

/// Schedules per parameter `x`; a missing parameter never fires.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationFamily {
    pub schedules: BTreeMap<u64, Schedule>,
}

impl EnumerationFamily {
    pub fn new(schedules: impl IntoIterator<Item = (u64, Schedule)>) -> Self {
        EnumerationFamily { schedules: schedules.into_iter().collect() }
    }

    pub fn fires(&self, x: u64, stage: u64) -> bool {
        self.schedules.get(&x).is_some_and(|s| s.fires(stage))
    }

    /// Parameters with a new element at `stage`, in increasing order.
    pub fn firing(&self, stage: u64) -> impl Iterator<Item = u64> + '_ {
        self.schedules.iter().filter(move |(_, s)| s.fires(stage)).map(|(x, _)| *x)
    }

    pub fn validate(&self) -> Result<()> {
        self.schedules.values().try_for_each(Schedule::validate)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let family: EnumerationFamily = serde_json::from_str(text)?;
        family.validate()?;
        Ok(family)
    }
}
