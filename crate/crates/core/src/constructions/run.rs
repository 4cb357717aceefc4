use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet};
use std::fmt;

/// Runs stop growing past this many elements.
pub const MAX_RUN_ELEMENTS: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Elem {
    /// Backbone element `b_i`.
    Backbone(u64),
    /// Element inserted at a stage, numbered within the stage.
    Fresh(u64, u64),
    /// Pair-coded element `⟨a, b⟩`.
    Pair(u64, u64),
    /// Element `i` of the chain `C_n`.
    Block(u64, u64),
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Backbone(i) => write!(f, "b{i}"),
            Elem::Fresh(s, k) => write!(f, "f{s}.{k}"),
            Elem::Pair(a, b) => write!(f, "<{a},{b}>"),
            Elem::Block(n, i) => write!(f, "c{n}.{i}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InsertionRule {
    /// One fresh element between every adjacent pair of the interval.
    EveryPair,
    /// One fresh element at the end of the interval.
    OnePerInterval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sigma3Variant {
    OmegaPlusOmega,
    OmegaStarSq,
    OmegaPlusZeta,
    ZetaPlusOmegaStar,
}

impl Sigma3Variant {
    pub const ALL: [Sigma3Variant; 4] = [
        Sigma3Variant::OmegaPlusOmega,
        Sigma3Variant::OmegaStarSq,
        Sigma3Variant::OmegaPlusZeta,
        Sigma3Variant::ZetaPlusOmegaStar,
    ];

    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|v| v.name() == name)
            .ok_or_else(|| Error::UnknownVariant(name.to_string()))
    }

    pub fn name(self) -> &'static str {
        match self {
            Sigma3Variant::OmegaPlusOmega => "omega_plus_omega",
            Sigma3Variant::OmegaStarSq => "omega_star_sq",
            Sigma3Variant::OmegaPlusZeta => "omega_plus_zeta",
            Sigma3Variant::ZetaPlusOmegaStar => "zeta_plus_omega_star",
        }
    }

    /// Starred variants are order reversals of these.
    pub fn base(self) -> Self {
        match self {
            Sigma3Variant::OmegaStarSq => Sigma3Variant::OmegaPlusOmega,
            Sigma3Variant::ZetaPlusOmegaStar => Sigma3Variant::OmegaPlusZeta,
            v => v,
        }
    }

    pub fn mirrored(self) -> bool {
        self != self.base()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RunKind {
    Pi3Omega { rule: InsertionRule },
    Sigma3Limit { variant: Sigma3Variant },
    Priority { n: u64 },
    BlockReduction { count: u64 },
}

impl RunKind {
    fn mirrored(self) -> bool {
        matches!(self, RunKind::Sigma3Limit { variant } if variant.mirrored())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum Event {
    /// `elem` placed right after `after`, or first when `after` is absent.
    /// `region` is the interval or worker the insertion belongs to.
    Insert { stage: u64, elem: Elem, after: Option<Elem>, region: Option<u64> },
    Act { stage: u64, worker: u64 },
    Assign { stage: u64, worker: u64, constants: Vec<Elem> },
    Initiate { stage: u64, worker: u64, by: u64 },
    Refute { stage: u64, n: u64, witness: u64 },
}

impl Event {
    pub fn stage(&self) -> u64 {
        match self {
            Event::Insert { stage, .. }
            | Event::Act { stage, .. }
            | Event::Assign { stage, .. }
            | Event::Initiate { stage, .. }
            | Event::Refute { stage, .. } => *stage,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkerState {
    pub constants: Option<Vec<Elem>>,
    pub initiated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionRun {
    pub kind: RunKind,
    /// Number of stages simulated, stage 0 included.
    pub stages: u64,
    /// Elements in creation order.
    pub elements: Vec<Elem>,
    /// Elements from least to greatest.
    pub order: Vec<Elem>,
    pub events: Vec<Event>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<BTreeMap<u64, WorkerState>>,
}

impl ConstructionRun {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("runs serialize")
    }

    pub fn position(&self, e: Elem) -> Option<usize> {
        self.order.iter().position(|&o| o == e)
    }

    /// The order after stage `s`, rebuilt from the log.
    pub fn snapshot(&self, s: u64) -> Result<Vec<Elem>> {
        let mut b = Replayer::default();
        for ev in self.events.iter().take_while(|ev| ev.stage() <= s) {
            b.apply(ev)?;
        }
        Ok(b.finish(self.kind.mirrored()))
    }
}

#[derive(Default)]
struct Replayer {
    order: Vec<Elem>,
    seen: HashSet<Elem>,
    created: Vec<Elem>,
    workers: BTreeMap<u64, WorkerState>,
}

impl Replayer {
    fn apply(&mut self, ev: &Event) -> Result<()> {
        let bad = |m: String| Error::InvalidArgument(format!("log does not replay: {m}"));
        match ev {
            Event::Insert { elem, after, .. } => {
                if !self.seen.insert(*elem) {
                    return Err(bad(format!("{elem} inserted twice")));
                }
                let at = match after {
                    None => 0,
                    Some(a) => 1 + self.order.iter().position(|o| o == a).ok_or_else(|| bad(format!("{a} unknown")))?,
                };
                self.order.insert(at, *elem);
                self.created.push(*elem);
            }
            Event::Assign { worker, constants, .. } => {
                self.workers.insert(*worker, WorkerState { constants: Some(constants.clone()), initiated: false });
            }
            Event::Initiate { worker, .. } => {
                let w = self.workers.entry(*worker).or_default();
                w.constants = None;
                w.initiated = true;
            }
            Event::Act { .. } | Event::Refute { .. } => {}
        }
        Ok(())
    }

    fn finish(&self, mirrored: bool) -> Vec<Elem> {
        let mut order = self.order.clone();
        if mirrored {
            order.reverse();
        }
        order
    }
}

fn is_subsequence(small: &[Elem], big: &[Elem]) -> bool {
    let mut it = big.iter();
    small.iter().all(|e| it.any(|b| b == e))
}

/// Replays the log, checking that every stage embeds into the next and that
/// the final state matches the run.
pub fn replay(run: &ConstructionRun) -> Result<()> {
    let mirrored = run.kind.mirrored();
    let mut b = Replayer::default();
    let mut prev: Vec<Elem> = Vec::new();
    let mut events = run.events.iter().peekable();
    let mut last_stage = 0;
    for s in 0..run.stages {
        while let Some(ev) = events.next_if(|ev| ev.stage() <= s) {
            if ev.stage() < last_stage {
                return Err(Error::InvalidArgument("log stages are not monotone".into()));
            }
            last_stage = ev.stage();
            b.apply(ev)?;
        }
        let now = b.finish(mirrored);
        if !is_subsequence(&prev, &now) {
            return Err(Error::InvalidArgument(format!("stage {s} does not extend stage {}", s.saturating_sub(1))));
        }
        prev = now;
    }
    if events.next().is_some() {
        return Err(Error::InvalidArgument("log has events past the last stage".into()));
    }
    if prev != run.order || b.created != run.elements {
        return Err(Error::InvalidArgument("replayed order differs from the run".into()));
    }
    if let Some(workers) = &run.workers {
        let active = |m: &BTreeMap<u64, WorkerState>| -> BTreeMap<u64, Option<Vec<Elem>>> {
            m.iter().filter(|(_, w)| w.constants.is_some()).map(|(x, w)| (*x, w.constants.clone())).collect()
        };
        if active(workers) != active(&b.workers) {
            return Err(Error::InvalidArgument("replayed workers differ from the run".into()));
        }
    }
    Ok(())
}

/// Mutable run state shared by the simulators.
pub(crate) struct Recorder {
    pub(crate) stage: u64,
    pub(crate) order: Vec<Elem>,
    pub(crate) elements: Vec<Elem>,
    pub(crate) events: Vec<Event>,
}

impl Recorder {
    pub(crate) fn new() -> Self {
        Recorder { stage: 0, order: Vec::new(), elements: Vec::new(), events: Vec::new() }
    }

    pub(crate) fn pos(&self, e: Elem) -> usize {
        self.order.iter().position(|&o| o == e).expect("element is in the order")
    }

    pub(crate) fn insert_after(&mut self, elem: Elem, after: Option<Elem>, region: Option<u64>) -> Result<()> {
        if self.order.len() >= MAX_RUN_ELEMENTS {
            return Err(Error::SizeLimit(format!("run exceeds {MAX_RUN_ELEMENTS} elements")));
        }
        let at = after.map_or(0, |a| self.pos(a) + 1);
        self.order.insert(at, elem);
        self.elements.push(elem);
        self.events.push(Event::Insert { stage: self.stage, elem, after, region });
        Ok(())
    }

    pub(crate) fn insert_before(&mut self, elem: Elem, before: Elem, region: Option<u64>) -> Result<()> {
        let p = self.pos(before);
        let after = p.checked_sub(1).map(|i| self.order[i]);
        self.insert_after(elem, after, region)
    }

    pub(crate) fn push_back(&mut self, elem: Elem, region: Option<u64>) -> Result<()> {
        let after = self.order.last().copied();
        self.insert_after(elem, after, region)
    }

    pub(crate) fn log(&mut self, ev: Event) {
        self.events.push(ev);
    }

    pub(crate) fn finish(self, kind: RunKind, stages: u64, workers: Option<BTreeMap<u64, WorkerState>>) -> ConstructionRun {
        let mut order = self.order;
        if kind.mirrored() {
            order.reverse();
        }
        ConstructionRun { kind, stages, elements: self.elements, order, events: self.events, workers }
    }
}
