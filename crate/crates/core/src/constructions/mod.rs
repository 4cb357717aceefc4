//! Stage-by-stage simulators for the index-set reductions.

mod block;
mod diagnose;
mod pi3;
mod priority;
mod run;
mod schedule;
mod sigma3;

pub use block::{run_block_reduction, Constant, RelationTable, Row, YRule};
pub use diagnose::{diagnose, ConvergenceReport, RegionStats, Verdict, WorkerStats};
pub use pi3::{run_pi3_omega, run_pi3_omega_with};
pub use priority::{initiation_accounting, run_priority};
pub use run::{
    replay, ConstructionRun, Elem, Event, InsertionRule, RunKind, Sigma3Variant, WorkerState, MAX_RUN_ELEMENTS,
};
pub use schedule::{EnumerationFamily, Schedule};
pub use sigma3::run_sigma3_limit;
