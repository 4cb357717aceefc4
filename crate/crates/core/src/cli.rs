//! Command-line front end. `run` parses arguments and returns the exit code
//! with the text to print, so the binary stays a thin wrapper.

use crate::backforth::{cap_stability_check, iso_report, leq_bf, Caps, DEFAULT_MAX_RANK};
use crate::constructions::{
    diagnose, replay, run_block_reduction, run_pi3_omega_with, run_priority, run_sigma3_limit, ConstructionRun,
    EnumerationFamily, InsertionRule, RelationTable, Sigma3Variant, Verdict,
};
use crate::error::Error;
use crate::scott::{classify, scott_rank1};
use crate::selftest::{self, DEFAULT_SEED};
use crate::term::{blocks1, condense_iter, hausdorff_rank, parse_term, OrderTerm};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::path::{Path, PathBuf};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSTABLE: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "scattered", version, about = "Scattered linear orders of finite Hausdorff rank")]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hausdorff rank of a term.
    Rank { term: String },
    /// Block decomposition by ~k.
    Blocks {
        term: String,
        #[arg(long, default_value_t = 1)]
        level: u32,
    },
    /// Quotient by ~1, applied repeatedly.
    Condense {
        term: String,
        #[arg(long, default_value_t = 1)]
        iterations: u32,
    },
    /// Decide A ≤_k B by back-and-forth.
    Bf {
        a: String,
        b: String,
        #[arg(long)]
        level: u32,
        /// Copy index factor; indices at level k range up to N·2^k.
        #[arg(long, default_value_t = 2)]
        index_cap: u64,
        /// Tuple length factor; tuples at level k have at most N·2^k cuts.
        #[arg(long = "tuple-c")]
        tuple_c: Option<u64>,
        /// Re-decide under doubled caps and report whether the verdict is stable.
        #[arg(long)]
        stability: bool,
    },
    /// Decide A ≅ B.
    Iso { a: String, b: String },
    /// Scott sentence of an order of rank 1.
    Scott {
        term: String,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
    },
    /// Complexity of an optimal Scott sentence.
    Classify { term: String },
    /// Run a stage construction and diagnose its limit.
    Simulate {
        #[arg(value_enum)]
        construction: Construction,
        /// sigma3 variant: omega_plus_omega, omega_star_sq, omega_plus_zeta or zeta_plus_omega_star.
        #[arg(long)]
        variant: Option<String>,
        /// priority block size.
        #[arg(long)]
        n: Option<u64>,
        /// blockred relation table file.
        #[arg(long)]
        table: Option<PathBuf>,
        /// blockred chain count; defaults to one past the largest n in the table.
        #[arg(long)]
        count: Option<u64>,
        /// Schedule file for pi3, sigma3 and priority.
        #[arg(long)]
        family: Option<PathBuf>,
        #[arg(long)]
        stages: u64,
        /// Order type the limit is compared with.
        #[arg(long)]
        target: Option<String>,
        /// pi3: insert one element per interval instead of one per adjacent pair.
        #[arg(long)]
        sparse: bool,
    },
    /// Compare a decision procedure with brute force.
    Oracle {
        #[arg(value_enum)]
        which: Oracle,
        #[arg(long, default_value_t = 6)]
        max_size: u64,
        #[arg(long, default_value_t = 4)]
        max_level: u32,
    },
    /// Run the acceptance suites.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Run a single criterion (1 to 8).
        #[arg(long)]
        criterion: Option<u8>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Json,
    Tex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Pi3,
    Sigma3,
    Priority,
    Blockred,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Oracle {
    BfFinite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A command's result in both output modes.
struct Report {
    code: i32,
    json: Value,
    text: String,
}

enum Failure {
    Usage(String),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_TRUE };
            let msg = e.render().to_string();
            return if code == EXIT_TRUE {
                Outcome { code, stdout: msg, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: msg }
            };
        }
    };
    let json = cli.json;
    match dispatch(cli.command) {
        Ok(r) => {
            let stdout = if json { format!("{}\n", serde_json::to_string_pretty(&r.json).unwrap()) } else { r.text };
            Outcome { code: r.code, stdout, stderr: String::new() }
        }
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::Invariant(m) => (EXIT_INVARIANT, m),
            };
            let stdout = if json { format!("{}\n", json!({ "error": msg, "code": code })) } else { String::new() };
            Outcome { code, stdout, stderr: format!("error: {msg}\n") }
        }
    }
}

fn term(text: &str) -> Result<OrderTerm, Failure> {
    parse_term(text).map_err(|e| Failure::Usage(format!("{e} in {text:?}")))
}

fn verdict_code(b: bool) -> i32 {
    if b {
        EXIT_TRUE
    } else {
        EXIT_FALSE
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn dispatch(cmd: Command) -> Result<Report, Failure> {
    match cmd {
        Command::Rank { term: t } => {
            let t = term(&t)?;
            let rank = hausdorff_rank(&t);
            Ok(Report { code: EXIT_TRUE, json: json!({ "term": t.to_string(), "rank": rank }), text: format!("{rank}\n") })
        }
        Command::Blocks { term: t, level } => {
            if level == 0 {
                return Err(Failure::Usage("level must be at least 1".into()));
            }
            let t = term(&t)?;
            let form = blocks1(&condense_iter(&t, level - 1));
            Ok(Report {
                code: EXIT_TRUE,
                json: json!({ "term": t.to_string(), "level": level, "blocks": form, "atoms": form.atoms() }),
                text: format!("{form}\n"),
            })
        }
        Command::Condense { term: t, iterations } => {
            let t = term(&t)?;
            let c = condense_iter(&t, iterations);
            Ok(Report {
                code: EXIT_TRUE,
                json: json!({ "term": t.to_string(), "iterations": iterations, "result": c.to_string() }),
                text: format!("{c}\n"),
            })
        }
        Command::Bf { a, b, level, index_cap, tuple_c, stability } => {
            let (a, b) = (term(&a)?, term(&b)?);
            let caps = Caps { index_factor: index_cap, tuple_factor: tuple_c, ..Caps::default() };
            if stability {
                let r = cap_stability_check(&a, &b, level, &caps)?;
                let holds = r.result.holds;
                let mut value = serde_json::to_value(&r.result).unwrap();
                value["verdicts"] = json!(r.verdicts);
                let (code, text) = if r.stable {
                    (verdict_code(holds), format!("{holds} (stable under caps c, 2c, 4c)\n"))
                } else {
                    (EXIT_UNSTABLE, format!("unstable: verdicts {:?} under caps c, 2c, 4c\n", r.verdicts))
                };
                return Ok(Report { code, json: value, text });
            }
            let r = leq_bf(&a, &b, level, &caps)?;
            let mut text = format!("{}\n", r.holds);
            if let Some(w) = &r.witness {
                let parts: Vec<String> = w.intervals.iter().map(|i| i.to_string()).collect();
                text.push_str(&format!("witness: cut {b} into {}\n", parts.join(" | ")));
            }
            Ok(Report { code: verdict_code(r.holds), json: serde_json::to_value(&r).unwrap(), text })
        }
        Command::Iso { a, b } => {
            let (a, b) = (term(&a)?, term(&b)?);
            let r = iso_report(&a, &b, DEFAULT_MAX_RANK)?;
            Ok(Report {
                code: verdict_code(r.iso),
                json: json!({ "a": a.to_string(), "b": b.to_string(), "iso": r.iso, "rank": r.rank, "method": r.method }),
                text: format!("{}\n", r.iso),
            })
        }
        Command::Scott { term: t, format } => {
            let t = term(&t)?;
            let s = scott_rank1(&t)?;
            let value = serde_json::to_value(&s).unwrap();
            let text = match format {
                Format::Pretty => format!("{}\nclass: {}\n", s.formula.pretty(), s.claimed_class),
                Format::Tex => format!("{}\n", s.formula),
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&value).unwrap()),
            };
            Ok(Report { code: EXIT_TRUE, json: value, text })
        }
        Command::Classify { term: t } => {
            let t = term(&t)?;
            let r = classify(&t);
            let optimality = match r.optimal {
                Some(true) => "optimal",
                Some(false) => "not optimal",
                None => "optimality unknown",
            };
            Ok(Report {
                code: EXIT_TRUE,
                json: json!({
                    "term": t.to_string(),
                    "rank": r.rank,
                    "upper_bound": r.upper_bound.to_string(),
                    "optimal": r.optimal,
                    "simple": r.simple,
                    "rationale": r.rationale,
                }),
                text: format!("{} ({optimality})\n{}\n", r.upper_bound, r.rationale),
            })
        }
        Command::Simulate { construction, variant, n, table, count, family, stages, target, sparse } => {
            simulate(Simulation { construction, variant, n, table, count, family, stages, target, sparse })
        }
        Command::Oracle { which: Oracle::BfFinite, max_size, max_level } => {
            let result = selftest::oracle_equivalence(max_size, max_level);
            let (agree, detail) = match &result {
                Ok(d) => (true, d.clone()),
                Err(d) => (false, d.clone()),
            };
            Ok(Report {
                code: if agree { EXIT_TRUE } else { EXIT_INVARIANT },
                json: json!({ "max_size": max_size, "max_level": max_level, "agree": agree, "detail": detail }),
                text: format!("{}: {detail}\n", if agree { "agree" } else { "MISMATCH" }),
            })
        }
        Command::Selftest { seed, criterion } => {
            let outcomes = match criterion {
                Some(id) if (1..=8).contains(&id) => vec![selftest::run_criterion(id, seed)],
                Some(id) => return Err(Failure::Usage(format!("no criterion {id}, expected 1 to 8"))),
                None => selftest::run_all(seed),
            };
            let passed = outcomes.iter().all(|o| o.passed);
            let text: String = outcomes
                .iter()
                .map(|o| {
                    format!("criterion {} {}: {} ({})\n", o.id, if o.passed { "pass" } else { "FAIL" }, o.name, o.detail)
                })
                .collect();
            Ok(Report {
                code: if passed { EXIT_TRUE } else { EXIT_INVARIANT },
                json: json!({ "seed": seed, "passed": passed, "criteria": outcomes }),
                text,
            })
        }
    }
}

struct Simulation {
    construction: Construction,
    variant: Option<String>,
    n: Option<u64>,
    table: Option<PathBuf>,
    count: Option<u64>,
    family: Option<PathBuf>,
    stages: u64,
    target: Option<String>,
    sparse: bool,
}

fn simulate(sim: Simulation) -> Result<Report, Failure> {
    let family = || -> Result<EnumerationFamily, Failure> {
        let path = sim.family.as_ref().ok_or_else(|| Failure::Usage("--family is required".into()))?;
        Ok(EnumerationFamily::from_json(&read(path)?)?)
    };
    let w = OrderTerm::w;
    let (run, default_target, pairs): (ConstructionRun, Option<OrderTerm>, Option<Value>) = match sim.construction {
        Construction::Pi3 => {
            let rule = if sim.sparse { InsertionRule::OnePerInterval } else { InsertionRule::EveryPair };
            (run_pi3_omega_with(&family()?, sim.stages, rule)?, Some(w()), None)
        }
        Construction::Sigma3 => {
            let name = sim.variant.as_deref().ok_or_else(|| Failure::Usage("--variant is required".into()))?;
            let variant = Sigma3Variant::parse(name)?;
            let base = match variant.base() {
                Sigma3Variant::OmegaPlusOmega => w().plus(&w()),
                _ => w().plus(&OrderTerm::zeta()),
            };
            let target = if variant.mirrored() { base.reversed() } else { base };
            (run_sigma3_limit(&family()?, sim.stages, variant)?, Some(target), None)
        }
        Construction::Priority => {
            let n = sim.n.ok_or_else(|| Failure::Usage("--n is required".into()))?;
            let target = OrderTerm::sum([w(), OrderTerm::fin(n), OrderTerm::w_star()]);
            (run_priority(&family()?, n, sim.stages)?, Some(target), None)
        }
        Construction::Blockred => {
            let path = sim.table.as_ref().ok_or_else(|| Failure::Usage("--table is required".into()))?;
            let table = RelationTable::from_json(&read(path)?)?;
            let count = sim.count.unwrap_or_else(|| table.rows.iter().map(|r| r.n + 1).max().unwrap_or(1));
            let (run, pairs) = run_block_reduction(&table, count, sim.stages)?;
            (run, None, Some(serde_json::to_value(pairs).unwrap()))
        }
    };
    replay(&run).map_err(|e| Failure::Invariant(format!("run does not replay: {e}")))?;
    let target = match sim.target.as_deref() {
        Some(t) => Some(term(t)?),
        None => default_target,
    };
    let report = target.as_ref().map(|t| diagnose(&run, t));
    let mut value = serde_json::to_value(&run).unwrap();
    value["diagnosis"] = serde_json::to_value(&report).unwrap();
    value["target"] = json!(target.as_ref().map(|t| t.to_string()));
    if let Some(p) = pairs {
        value["pairs"] = p;
    }
    let shown: Vec<String> = run.order.iter().take(64).map(|e| e.to_string()).collect();
    let mut text = format!("stages: {}\nsize: {}\norder: {}", run.stages, run.order.len(), shown.join(" "));
    if run.order.len() > shown.len() {
        text.push_str(&format!(" ... ({} more)", run.order.len() - shown.len()));
    }
    text.push('\n');
    let code = match (&report, &target) {
        (Some(r), Some(t)) => {
            let verdict = serde_json::to_value(r.verdict).unwrap();
            text.push_str(&format!("target: {t}\nverdict: {}\n", verdict.as_str().unwrap()));
            if let Some(p) = &r.predicted {
                text.push_str(&format!("predicted: {p}\n"));
            }
            text.push_str(&format!("note: {}\n", r.note));
            verdict_code(r.verdict != Verdict::Diverging)
        }
        _ => EXIT_TRUE,
    };
    Ok(Report { code, json: value, text })
}
