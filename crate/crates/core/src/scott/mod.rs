//! Infinitary formulas, Scott sentences for orders of rank 1, and the
//! complexity of optimal Scott sentences.

mod eval;
mod formula;
mod generators;

pub use eval::{eval_finite, EVAL_MAX_SIZE};
pub use formula::{
    and, between, classify_complexity, eq, exists, forall, implies, le, lt, not, or, sim, truth, Builder,
    ComplexityClass, Formula, Var,
};
pub use generators::{make_phi_l, make_phi_m, make_phi_r, make_successor, phi_ax, sim_formula, simple_axioms};

use crate::backforth::iso;
use crate::error::{Error, Result};
use crate::term::{blocks1, hausdorff_rank, is_simple, BlockAtom, OrderTerm};
use formula::{indexed, pairs};
use generators::successor;
use serde::{Deserialize, Serialize};
use ComplexityClass::{DSigma, Pi};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScottSentence {
    pub formula: Formula,
    /// 1-block form of the order the sentence describes.
    pub metadata: Option<Vec<BlockAtom>>,
    pub claimed_class: ComplexityClass,
}

impl ScottSentence {
    /// The order described, rebuilt from the block form.
    pub fn source(&self) -> Result<OrderTerm> {
        let atoms = self.metadata.as_ref().ok_or(Error::MissingMetadata)?;
        Ok(OrderTerm::sum(atoms.iter().map(|a| a.to_term())))
    }
}

fn rank_one_blocks(t: &OrderTerm) -> Result<Vec<BlockAtom>> {
    match hausdorff_rank(t) {
        1 => Ok(blocks1(t).atoms().expect("rank 1 has finitely many blocks")),
        r => Err(Error::NotRankOne(r)),
    }
}

/// `x_i ≁_1 x_j ∧ x_i < x_j` for all `i < j`.
fn distinct_blocks(xs: &[String]) -> Vec<Formula> {
    pairs(xs.len())
        .flat_map(|(i, j)| [not(sim(1, &xs[i], &xs[j])), lt(&xs[i], &xs[j])])
        .collect()
}

/// At most `n` 1-blocks.
fn at_most_blocks(n: usize) -> Formula {
    let xs = indexed("x", 0..=n);
    forall(&xs, or(pairs(n + 1).map(|(i, j)| sim(1, &xs[i], &xs[j])).collect()))
}

fn is_first(x: &str) -> Formula {
    forall(&["y"], not(lt("y", x)))
}

fn is_last(x: &str) -> Formula {
    forall(&["y"], not(lt(x, "y")))
}

fn infinite() -> Formula {
    Formula::SchemaAnd { builder: Builder::Chain { level: 0, two_sided: false } }
}

/// The `d-Σ_3` sentence: some tuple from distinct blocks has the local
/// shape of each block, every such tuple has the right unbounded sides, and
/// there are no further blocks.
fn dsigma3_sentence(blocks: &[BlockAtom]) -> Result<Formula> {
    let n = blocks.len();
    let xs = indexed("x", 1..=n);
    let mut psi = distinct_blocks(&xs);
    let mut phi = Vec::new();
    for (b, x) in blocks.iter().zip(&xs) {
        let (p, q) = match *b {
            BlockAtom::W => (make_phi_r(x), not(make_phi_l(x))),
            BlockAtom::Wstar => (make_phi_l(x), not(make_phi_r(x))),
            BlockAtom::Z => (and(vec![make_phi_r(x), make_phi_l(x)]), eq(x, x)),
            BlockAtom::F(m) => (eq(x, x), make_phi_m(m as usize, x)?),
        };
        phi.push(p);
        psi.push(q);
    }
    Ok(and(vec![
        exists(&xs, and(psi)),
        forall(&xs, implies(and(distinct_blocks(&xs)), and(phi))),
        at_most_blocks(n),
        phi_ax(),
    ]))
}

/// A `Π_3` sentence for `ω`, `ω*`, `ω+ω*` and `m+ζ+n`, or `None` for
/// other block forms.
fn pi3_sentence(blocks: &[BlockAtom]) -> Result<Option<Formula>> {
    use BlockAtom::*;
    let has_first = exists(&["x"], is_first("x"));
    let has_last = exists(&["x"], is_last("x"));
    let mut parts = vec![phi_ax(), at_most_blocks(blocks.len())];
    match blocks {
        [W] => parts.extend([
            has_first,
            forall(&["x"], exists(&["y"], successor("x", "y"))),
        ]),
        [Wstar] => parts.extend([
            has_last,
            forall(&["x"], exists(&["y"], successor("y", "x"))),
        ]),
        [W, Wstar] => parts.extend([
            has_first,
            has_last,
            forall(&["x"], implies(is_first("x"), make_phi_r("x"))),
            forall(&["x"], implies(is_last("x"), make_phi_l("x"))),
        ]),
        _ => {
            let (m, n) = match blocks {
                [Z] => (0, 0),
                [F(m), Z] => (*m, 0),
                [Z, F(n)] => (0, *n),
                [F(m), Z, F(n)] => (*m, *n),
                _ => return Ok(None),
            };
            parts.push(infinite());
            // every element outside the finite end blocks lies in a ζ-block
            let mut placed = vec![and(vec![make_phi_r("x"), make_phi_l("x")])];
            if m > 0 {
                parts.push(has_first);
                parts.push(forall(&["x"], implies(is_first("x"), make_phi_m(m as usize, "x")?)));
                placed.push(exists(&["u"], and(vec![is_first("u"), sim(1, "u", "x")])));
            } else {
                parts.push(forall(&["x"], exists(&["y"], lt("y", "x"))));
            }
            if n > 0 {
                parts.push(has_last);
                parts.push(forall(&["x"], implies(is_last("x"), make_phi_m(n as usize, "x")?)));
                placed.push(exists(&["u"], and(vec![is_last("u"), sim(1, "u", "x")])));
            } else {
                parts.push(forall(&["x"], exists(&["y"], lt("x", "y"))));
            }
            parts.push(forall(&["x"], or(placed)));
        }
    }
    Ok(Some(and(parts)))
}

/// Scott sentence of an order of rank 1, in its least complexity.
pub fn scott_rank1(t: &OrderTerm) -> Result<ScottSentence> {
    let blocks = rank_one_blocks(t)?;
    if classify(t).upper_bound == Pi(3) {
        if let Some(f) = pi3_sentence(&blocks)? {
            if classify_complexity(&f) == Pi(3) {
                return Ok(ScottSentence { formula: f, metadata: Some(blocks), claimed_class: Pi(3) });
            }
        }
    }
    let formula = dsigma3_sentence(&blocks)?;
    Ok(ScottSentence { formula, metadata: Some(blocks), claimed_class: DSigma(3) })
}

/// Whether the order `u` satisfies the sentence, i.e. is isomorphic to the
/// order the sentence was generated from.
pub fn sat_scott(s: &ScottSentence, u: &OrderTerm) -> Result<bool> {
    iso(&s.source()?, u)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityReport {
    pub rank: u32,
    pub upper_bound: ComplexityClass,
    /// `Some(true)` when no simpler Scott sentence exists, `None` when unknown.
    pub optimal: Option<bool>,
    pub simple: bool,
    pub rationale: String,
}

/// Intervals of a rank-1 order that force a `d-Σ_3` Scott sentence, found as
/// patterns of adjacent blocks.
fn hard_interval(blocks: &[BlockAtom]) -> Option<String> {
    use BlockAtom::*;
    let right_omega = |b: &BlockAtom| matches!(b, W | Z);
    let left_omega_star = |b: &BlockAtom| matches!(b, Wstar | Z);
    for w in blocks.windows(2) {
        let found = match (&w[0], &w[1]) {
            (a, W) if right_omega(a) => "ω+ω",
            (Wstar, b) if left_omega_star(b) => "ω*+ω*",
            (a, Z) if right_omega(a) => "ω+ζ",
            (Z, b) if left_omega_star(b) => "ζ+ω*",
            _ => continue,
        };
        return Some(found.to_string());
    }
    for w in blocks.windows(3) {
        if let (a, F(n), c) = (&w[0], &w[1], &w[2]) {
            if right_omega(a) && left_omega_star(c) {
                return Some(format!("ω+{n}+ω*"));
            }
        }
    }
    None
}

fn pi3_shape(blocks: &[BlockAtom]) -> bool {
    use BlockAtom::*;
    matches!(blocks, [W] | [Wstar] | [W, Wstar] | [Z] | [F(_), Z] | [Z, F(_)] | [F(_), Z, F(_)])
}

/// Bound on the complexity of an optimal Scott sentence of `t`.
pub fn classify(t: &OrderTerm) -> ComplexityReport {
    let rank = hausdorff_rank(t);
    let simple = rank > 0 && is_simple(t).map(|r| r.simple).unwrap_or(false);
    let report = |upper_bound, optimal, rationale: String| ComplexityReport {
        rank,
        upper_bound,
        optimal,
        simple,
        rationale,
    };
    match rank {
        0 => {
            let n = t.size().expect("rank 0 is finite");
            if n == 0 {
                report(DSigma(1), Some(false), "empty order: no elements is already Π_1".into())
            } else {
                report(
                    DSigma(1),
                    Some(true),
                    format!("finite order: at least {n} and at most {n} elements"),
                )
            }
        }
        1 => {
            let blocks = rank_one_blocks(t).expect("rank 1");
            if let Some(interval) = hard_interval(&blocks) {
                report(DSigma(3), Some(true), format!("contains an interval of type {interval}"))
            } else if pi3_shape(&blocks) {
                report(Pi(3), Some(true), "simple or of the form m+ζ+n".into())
            } else {
                report(
                    DSigma(3),
                    None,
                    "rank 1 bound; whether a Π_3 sentence exists is open".into(),
                )
            }
        }
        a if simple => report(Pi(2 * a + 1), None, format!("simple of rank {a}")),
        a => report(DSigma(2 * a + 1), None, format!("rank {a} bound")),
    }
}
