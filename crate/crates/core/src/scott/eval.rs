use super::formula::{Builder, Formula};
use crate::error::{Error, Result};
use crate::term::OrderTerm;

pub const EVAL_MAX_SIZE: u64 = 12;

/// Truth of `f` in the finite order `m` (elements `0..|m|`) under `assignment`.
///
/// Schema connectives range over `n ≤ |m| + quantifier depth`, beyond which
/// every family in the catalog is constant on a finite order.
pub fn eval_finite(f: &Formula, m: &OrderTerm, assignment: &[(&str, usize)]) -> Result<bool> {
    let size = match m.size() {
        Some(s) if s <= EVAL_MAX_SIZE => s as usize,
        _ => {
            return Err(Error::SizeLimit(format!(
                "formulas are evaluated on finite orders of at most {EVAL_MAX_SIZE} elements"
            )))
        }
    };
    Evaluator::new(size, f, false).run(f, assignment)
}

pub(crate) struct Evaluator {
    size: usize,
    bound: usize,
    /// Expand every schema instance instead of deciding the family directly.
    literal: bool,
}

type Env<'a> = Vec<(&'a str, Option<usize>)>;

impl Evaluator {
    pub(crate) fn new(size: usize, f: &Formula, literal: bool) -> Self {
        Evaluator { size, bound: size + f.quantifier_depth(), literal }
    }

    pub(crate) fn run(&self, f: &Formula, assignment: &[(&str, usize)]) -> Result<bool> {
        for v in f.free_vars() {
            if !assignment.iter().any(|(a, _)| *a == v) {
                return Err(Error::UnboundVariable(v.to_string()));
            }
        }
        if assignment.iter().any(|&(_, e)| e >= self.size) {
            return Err(Error::InvalidPosition("assigned element outside the order".into()));
        }
        let mut env: Env = assignment.iter().map(|&(v, e)| (v, Some(e))).collect();
        Ok(self.eval(f, &mut env).expect("every free variable is assigned"))
    }

    fn lookup(env: &Env, v: &str) -> Option<usize> {
        env.iter().rev().find(|(name, _)| *name == v).and_then(|(_, e)| *e)
    }

    /// Kleene evaluation: `None` when the value depends on unassigned variables.
    fn eval<'a>(&self, f: &'a Formula, env: &mut Env<'a>) -> Option<bool> {
        match f {
            Formula::Lt { x, y } => Some(Self::lookup(env, x)? < Self::lookup(env, y)?),
            Formula::Eq { x, y } => Some(Self::lookup(env, x)? == Self::lookup(env, y)?),
            Formula::Not { f } => self.eval(f, env).map(|b| !b),
            Formula::And { fs } => self.connective(fs, env, false),
            Formula::Or { fs } => self.connective(fs, env, true),
            _ if env.iter().any(|(_, e)| e.is_none()) && self.depends_on_unknown(f, env) => None,
            Formula::SchemaOr { builder } => self.schema(builder, env, true),
            Formula::SchemaAnd { builder } => self.schema(builder, env, false),
            Formula::Exists { vars, f } => self.quantify(vars, f, env, true),
            Formula::Forall { vars, f } => self.quantify(vars, f, env, false),
        }
    }

    fn depends_on_unknown(&self, f: &Formula, env: &Env) -> bool {
        f.free_vars().into_iter().any(|v| Self::lookup(env, v).is_none())
    }

    /// Disjunction when `any`, conjunction otherwise.
    fn connective<'a>(&self, fs: &'a [Formula], env: &mut Env<'a>, any: bool) -> Option<bool> {
        let mut unknown = false;
        for g in fs {
            match self.eval(g, env) {
                Some(b) if b == any => return Some(any),
                Some(_) => {}
                None => unknown = true,
            }
        }
        if unknown {
            None
        } else {
            Some(!any)
        }
    }

    fn quantify<'a>(&self, vars: &'a [String], body: &'a Formula, env: &mut Env<'a>, any: bool) -> Option<bool> {
        if vars.is_empty() {
            return self.eval(body, env);
        }
        let base = env.len();
        env.extend(vars.iter().map(|v| (v.as_str(), None)));
        let r = self.assign(base, 0, vars.len(), body, env, any);
        env.truncate(base);
        r
    }

    fn assign<'a>(
        &self,
        base: usize,
        i: usize,
        len: usize,
        body: &'a Formula,
        env: &mut Env<'a>,
        any: bool,
    ) -> Option<bool> {
        let mut unknown = false;
        for e in 0..self.size {
            env[base + i].1 = Some(e);
            let r = match self.eval(body, env) {
                None if i + 1 < len => self.assign(base, i + 1, len, body, env, any),
                r => r,
            };
            match r {
                Some(b) if b == any => {
                    env[base + i].1 = None;
                    return Some(any);
                }
                Some(_) => {}
                None => unknown = true,
            }
        }
        env[base + i].1 = None;
        if unknown {
            None
        } else {
            Some(!any)
        }
    }

    fn schema<'a>(&self, b: &'a Builder, env: &mut Env<'a>, any: bool) -> Option<bool> {
        for n in 0..=self.bound {
            let r = if self.literal {
                let inst = b.instance(n);
                // instances are built afresh, so evaluate them with an owned environment
                let mut owned: Vec<(String, Option<usize>)> =
                    env.iter().map(|(v, e)| (v.to_string(), *e)).collect();
                let mut local: Env = owned.iter_mut().map(|(v, e)| (v.as_str(), *e)).collect();
                self.eval(&inst, &mut local)?
            } else {
                self.family(b, n, env)?
            };
            if r == any {
                return Some(any);
            }
        }
        Some(!any)
    }

    /// Instance `n` of a family decided directly. In a finite order every
    /// interval is finite, so `~_k` relates all elements for `k ≥ 1`.
    fn family(&self, b: &Builder, n: usize, env: &Env) -> Option<bool> {
        Some(match b {
            Builder::IntervalAtMost { x, y } => {
                let (x, y) = (Self::lookup(env, x)?, Self::lookup(env, y)?);
                x.abs_diff(y) < n
            }
            Builder::BlockCover { .. } => n >= 1,
            Builder::Chain { level: 0, two_sided } => {
                let needed = if *two_sided { 2 * n + 2 } else { n + 1 };
                needed <= self.size
            }
            Builder::Chain { two_sided, .. } => !*two_sided && n == 0 && self.size >= 1,
        })
    }
}
