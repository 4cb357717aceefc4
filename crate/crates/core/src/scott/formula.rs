use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

pub type Var = String;

/// Infinitary formulas in the language `{<}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Formula {
    Lt { x: Var, y: Var },
    Eq { x: Var, y: Var },
    Not { f: Box<Formula> },
    And { fs: Vec<Formula> },
    Or { fs: Vec<Formula> },
    /// `⋀_{n ∈ ω} builder(n)`
    SchemaAnd { builder: Builder },
    /// `⋁_{n ∈ ω} builder(n)`
    SchemaOr { builder: Builder },
    Exists { vars: Vec<Var>, f: Box<Formula> },
    Forall { vars: Vec<Var>, f: Box<Formula> },
}

/// Parametrized formula families indexed by `n ∈ ω`.
///
/// Each family binds its own variables under a reserved prefix, so instances
/// never capture the parameters they are given.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Builder {
    /// The closed interval between `x` and `y` has at most `n` elements.
    IntervalAtMost { x: Var, y: Var },
    /// The closed interval between `x` and `y` meets at most `n` classes of `~_level`.
    BlockCover { level: u32, x: Var, y: Var },
    /// There are `x_0 < … < x_n` with consecutive elements in distinct
    /// `~_level` classes; two-sided chains continue with `x'_n < … < x'_0`.
    Chain { level: u32, two_sided: bool },
}

pub fn lt(x: &str, y: &str) -> Formula {
    Formula::Lt { x: x.into(), y: y.into() }
}

pub fn eq(x: &str, y: &str) -> Formula {
    Formula::Eq { x: x.into(), y: y.into() }
}

pub fn not(f: Formula) -> Formula {
    Formula::Not { f: Box::new(f) }
}

pub fn and(fs: Vec<Formula>) -> Formula {
    Formula::And { fs }
}

pub fn or(fs: Vec<Formula>) -> Formula {
    Formula::Or { fs }
}

pub fn implies(a: Formula, b: Formula) -> Formula {
    or(vec![not(a), b])
}

pub fn le(x: &str, y: &str) -> Formula {
    or(vec![lt(x, y), eq(x, y)])
}

/// `z` lies in the closed interval between `x` and `y`.
pub fn between(z: &str, x: &str, y: &str) -> Formula {
    or(vec![and(vec![le(x, z), le(z, y)]), and(vec![le(y, z), le(z, x)])])
}

pub fn exists<S: AsRef<str>>(vars: &[S], f: Formula) -> Formula {
    Formula::Exists { vars: vars.iter().map(|v| v.as_ref().to_string()).collect(), f: Box::new(f) }
}

pub fn forall<S: AsRef<str>>(vars: &[S], f: Formula) -> Formula {
    Formula::Forall { vars: vars.iter().map(|v| v.as_ref().to_string()).collect(), f: Box::new(f) }
}

pub fn truth() -> Formula {
    and(Vec::new())
}

/// `x ~_k y`. Level 0 is equality.
pub fn sim(k: u32, x: &str, y: &str) -> Formula {
    match k {
        0 => eq(x, y),
        1 => Formula::SchemaOr { builder: Builder::IntervalAtMost { x: x.into(), y: y.into() } },
        _ => Formula::SchemaOr { builder: Builder::BlockCover { level: k - 1, x: x.into(), y: y.into() } },
    }
}

pub(crate) fn indexed(base: &str, range: std::ops::RangeInclusive<usize>) -> Vec<Var> {
    range.map(|i| format!("{base}_{i}")).collect()
}

impl Builder {
    pub fn instance(&self, n: usize) -> Formula {
        match self {
            Builder::IntervalAtMost { x, y } => {
                let c = indexed("c", 0..=n);
                let inside = and(c.iter().map(|ci| between(ci, x, y)).collect());
                let repeat = or(pairs(n + 1).map(|(i, j)| eq(&c[i], &c[j])).collect());
                forall(&c, implies(inside, repeat))
            }
            Builder::BlockCover { level, x, y } => {
                let z = indexed(&format!("z^{level}"), 1..=n);
                let w = format!("w^{level}");
                let covered = or(z.iter().map(|zi| sim(*level, &w, zi)).collect());
                exists(&z, forall(&[&w], implies(between(&w, x, y), covered)))
            }
            Builder::Chain { level, two_sided } => {
                let mut t = indexed("t", 0..=n);
                if *two_sided {
                    t.extend(indexed("t'", 0..=n).into_iter().rev());
                }
                let mut parts: Vec<Formula> = t.windows(2).map(|w| not(sim(*level, &w[0], &w[1]))).collect();
                parts.extend(t.windows(2).map(|w| lt(&w[0], &w[1])));
                exists(&t, and(parts))
            }
        }
    }

    pub(crate) fn params(&self) -> Vec<&str> {
        match self {
            Builder::IntervalAtMost { x, y } | Builder::BlockCover { x, y, .. } => vec![x, y],
            Builder::Chain { .. } => Vec::new(),
        }
    }
}

pub(crate) fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

impl Formula {
    pub fn free_vars(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<&'a str>) {
        let mut var = |v: &'a str, bound: &Vec<&'a str>| {
            if !bound.contains(&v) {
                out.insert(v);
            }
        };
        match self {
            Formula::Lt { x, y } | Formula::Eq { x, y } => {
                var(x, bound);
                var(y, bound);
            }
            Formula::SchemaAnd { builder } | Formula::SchemaOr { builder } => {
                for p in builder.params() {
                    var(p, bound);
                }
            }
            Formula::Not { f } => f.collect_free(bound, out),
            Formula::And { fs } | Formula::Or { fs } => {
                for f in fs {
                    f.collect_free(bound, out);
                }
            }
            Formula::Exists { vars, f } | Formula::Forall { vars, f } => {
                let depth = bound.len();
                bound.extend(vars.iter().map(String::as_str));
                f.collect_free(bound, out);
                bound.truncate(depth);
            }
        }
    }

    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::Lt { .. } | Formula::Eq { .. } => 0,
            Formula::Not { f } => f.quantifier_depth(),
            Formula::And { fs } | Formula::Or { fs } => fs.iter().map(Formula::quantifier_depth).max().unwrap_or(0),
            Formula::SchemaAnd { builder } | Formula::SchemaOr { builder } => builder.instance(1).quantifier_depth(),
            Formula::Exists { vars, f } | Formula::Forall { vars, f } => vars.len() + f.quantifier_depth(),
        }
    }
}

/// Levels of the hierarchy of infinitary formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "class", content = "level")]
pub enum ComplexityClass {
    QF,
    Sigma(u32),
    Pi(u32),
    #[serde(rename = "dSigma")]
    DSigma(u32),
}

impl ComplexityClass {
    fn height(self) -> u32 {
        match self {
            ComplexityClass::QF => 0,
            ComplexityClass::Sigma(k) | ComplexityClass::Pi(k) => 2 * k,
            ComplexityClass::DSigma(k) => 2 * k + 1,
        }
    }

    /// `Σ_k, Π_k < d-Σ_k < Σ_{k+1}, Π_{k+1}`; `Σ_k` and `Π_k` are incomparable.
    pub fn le(self, other: ComplexityClass) -> bool {
        self == other || self.height() < other.height()
    }
}

impl fmt::Display for ComplexityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexityClass::QF => write!(f, "QF"),
            ComplexityClass::Sigma(k) => write!(f, "Sigma_{k}"),
            ComplexityClass::Pi(k) => write!(f, "Pi_{k}"),
            ComplexityClass::DSigma(k) => write!(f, "d-Sigma_{k}"),
        }
    }
}

/// Least `k` with the formula in `Σ_k`, in `Π_k`, and as a conjunction of a
/// `Σ_k` and a `Π_k` formula.
#[derive(Clone, Copy, Debug)]
struct Levels {
    sigma: u32,
    pi: u32,
    dsigma: u32,
}

impl Levels {
    fn new(sigma: u32, pi: u32) -> Levels {
        let sigma = sigma.min(pi + 1);
        let pi = pi.min(sigma + 1);
        Levels { sigma, pi, dsigma: sigma.min(pi) }
    }
}

fn levels(f: &Formula) -> Levels {
    match f {
        Formula::Lt { .. } | Formula::Eq { .. } => Levels::new(0, 0),
        Formula::Not { f } => {
            let l = levels(f);
            Levels::new(l.pi, l.sigma)
        }
        Formula::And { fs } | Formula::Or { fs } => {
            let ls: Vec<Levels> = fs.iter().map(levels).collect();
            let mut out = Levels::new(
                ls.iter().map(|l| l.sigma).max().unwrap_or(0),
                ls.iter().map(|l| l.pi).max().unwrap_or(0),
            );
            if matches!(f, Formula::And { .. }) {
                let d = ls.iter().map(|l| l.sigma.min(l.pi)).max().unwrap_or(0);
                out.dsigma = out.dsigma.min(d);
            }
            out
        }
        Formula::SchemaOr { builder } => {
            let sigma = schema_levels(builder).sigma.max(1);
            Levels::new(sigma, sigma + 1)
        }
        Formula::SchemaAnd { builder } => {
            let pi = schema_levels(builder).pi.max(1);
            Levels::new(pi + 1, pi)
        }
        Formula::Exists { vars, f } => {
            let l = levels(f);
            if vars.is_empty() {
                return l;
            }
            let sigma = l.sigma.max(1);
            Levels::new(sigma, sigma + 1)
        }
        Formula::Forall { vars, f } => {
            let l = levels(f);
            if vars.is_empty() {
                return l;
            }
            let pi = l.pi.max(1);
            Levels::new(pi + 1, pi)
        }
    }
}

/// Every family in the catalog is uniform in `n`, so a few instances fix its levels.
fn schema_levels(b: &Builder) -> Levels {
    let ls: Vec<Levels> = (1..=3).map(|n| levels(&b.instance(n))).collect();
    Levels::new(ls.iter().map(|l| l.sigma).max().unwrap(), ls.iter().map(|l| l.pi).max().unwrap())
}

/// The least class of the hierarchy containing `f`, read off its syntax.
///
/// Conjunctions of a `Σ_k` and a `Π_k` part are recognised at the root only.
/// A formula that is both `Σ_k` and `Π_k` is reported as `Σ_k`.
pub fn classify_complexity(f: &Formula) -> ComplexityClass {
    let l = levels(f);
    if l.sigma == 0 && l.pi == 0 {
        return ComplexityClass::QF;
    }
    let candidates = [
        ComplexityClass::Sigma(l.sigma),
        ComplexityClass::Pi(l.pi),
        ComplexityClass::DSigma(l.dsigma),
    ];
    candidates.into_iter().filter(|c| c.height() > 0).min_by_key(|c| c.height()).unwrap()
}

fn sim_level(f: &Formula) -> Option<(u32, &str, &str)> {
    match f {
        Formula::SchemaOr { builder: Builder::IntervalAtMost { x, y } } => Some((1, x, y)),
        Formula::SchemaOr { builder: Builder::BlockCover { level, x, y } } => Some((level + 1, x, y)),
        _ => None,
    }
}

fn tex_var(v: &str) -> String {
    v.to_string()
}

fn tex_vars(vs: &[Var]) -> String {
    vs.iter().map(|v| tex_var(v)).collect::<Vec<_>>().join(", ")
}

fn tex_sim(k: u32) -> String {
    if k < 10 {
        format!("\\sim_{k}")
    } else {
        format!("\\sim_{{{k}}}")
    }
}

fn is_atomic(f: &Formula) -> bool {
    matches!(f, Formula::Lt { .. } | Formula::Eq { .. }) || sim_level(f).is_some()
}

fn tex_into(f: &Formula, out: &mut String) {
    let wrap = |g: &Formula, out: &mut String| {
        if is_atomic(g) || matches!(g, Formula::Not { .. }) {
            tex_into(g, out);
        } else {
            out.push('(');
            tex_into(g, out);
            out.push(')');
        }
    };
    match f {
        Formula::Lt { x, y } => out.push_str(&format!("{} < {}", tex_var(x), tex_var(y))),
        Formula::Eq { x, y } => out.push_str(&format!("{} = {}", tex_var(x), tex_var(y))),
        Formula::Not { f: g } => match (&**g, sim_level(g)) {
            (_, Some((k, x, y))) => out.push_str(&format!("{x} \\not{} {y}", tex_sim(k))),
            (Formula::Eq { x, y }, _) => out.push_str(&format!("{x} \\neq {y}")),
            _ => {
                out.push_str("\\neg ");
                wrap(g, out);
            }
        },
        Formula::And { fs } if fs.is_empty() => out.push_str("\\top"),
        Formula::Or { fs } if fs.is_empty() => out.push_str("\\bot"),
        Formula::Or { fs } if implication(fs).is_some() => {
            let (a, b) = implication(fs).unwrap();
            wrap(a, out);
            out.push_str(" \\rightarrow ");
            wrap(b, out);
        }
        Formula::And { fs } => join(fs, " \\land ", out, wrap),
        Formula::Or { fs } => join(fs, " \\lor ", out, wrap),
        Formula::SchemaOr { builder } | Formula::SchemaAnd { builder } => {
            if let Some((k, x, y)) = sim_level(f) {
                out.push_str(&format!("{x} {} {y}", tex_sim(k)));
                return;
            }
            let big = if matches!(f, Formula::SchemaOr { .. }) { "\\bigvee" } else { "\\bigwedge" };
            out.push_str(big);
            out.push_str("_{n \\in \\omega} ");
            out.push_str(&builder_tex(builder));
        }
        Formula::Exists { vars, f: g } | Formula::Forall { vars, f: g } => {
            let q = if matches!(f, Formula::Exists { .. }) { "\\exists" } else { "\\forall" };
            out.push_str(&format!("{q} {} ", tex_vars(vars)));
            if matches!(**g, Formula::Exists { .. } | Formula::Forall { .. }) {
                tex_into(g, out);
            } else {
                out.push('(');
                tex_into(g, out);
                out.push(')');
            }
        }
    }
}

/// `¬a ∨ b` printed as `a → b`, unless `¬a` has a symbol of its own.
fn implication(fs: &[Formula]) -> Option<(&Formula, &Formula)> {
    match fs {
        [Formula::Not { f: a }, b] if !matches!(**a, Formula::Eq { .. }) && sim_level(a).is_none() => Some((a, b)),
        _ => None,
    }
}

fn join(fs: &[Formula], sep: &str, out: &mut String, wrap: impl Fn(&Formula, &mut String)) {
    for (i, g) in fs.iter().enumerate() {
        if i > 0 {
            out.push_str(sep);
        }
        wrap(g, out);
    }
}

fn builder_tex(b: &Builder) -> String {
    match b {
        Builder::IntervalAtMost { x, y } => format!("|[{x}, {y}]| \\leq n"),
        Builder::BlockCover { level, x, y } => format!(
            "\\exists z_1 \\ldots z_n \\forall w (w \\in [{x}, {y}] \\rightarrow \\bigvee_{{i \\leq n}} w {} z_i)",
            tex_sim(*level)
        ),
        Builder::Chain { level, two_sided } => {
            let s = format!("\\not{}", tex_sim(*level));
            if *two_sided {
                format!(
                    "\\exists t_0 \\ldots t_n t'_0 \\ldots t'_n (t_0 {s} \\cdots {s} t_n {s} t'_n {s} \\cdots {s} t'_0 \\land t_0 < \\cdots < t_n < t'_n < \\cdots < t'_0)"
                )
            } else {
                format!("\\exists t_0 \\ldots t_n (t_0 {s} \\cdots {s} t_n \\land t_0 < \\cdots < t_n)")
            }
        }
    }
}

impl Formula {
    /// Unicode rendering of the TeX form.
    pub fn pretty(&self) -> String {
        const TABLE: [(&str, &str); 21] = [
            ("\\bigvee_{n \\in \\omega} ", "⋁ₙ "),
            ("\\bigwedge_{n \\in \\omega} ", "⋀ₙ "),
            ("\\bigvee_{i \\leq n} ", "⋁ᵢ "),
            ("\\not\\sim_", "≁"),
            ("\\sim_", "~"),
            ("\\neq", "≠"),
            ("\\neg ", "¬"),
            ("\\land", "∧"),
            ("\\lor", "∨"),
            ("\\rightarrow", "→"),
            ("\\exists ", "∃"),
            ("\\forall ", "∀"),
            ("\\top", "⊤"),
            ("\\bot", "⊥"),
            ("\\leq", "≤"),
            ("\\ldots", "…"),
            ("\\cdots", "⋯"),
            ("\\in", "∈"),
            ("\\not", "¬"),
            ("{", ""),
            ("}", ""),
        ];
        TABLE.iter().fold(self.to_string(), |s, (from, to)| s.replace(from, to))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        tex_into(self, &mut s);
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ComplexityClass::*;

    #[test]
    fn clauses() {
        assert_eq!(classify_complexity(&and(vec![lt("x", "y"), not(eq("x", "y"))])), QF);
        let pi2 = forall(&["y"], exists(&["z"], lt("y", "z")));
        assert_eq!(classify_complexity(&pi2), Pi(2));
        let schema = Formula::SchemaOr { builder: Builder::Chain { level: 0, two_sided: false } };
        assert_eq!(classify_complexity(&schema), Sigma(1));
        let sigma3 = Formula::SchemaOr { builder: Builder::BlockCover { level: 1, x: "x".into(), y: "y".into() } };
        assert_eq!(classify_complexity(&sigma3), Sigma(4));
        assert_eq!(classify_complexity(&not(exists(&["x"], pi2.clone()))), Pi(3));
        let sigma3 = exists(&["x"], pi2.clone());
        assert_eq!(classify_complexity(&and(vec![sigma3.clone(), pi2])), Sigma(3));
        assert_eq!(classify_complexity(&and(vec![sigma3.clone(), not(sigma3)])), DSigma(3));
    }

    #[test]
    fn order() {
        assert!(Sigma(2).le(Pi(3)));
        assert!(Pi(3).le(DSigma(3)));
        assert!(!Sigma(3).le(Pi(3)));
        assert!(DSigma(2).le(Sigma(3)));
        assert!(QF.le(Pi(1)));
    }

    #[test]
    fn free_variables() {
        let f = forall(&["y"], and(vec![lt("x", "y"), sim(1, "y", "z")]));
        assert_eq!(f.free_vars().into_iter().collect::<Vec<_>>(), vec!["x", "z"]);
    }

    #[test]
    fn json_round_trip() {
        let f = implies(sim(2, "x", "y"), exists(&["z"], lt("x", "z")));
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(serde_json::from_str::<Formula>(&s).unwrap(), f);
        assert!(s.contains("\"family\":\"block_cover\""));
    }

    #[test]
    fn tex() {
        let f = implies(and(vec![le("x", "y"), sim(1, "y", "x")]), exists(&["z"], lt("y", "z")));
        assert_eq!(f.to_string(), "((x < y \\lor x = y) \\land y \\sim_1 x) \\rightarrow (\\exists z (y < z))");
        assert_eq!(not(sim(2, "x", "y")).to_string(), "x \\not\\sim_2 y");
        assert_eq!(f.pretty(), "((x < y ∨ x = y) ∧ y ~1 x) → (∃z (y < z))");
        assert_eq!(not(sim(2, "x", "y")).pretty(), "x ≁2 y");
    }
}
