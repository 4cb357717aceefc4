use super::formula::*;
use crate::error::{Error, Result};
use crate::term::{is_simple, OrderTerm, SimpleType};

/// `S(x, y)`: `y` is the successor of `x`.
pub fn make_successor() -> Formula {
    successor("x", "y")
}

pub(crate) fn successor(x: &str, y: &str) -> Formula {
    let inside = and(vec![le(x, "s"), le("s", y)]);
    and(vec![lt(x, y), forall(&["s"], implies(inside, or(vec![eq(x, "s"), eq("s", y)])))])
}

/// `φ^r(x)`: infinitely many elements to the right of `x` in its 1-block.
pub fn make_phi_r(x: &str) -> Formula {
    debug_assert!(x != "y" && x != "z");
    let guard = and(vec![le(x, "y"), sim(1, "y", x)]);
    forall(&["y"], implies(guard, exists(&["z"], successor("y", "z"))))
}

/// `φ^l(x)`: infinitely many elements to the left of `x` in its 1-block.
pub fn make_phi_l(x: &str) -> Formula {
    debug_assert!(x != "y" && x != "z");
    let guard = and(vec![le("y", x), sim(1, "y", x)]);
    forall(&["y"], implies(guard, exists(&["z"], successor("z", "y"))))
}

/// `φ^m(x)`: the 1-block of `x` is finite of size exactly `m`.
pub fn make_phi_m(m: usize, x: &str) -> Result<Formula> {
    if m == 0 {
        return Err(Error::InvalidArgument("a 1-block has at least one element".into()));
    }
    let all = indexed("a", 0..=m);
    let at_most = forall(
        &all,
        implies(
            and(all.iter().map(|a| sim(1, a, x)).collect()),
            or(pairs(m + 1).map(|(i, j)| eq(&all[i], &all[j])).collect()),
        ),
    );
    let some = &all[1..];
    let mut parts: Vec<Formula> = some.iter().map(|a| sim(1, a, x)).collect();
    parts.extend(some.windows(2).map(|w| lt(&w[0], &w[1])));
    Ok(and(vec![at_most, exists(some, and(parts))]))
}

/// `x ~_k y` on the free variables `x` and `y`.
pub fn sim_formula(k: u32) -> Result<Formula> {
    if k == 0 {
        return Err(Error::InvalidArgument("~_0 is equality".into()));
    }
    Ok(sim(k, "x", "y"))
}

/// The axioms of strict linear orders.
pub fn phi_ax() -> Formula {
    and(vec![
        forall(&["x", "y"], or(vec![lt("x", "y"), eq("x", "y"), lt("y", "x")])),
        forall(&["x", "y"], not(and(vec![lt("x", "y"), lt("y", "x")]))),
        forall(&["x", "y", "z"], implies(and(vec![lt("x", "y"), lt("y", "z")]), lt("x", "z"))),
    ])
}

/// The `Π_{2α+1}` sentences satisfied by a simple order of rank `α`: at most
/// one (or two) α-blocks, infinitely many β-blocks for `α = β + 1`, and a
/// first (and last) β-block.
pub fn simple_axioms(t: &OrderTerm) -> Result<Vec<Formula>> {
    let report = is_simple(t)?;
    let kind = match (report.simple, report.kind) {
        (true, Some(kind)) => kind,
        _ => return Err(Error::NotSimple),
    };
    let alpha = report.rank;
    let beta = alpha - 1;
    let first = exists(&["x"], forall(&["y"], implies(lt("y", "x"), sim(beta, "y", "x"))));
    let last = exists(&["x"], forall(&["y"], implies(lt("x", "y"), sim(beta, "y", "x"))));
    Ok(match kind {
        SimpleType::Omega | SimpleType::OmegaStar => vec![
            forall(&["x", "y"], sim(alpha, "x", "y")),
            Formula::SchemaAnd { builder: Builder::Chain { level: beta, two_sided: false } },
            if kind == SimpleType::Omega { first } else { last },
        ],
        SimpleType::OmegaPlusOmegaStar => vec![
            forall(&["x", "y", "z"], or(vec![sim(alpha, "x", "y"), sim(alpha, "x", "z")])),
            Formula::SchemaAnd { builder: Builder::Chain { level: beta, two_sided: true } },
            first,
            last,
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scott::eval::eval_finite;
    use crate::term::parse_term;
    use ComplexityClass::*;

    #[test]
    fn complexities() {
        assert_eq!(classify_complexity(&make_successor()), Pi(1));
        assert_eq!(classify_complexity(&make_phi_r("x")), Pi(3));
        assert_eq!(classify_complexity(&make_phi_l("x")), Pi(3));
        assert_eq!(classify_complexity(&make_phi_m(2, "x").unwrap()), DSigma(2));
        assert_eq!(classify_complexity(&phi_ax()), Pi(1));
        for k in 1..=3 {
            assert_eq!(classify_complexity(&sim_formula(k).unwrap()), Sigma(2 * k));
        }
        assert!(sim_formula(0).is_err());
    }

    #[test]
    fn finite_semantics() {
        let f3 = OrderTerm::fin(3);
        assert!(eval_finite(&make_phi_m(3, "x").unwrap(), &f3, &[("x", 1)]).unwrap());
        assert!(!eval_finite(&make_phi_m(2, "x").unwrap(), &f3, &[("x", 1)]).unwrap());
        assert!(eval_finite(&make_successor(), &OrderTerm::fin(2), &[("x", 0), ("y", 1)]).unwrap());
        assert!(!eval_finite(&make_successor(), &f3, &[("x", 0), ("y", 2)]).unwrap());
        assert!(eval_finite(&sim_formula(1).unwrap(), &OrderTerm::fin(4), &[("x", 0), ("y", 3)]).unwrap());
        assert!(!eval_finite(&make_phi_r("x"), &f3, &[("x", 0)]).unwrap());
        assert!(eval_finite(&phi_ax(), &f3, &[]).unwrap());
    }

    #[test]
    fn simple_axiom_lists() {
        let w = simple_axioms(&parse_term("w").unwrap()).unwrap();
        assert_eq!(w.len(), 3);
        assert!(w.iter().all(|f| classify_complexity(f).le(Pi(3))));
        assert_eq!(simple_axioms(&parse_term("w+w*").unwrap()).unwrap().len(), 4);
        let w2 = simple_axioms(&parse_term("w^2").unwrap()).unwrap();
        assert!(w2.iter().all(|f| classify_complexity(f).le(Pi(5))));
        assert_eq!(simple_axioms(&parse_term("w+w").unwrap()), Err(Error::NotSimple));
    }
}
