//! Finitely presented scattered linear orders.
//!
//! An [`OrderTerm`] is built from finite orders by finite sums and by
//! ω-indexed and ω*-indexed sums of a single repeated body. The algebra is
//! closed under taking intervals, which is what the back-and-forth decider
//! relies on.

mod blocks;
mod parse;
mod labeled;
mod position;

pub use blocks::{
    blocks1, condense, condense_iter, hausdorff_rank, is_simple, BlockAtom, BlockForm,
    SimpleType, SimplicityReport,
};
pub use labeled::isomorphic;
pub use parse::parse_term;
pub use position::{
    between, cut_decompose, enumerate_cuts, positions, prefix, suffix, Coord, CutTuple, Position,
};

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderTerm {
    /// A finite chain with the given number of elements; `Fin(0)` is the empty order.
    Fin(u64),
    Sum(Vec<OrderTerm>),
    /// `Σ_{i∈ω} body`
    Omega(Box<OrderTerm>),
    /// `Σ_{i∈ω*} body`
    OmegaStar(Box<OrderTerm>),
}

impl OrderTerm {
    pub fn fin(n: u64) -> Self {
        OrderTerm::Fin(n)
    }

    pub fn empty() -> Self {
        OrderTerm::Fin(0)
    }

    /// ω
    pub fn w() -> Self {
        OrderTerm::Omega(Box::new(OrderTerm::Fin(1)))
    }

    /// ω*
    pub fn w_star() -> Self {
        OrderTerm::OmegaStar(Box::new(OrderTerm::Fin(1)))
    }

    /// ζ = ω* + ω
    pub fn zeta() -> Self {
        OrderTerm::Sum(vec![Self::w_star(), Self::w()])
    }

    /// ω^k as k-fold nesting of `Omega` around a point.
    pub fn w_pow(k: u32) -> Self {
        (0..k).fold(OrderTerm::Fin(1), |t, _| OrderTerm::Omega(Box::new(t)))
    }

    pub fn omega(body: OrderTerm) -> Self {
        OrderTerm::Omega(Box::new(body))
    }

    pub fn omega_star(body: OrderTerm) -> Self {
        OrderTerm::OmegaStar(Box::new(body))
    }

    pub fn sum(parts: impl IntoIterator<Item = OrderTerm>) -> Self {
        OrderTerm::Sum(parts.into_iter().collect())
    }

    /// `self * m`: the sum of `m` copies.
    pub fn times(&self, m: u64) -> Self {
        match self {
            OrderTerm::Fin(n) => OrderTerm::Fin(n.saturating_mul(m)),
            _ => OrderTerm::Sum(vec![self.clone(); m as usize]),
        }
    }

    /// `self + other`, normalized.
    pub fn plus(&self, other: &OrderTerm) -> Self {
        normalize(&OrderTerm::Sum(vec![self.clone(), other.clone()]))
    }

    /// The order read backwards.
    pub fn reversed(&self) -> Self {
        match self {
            OrderTerm::Fin(n) => OrderTerm::Fin(*n),
            OrderTerm::Sum(parts) => OrderTerm::Sum(parts.iter().rev().map(|p| p.reversed()).collect()),
            OrderTerm::Omega(b) => OrderTerm::omega_star(b.reversed()),
            OrderTerm::OmegaStar(b) => OrderTerm::omega(b.reversed()),
        }
    }

    /// Number of elements, `None` when infinite.
    pub fn size(&self) -> Option<u64> {
        match self {
            OrderTerm::Fin(n) => Some(*n),
            OrderTerm::Sum(parts) => parts
                .iter()
                .try_fold(0u64, |acc, p| p.size().map(|s| acc.saturating_add(s))),
            OrderTerm::Omega(b) | OrderTerm::OmegaStar(b) => match b.size() {
                Some(0) => Some(0),
                _ => None,
            },
        }
    }

    pub fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    pub fn is_empty(&self) -> bool {
        self.size() == Some(0)
    }

    /// Nesting depth of `Omega`/`OmegaStar` constructors.
    pub fn depth(&self) -> usize {
        match self {
            OrderTerm::Fin(_) => 0,
            OrderTerm::Sum(parts) => parts.iter().map(|p| p.depth()).max().unwrap_or(0),
            OrderTerm::Omega(b) | OrderTerm::OmegaStar(b) => 1 + b.depth(),
        }
    }
}

/// Rewrites a term into normal form.
///
/// Sums are flattened, empty parts dropped and adjacent finite parts
/// coalesced; ω- and ω*-sums of the empty order vanish and ω-sums of a
/// nonempty finite body become ω. Inside the body of an ω-sum (ω*-sum) a part
/// is also absorbed into a neighbouring ω-sum when that is an isomorphism that
/// can be read off syntactically, so `omega(1+w)` becomes `w^2`. Top-level
/// parts are kept as written.
pub fn normalize(t: &OrderTerm) -> OrderTerm {
    norm(t, false)
}

/// [`normalize`] with absorption applied at every level, e.g. `1 + w → w`
/// and `w + w^2 → w^2`.
pub fn reduce(t: &OrderTerm) -> OrderTerm {
    norm(t, true)
}

fn norm(t: &OrderTerm, absorb: bool) -> OrderTerm {
    match t {
        OrderTerm::Fin(n) => OrderTerm::Fin(*n),
        OrderTerm::Omega(b) => match norm(b, true) {
            OrderTerm::Fin(0) => OrderTerm::Fin(0),
            OrderTerm::Fin(_) => OrderTerm::w(),
            nb => OrderTerm::Omega(Box::new(nb)),
        },
        OrderTerm::OmegaStar(b) => match norm(b, true) {
            OrderTerm::Fin(0) => OrderTerm::Fin(0),
            OrderTerm::Fin(_) => OrderTerm::w_star(),
            nb => OrderTerm::OmegaStar(Box::new(nb)),
        },
        OrderTerm::Sum(parts) => {
            let mut flat = Vec::with_capacity(parts.len());
            for p in parts {
                match norm(p, absorb) {
                    OrderTerm::Sum(inner) => flat.extend(inner),
                    q => flat.push(q),
                }
            }
            simplify_sum(flat, absorb)
        }
    }
}

fn simplify_sum(mut parts: Vec<OrderTerm>, absorb: bool) -> OrderTerm {
    loop {
        let before = parts.len();
        parts.retain(|p| !matches!(p, OrderTerm::Fin(0)));
        let mut merged: Vec<OrderTerm> = Vec::with_capacity(parts.len());
        for p in parts.drain(..) {
            match (merged.last_mut(), &p) {
                (Some(OrderTerm::Fin(a)), OrderTerm::Fin(b)) => *a = a.saturating_add(*b),
                _ => merged.push(p),
            }
        }
        parts = merged;
        if !absorb {
            break;
        }
        let mut i = parts.len();
        while i >= 2 {
            i -= 1;
            if i < parts.len() && absorbed_left(&parts[i - 1], &parts[i]) {
                parts.remove(i - 1);
            }
        }
        let mut i = 0;
        while i + 1 < parts.len() {
            if absorbed_right(&parts[i], &parts[i + 1]) {
                parts.remove(i + 1);
            } else {
                i += 1;
            }
        }
        if parts.len() == before {
            break;
        }
    }
    match parts.len() {
        0 => OrderTerm::Fin(0),
        1 => parts.pop().unwrap(),
        _ => OrderTerm::Sum(parts),
    }
}

/// Sufficient syntactic condition for `x + y ≅ y`.
fn absorbed_left(x: &OrderTerm, y: &OrderTerm) -> bool {
    match y {
        OrderTerm::Omega(body) => {
            x == body.as_ref()
                || absorbed_left(x, body)
                || (matches!(x, OrderTerm::Fin(k) if *k > 0) && matches!(body.as_ref(), OrderTerm::Fin(_)))
        }
        OrderTerm::Sum(ps) => ps.first().is_some_and(|f| absorbed_left(x, f)),
        _ => false,
    }
}

/// Sufficient syntactic condition for `y + x ≅ y`.
fn absorbed_right(y: &OrderTerm, x: &OrderTerm) -> bool {
    match y {
        OrderTerm::OmegaStar(body) => {
            x == body.as_ref()
                || absorbed_right(body, x)
                || (matches!(x, OrderTerm::Fin(k) if *k > 0) && matches!(body.as_ref(), OrderTerm::Fin(_)))
        }
        OrderTerm::Sum(ps) => ps.last().is_some_and(|l| absorbed_right(l, x)),
        _ => false,
    }
}

impl fmt::Display for OrderTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderTerm::Fin(n) => write!(f, "{n}"),
            OrderTerm::Sum(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    if matches!(p, OrderTerm::Sum(_)) {
                        write!(f, "({p})")?;
                    } else {
                        write!(f, "{p}")?;
                    }
                }
                Ok(())
            }
            OrderTerm::Omega(b) => {
                let mut k = 1;
                let mut inner = b.as_ref();
                while let OrderTerm::Omega(next) = inner {
                    k += 1;
                    inner = next;
                }
                match (inner, k) {
                    (OrderTerm::Fin(1), 1) => write!(f, "w"),
                    (OrderTerm::Fin(1), k) => write!(f, "w^{k}"),
                    _ => write!(f, "omega({b})"),
                }
            }
            OrderTerm::OmegaStar(b) => match b.as_ref() {
                OrderTerm::Fin(1) => write!(f, "w*"),
                _ => write!(f, "omegastar({b})"),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> OrderTerm {
        parse_term(s).unwrap()
    }

    fn r(s: &str) -> OrderTerm {
        reduce(&n(s))
    }

    #[test]
    fn finite_sums_coalesce() {
        let t = OrderTerm::sum([OrderTerm::fin(2), OrderTerm::fin(3)]);
        assert_eq!(normalize(&t), OrderTerm::fin(5));
    }

    #[test]
    fn empty_parts_vanish() {
        let t = OrderTerm::sum([OrderTerm::fin(0), OrderTerm::w()]);
        assert_eq!(normalize(&t), OrderTerm::w());
        assert_eq!(normalize(&OrderTerm::omega(OrderTerm::fin(0))), OrderTerm::fin(0));
        assert_eq!(normalize(&OrderTerm::omega_star(OrderTerm::fin(0))), OrderTerm::fin(0));
    }

    #[test]
    fn absorption_into_omega_sums() {
        assert_eq!(r("1+w"), OrderTerm::w());
        assert_eq!(r("7+w"), OrderTerm::w());
        assert_eq!(r("w+w^2"), OrderTerm::w_pow(2));
        assert_eq!(r("w*2+w^2"), OrderTerm::w_pow(2));
        assert_eq!(r("3+w^2"), OrderTerm::w_pow(2));
        assert_eq!(r("w*+4"), OrderTerm::w_star());
        assert_eq!(r("w*+3+w"), OrderTerm::zeta());
        // not isomorphisms
        assert_eq!(r("w+w").to_string(), "w + w");
        assert_eq!(r("w*+w*").to_string(), "w* + w*");
        assert_eq!(r("w+1").to_string(), "w + 1");
        assert_eq!(r("1+w*").to_string(), "1 + w*");
    }

    #[test]
    fn top_level_parts_are_kept() {
        assert_eq!(n("1+w").to_string(), "1 + w");
        assert_eq!(n("w*+3+w").to_string(), "w* + 3 + w");
        assert_eq!(normalize(&n("w+w^2")), n("w+w^2"));
    }

    #[test]
    fn omega_of_finite_body_is_omega() {
        assert_eq!(normalize(&OrderTerm::omega(OrderTerm::fin(3))), OrderTerm::w());
        assert_eq!(n("omega(1+w)"), OrderTerm::w_pow(2));
    }

    #[test]
    fn sizes() {
        assert_eq!(n("3+4").size(), Some(7));
        assert_eq!(n("w").size(), None);
        assert_eq!(OrderTerm::omega(OrderTerm::fin(0)).size(), Some(0));
    }

    #[test]
    fn reversal_swaps_omega() {
        assert_eq!(n("w+2").reversed(), n("2+w*"));
        assert_eq!(normalize(&OrderTerm::zeta().reversed()), OrderTerm::zeta());
    }
}
