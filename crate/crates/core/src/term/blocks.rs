//! Condensation by the finite-interval relation ~1.

use super::{normalize, OrderTerm};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Order type of a single 1-block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockAtom {
    F(u64),
    W,
    Wstar,
    Z,
}

impl BlockAtom {
    /// Has a last element, so it can absorb a following block with a first element.
    fn right_closed(self) -> bool {
        matches!(self, BlockAtom::F(_) | BlockAtom::Wstar)
    }

    fn left_closed(self) -> bool {
        matches!(self, BlockAtom::F(_) | BlockAtom::W)
    }

    pub fn mergeable(self, next: BlockAtom) -> bool {
        self.right_closed() && next.left_closed()
    }

    /// The single block formed by `self` followed by `next`. Callers check [`BlockAtom::mergeable`].
    pub fn merge(self, next: BlockAtom) -> BlockAtom {
        match (self, next) {
            (BlockAtom::F(a), BlockAtom::F(b)) => BlockAtom::F(a + b),
            (BlockAtom::F(_), BlockAtom::W) => BlockAtom::W,
            (BlockAtom::Wstar, BlockAtom::F(_)) => BlockAtom::Wstar,
            (BlockAtom::Wstar, BlockAtom::W) => BlockAtom::Z,
            (a, b) => panic!("blocks {a} and {b} do not merge"),
        }
    }

    pub fn to_term(self) -> OrderTerm {
        match self {
            BlockAtom::F(n) => OrderTerm::Fin(n),
            BlockAtom::W => OrderTerm::w(),
            BlockAtom::Wstar => OrderTerm::w_star(),
            BlockAtom::Z => OrderTerm::zeta(),
        }
    }
}

impl fmt::Display for BlockAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockAtom::F(n) => write!(f, "F({n})"),
            BlockAtom::W => write!(f, "W"),
            BlockAtom::Wstar => write!(f, "Wstar"),
            BlockAtom::Z => write!(f, "Z"),
        }
    }
}

/// The sequence of 1-blocks of a term, organised like a term over atoms.
///
/// `Seq` is kept flat: its items are atoms or ω/ω*-sums, never nested `Seq`s.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockForm {
    Atom(BlockAtom),
    Seq(Vec<BlockForm>),
    Omega(Box<BlockForm>),
    OmegaStar(Box<BlockForm>),
}

impl BlockForm {
    fn items(self) -> Vec<BlockForm> {
        match self {
            BlockForm::Seq(v) => v,
            other => vec![other],
        }
    }

    fn from_items(mut items: Vec<BlockForm>) -> BlockForm {
        if items.len() == 1 {
            items.pop().unwrap()
        } else {
            BlockForm::Seq(items)
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, BlockForm::Seq(v) if v.is_empty())
    }

    /// The atoms in order, when there are finitely many.
    pub fn atoms(&self) -> Option<Vec<BlockAtom>> {
        match self {
            BlockForm::Atom(a) => Some(vec![*a]),
            BlockForm::Seq(v) => {
                let mut out = Vec::new();
                for item in v {
                    out.extend(item.atoms()?);
                }
                Some(out)
            }
            BlockForm::Omega(_) | BlockForm::OmegaStar(_) => None,
        }
    }

    /// Replaces each atom by a single point.
    pub fn collapse(&self) -> OrderTerm {
        normalize(&self.collapse_raw())
    }

    fn collapse_raw(&self) -> OrderTerm {
        match self {
            BlockForm::Atom(_) => OrderTerm::Fin(1),
            BlockForm::Seq(v) => OrderTerm::Sum(v.iter().map(|b| b.collapse_raw()).collect()),
            BlockForm::Omega(b) => OrderTerm::omega(b.collapse_raw()),
            BlockForm::OmegaStar(b) => OrderTerm::omega_star(b.collapse_raw()),
        }
    }

    /// The order denoted, with each atom expanded to its order type.
    pub fn to_term(&self) -> OrderTerm {
        match self {
            BlockForm::Atom(a) => a.to_term(),
            BlockForm::Seq(v) => normalize(&OrderTerm::Sum(v.iter().map(|b| b.to_term()).collect())),
            BlockForm::Omega(b) => normalize(&OrderTerm::omega(b.to_term())),
            BlockForm::OmegaStar(b) => normalize(&OrderTerm::omega_star(b.to_term())),
        }
    }

    /// Every pair of adjacent atoms inside each sequence, including the seam
    /// between consecutive copies of an ω- or ω*-sum.
    pub fn has_mergeable_seam(&self) -> bool {
        match self {
            BlockForm::Atom(_) => false,
            BlockForm::Seq(v) => {
                v.iter().any(|b| b.has_mergeable_seam())
                    || v.windows(2).any(|w| seam(&w[0], &w[1]))
            }
            BlockForm::Omega(b) | BlockForm::OmegaStar(b) => b.has_mergeable_seam() || seam(b, b),
        }
    }
}

fn first_atom(b: &BlockForm) -> Option<BlockAtom> {
    match b {
        BlockForm::Atom(a) => Some(*a),
        BlockForm::Seq(v) => v.first().and_then(first_atom),
        BlockForm::Omega(body) => first_atom(body),
        BlockForm::OmegaStar(_) => None,
    }
}

fn last_atom(b: &BlockForm) -> Option<BlockAtom> {
    match b {
        BlockForm::Atom(a) => Some(*a),
        BlockForm::Seq(v) => v.last().and_then(last_atom),
        BlockForm::OmegaStar(body) => last_atom(body),
        BlockForm::Omega(_) => None,
    }
}

fn seam(left: &BlockForm, right: &BlockForm) -> bool {
    match (last_atom(left), first_atom(right)) {
        (Some(a), Some(b)) => a.mergeable(b),
        _ => false,
    }
}

impl fmt::Display for BlockForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockForm::Atom(a) => write!(f, "{a}"),
            BlockForm::Seq(v) => {
                write!(f, "[")?;
                for (i, b) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{b}")?;
                }
                write!(f, "]")
            }
            BlockForm::Omega(b) => write!(f, "omega({b})"),
            BlockForm::OmegaStar(b) => write!(f, "omegastar({b})"),
        }
    }
}

/// Unrolls leading ω-sums (`Ω(b) ≅ b + Ω(b)`) until the first item is an atom.
fn expose_front(mut items: Vec<BlockForm>) -> Vec<BlockForm> {
    while let Some(BlockForm::Omega(body)) = items.first() {
        if first_atom(body).is_none() {
            break;
        }
        let body = (**body).clone();
        let mut v = body.items();
        v.extend(items);
        items = v;
    }
    items
}

/// Unrolls trailing ω*-sums until the last item is an atom.
fn expose_back(items: &mut Vec<BlockForm>) {
    while let Some(BlockForm::OmegaStar(body)) = items.last() {
        if last_atom(body).is_none() {
            break;
        }
        let body = (**body).clone();
        items.extend(body.items());
    }
}

/// Appends the items of `next` to `items`, merging the touching blocks when
/// they are mergeable.
fn append(items: &mut Vec<BlockForm>, next: BlockForm) {
    let touching = match (items.last().and_then(last_atom), first_atom(&next)) {
        (Some(a), Some(b)) => a.mergeable(b),
        _ => false,
    };
    if !touching {
        items.extend(next.items());
        return;
    }
    expose_back(items);
    let mut rest = expose_front(next.items()).into_iter();
    let (Some(BlockForm::Atom(a)), Some(BlockForm::Atom(b))) = (items.pop(), rest.next()) else {
        unreachable!("exposed atoms at the seam")
    };
    items.push(BlockForm::Atom(a.merge(b)));
    items.extend(rest);
}

/// Block decomposition of `t` by ~1.
pub fn blocks1(t: &OrderTerm) -> BlockForm {
    match t {
        OrderTerm::Fin(0) => BlockForm::Seq(Vec::new()),
        OrderTerm::Fin(n) => BlockForm::Atom(BlockAtom::F(*n)),
        OrderTerm::Sum(parts) => {
            let mut items = Vec::new();
            for p in parts {
                append(&mut items, blocks1(p));
            }
            BlockForm::from_items(items)
        }
        OrderTerm::Omega(body) => {
            let bs = blocks1(body);
            if bs.is_empty() {
                return bs;
            }
            if let BlockForm::Atom(BlockAtom::F(_)) = bs {
                return BlockForm::Atom(BlockAtom::W);
            }
            if !seam(&bs, &bs) {
                return BlockForm::Omega(Box::new(bs));
            }
            let mut bs = expose_front(bs.items());
            expose_back(&mut bs);
            let (BlockForm::Atom(first), BlockForm::Atom(last)) = (&bs[0], &bs[bs.len() - 1]) else {
                unreachable!("exposed atoms at both ends")
            };
            let mid = &bs[1..bs.len() - 1];
            let mut inner = vec![BlockForm::Atom(last.merge(*first))];
            inner.extend_from_slice(mid);
            let mut items = vec![BlockForm::Atom(*first)];
            items.extend_from_slice(mid);
            items.push(BlockForm::Omega(Box::new(BlockForm::from_items(inner))));
            BlockForm::Seq(items)
        }
        OrderTerm::OmegaStar(body) => {
            let bs = blocks1(body);
            if bs.is_empty() {
                return bs;
            }
            if let BlockForm::Atom(BlockAtom::F(_)) = bs {
                return BlockForm::Atom(BlockAtom::Wstar);
            }
            if !seam(&bs, &bs) {
                return BlockForm::OmegaStar(Box::new(bs));
            }
            let mut bs = expose_front(bs.items());
            expose_back(&mut bs);
            let (BlockForm::Atom(first), BlockForm::Atom(last)) = (&bs[0], &bs[bs.len() - 1]) else {
                unreachable!("exposed atoms at both ends")
            };
            let mid = &bs[1..bs.len() - 1];
            let mut inner = mid.to_vec();
            inner.push(BlockForm::Atom(last.merge(*first)));
            let mut items = vec![BlockForm::OmegaStar(Box::new(BlockForm::from_items(inner)))];
            items.extend_from_slice(mid);
            items.push(BlockForm::Atom(*last));
            BlockForm::Seq(items)
        }
    }
}

/// The quotient by ~1.
pub fn condense(t: &OrderTerm) -> OrderTerm {
    blocks1(t).collapse()
}

/// The quotient by ~k.
pub fn condense_iter(t: &OrderTerm, k: u32) -> OrderTerm {
    (0..k).fold(t.clone(), |acc, _| condense(&acc))
}

pub fn hausdorff_rank(t: &OrderTerm) -> u32 {
    let mut cur = normalize(t);
    let mut k = 0;
    while !matches!(cur, OrderTerm::Fin(_)) {
        cur = condense(&cur);
        k += 1;
    }
    k
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SimpleType {
    #[serde(rename = "omega")]
    Omega,
    #[serde(rename = "omega_star")]
    OmegaStar,
    #[serde(rename = "omega_plus_omega_star")]
    OmegaPlusOmegaStar,
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SimpleType::Omega => "w",
            SimpleType::OmegaStar => "w*",
            SimpleType::OmegaPlusOmegaStar => "w + w*",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicityReport {
    pub simple: bool,
    #[serde(rename = "type")]
    pub kind: Option<SimpleType>,
    pub rank: u32,
}

/// Whether `t` is an ω-sum, ω*-sum or ω-then-ω*-sum of nonempty parts of
/// lower rank whose ranks are cofinal in its own.
pub fn is_simple(t: &OrderTerm) -> Result<SimplicityReport> {
    let rank = hausdorff_rank(t);
    if rank == 0 {
        return Err(Error::RankZero);
    }
    let top = condense_iter(&normalize(t), rank - 1);
    let kind = match blocks1(&top).atoms().as_deref() {
        Some([BlockAtom::W]) => Some(SimpleType::Omega),
        Some([BlockAtom::Wstar]) => Some(SimpleType::OmegaStar),
        Some([BlockAtom::W, BlockAtom::Wstar]) => Some(SimpleType::OmegaPlusOmegaStar),
        _ => None,
    };
    Ok(SimplicityReport { simple: kind.is_some(), kind, rank })
}
