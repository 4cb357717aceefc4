//! Exact isomorphism test by labelled condensation.
//!
//! An isomorphism maps 1-blocks onto 1-blocks, so `A ≅ B` exactly when the
//! condensations are isomorphic as orders labelled by the isomorphism type of
//! each block. Blocks of a term are finite words, eventually periodic ω- or
//! ω*-words, or ζ-words over the current labels, all of which have canonical
//! forms. Iterating until both sides are finite decides isomorphism for every
//! finite rank.

use super::OrderTerm;
use std::collections::HashMap;

type Label = u32;
type Word = Vec<Label>;

#[derive(Clone, Debug, PartialEq, Eq)]
enum LTerm {
    Word(Word),
    Sum(Vec<LTerm>),
    Omega(Box<LTerm>),
    OmegaStar(Box<LTerm>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Atom {
    F(Word),
    /// `pre · period^ω`
    W(Word, Word),
    /// `^ω period · post`
    Wstar(Word, Word),
    /// `^ω left · mid · right^ω`, up to shift
    Z(Word, Word, Word),
}

#[derive(Clone, Debug)]
enum LForm {
    Atom(Atom),
    Seq(Vec<LForm>),
    Omega(Box<LForm>),
    OmegaStar(Box<LForm>),
}

fn from_term(t: &OrderTerm) -> LTerm {
    match t {
        OrderTerm::Fin(n) => LTerm::Word(vec![0; *n as usize]),
        OrderTerm::Sum(parts) => LTerm::Sum(parts.iter().map(from_term).collect()),
        OrderTerm::Omega(b) => LTerm::Omega(Box::new(from_term(b))),
        OrderTerm::OmegaStar(b) => LTerm::OmegaStar(Box::new(from_term(b))),
    }
}

fn lnorm(t: LTerm) -> LTerm {
    match t {
        LTerm::Word(w) => LTerm::Word(w),
        LTerm::Omega(b) => match lnorm(*b) {
            LTerm::Word(w) if w.is_empty() => LTerm::Word(w),
            nb => LTerm::Omega(Box::new(nb)),
        },
        LTerm::OmegaStar(b) => match lnorm(*b) {
            LTerm::Word(w) if w.is_empty() => LTerm::Word(w),
            nb => LTerm::OmegaStar(Box::new(nb)),
        },
        LTerm::Sum(parts) => {
            let mut out: Vec<LTerm> = Vec::new();
            for p in parts {
                let items = match lnorm(p) {
                    LTerm::Sum(inner) => inner,
                    q => vec![q],
                };
                for q in items {
                    match (out.last_mut(), q) {
                        (_, LTerm::Word(w)) if w.is_empty() => {}
                        (Some(LTerm::Word(a)), LTerm::Word(b)) => a.extend(b),
                        (_, q) => out.push(q),
                    }
                }
            }
            match out.len() {
                0 => LTerm::Word(Vec::new()),
                1 => out.pop().unwrap(),
                _ => LTerm::Sum(out),
            }
        }
    }
}

impl Atom {
    fn right_closed(&self) -> bool {
        matches!(self, Atom::F(_) | Atom::Wstar(..))
    }

    fn left_closed(&self) -> bool {
        matches!(self, Atom::F(_) | Atom::W(..))
    }

    fn merge(self, next: Atom) -> Atom {
        match (self, next) {
            (Atom::F(mut a), Atom::F(b)) => {
                a.extend(b);
                Atom::F(a)
            }
            (Atom::F(mut a), Atom::W(pre, per)) => {
                a.extend(pre);
                Atom::W(a, per)
            }
            (Atom::Wstar(per, mut post), Atom::F(b)) => {
                post.extend(b);
                Atom::Wstar(per, post)
            }
            (Atom::Wstar(left, mut mid), Atom::W(pre, right)) => {
                mid.extend(pre);
                Atom::Z(left, mid, right)
            }
            _ => unreachable!("only mergeable blocks are merged"),
        }
    }
}

fn first_atom(b: &LForm) -> Option<&Atom> {
    match b {
        LForm::Atom(a) => Some(a),
        LForm::Seq(v) => v.first().and_then(first_atom),
        LForm::Omega(body) => first_atom(body),
        LForm::OmegaStar(_) => None,
    }
}

fn last_atom(b: &LForm) -> Option<&Atom> {
    match b {
        LForm::Atom(a) => Some(a),
        LForm::Seq(v) => v.last().and_then(last_atom),
        LForm::OmegaStar(body) => last_atom(body),
        LForm::Omega(_) => None,
    }
}

fn seam(left: &LForm, right: &LForm) -> bool {
    match (last_atom(left), first_atom(right)) {
        (Some(a), Some(b)) => a.right_closed() && b.left_closed(),
        _ => false,
    }
}

fn items(f: LForm) -> Vec<LForm> {
    match f {
        LForm::Seq(v) => v,
        other => vec![other],
    }
}

fn from_items(mut v: Vec<LForm>) -> LForm {
    if v.len() == 1 {
        v.pop().unwrap()
    } else {
        LForm::Seq(v)
    }
}

fn expose_front(mut v: Vec<LForm>) -> Vec<LForm> {
    while let Some(LForm::Omega(body)) = v.first() {
        if first_atom(body).is_none() {
            break;
        }
        let mut u = items((**body).clone());
        u.extend(v);
        v = u;
    }
    v
}

fn expose_back(v: &mut Vec<LForm>) {
    while let Some(LForm::OmegaStar(body)) = v.last() {
        if last_atom(body).is_none() {
            break;
        }
        let u = items((**body).clone());
        v.extend(u);
    }
}

fn append(v: &mut Vec<LForm>, next: LForm) {
    if !(v.last().is_some_and(|l| seam(l, &next))) {
        v.extend(items(next));
        return;
    }
    expose_back(v);
    let mut rest = expose_front(items(next)).into_iter();
    let (Some(LForm::Atom(a)), Some(LForm::Atom(b))) = (v.pop(), rest.next()) else {
        unreachable!("exposed atoms at the seam")
    };
    v.push(LForm::Atom(a.merge(b)));
    v.extend(rest);
}

fn blocks(t: &LTerm) -> LForm {
    match t {
        LTerm::Word(w) if w.is_empty() => LForm::Seq(Vec::new()),
        LTerm::Word(w) => LForm::Atom(Atom::F(w.clone())),
        LTerm::Sum(parts) => {
            let mut v = Vec::new();
            for p in parts {
                append(&mut v, blocks(p));
            }
            from_items(v)
        }
        LTerm::Omega(body) => {
            let bs = blocks(body);
            match bs {
                LForm::Seq(ref v) if v.is_empty() => return bs,
                LForm::Atom(Atom::F(w)) => return LForm::Atom(Atom::W(Vec::new(), w)),
                _ => {}
            }
            if !seam(&bs, &bs) {
                return LForm::Omega(Box::new(bs));
            }
            let mut v = expose_front(items(bs));
            expose_back(&mut v);
            let n = v.len();
            let (LForm::Atom(first), LForm::Atom(last)) = (v[0].clone(), v[n - 1].clone()) else {
                unreachable!("exposed atoms at both ends")
            };
            let mid = &v[1..n - 1];
            let mut inner = vec![LForm::Atom(last.merge(first.clone()))];
            inner.extend_from_slice(mid);
            let mut out = vec![LForm::Atom(first)];
            out.extend_from_slice(mid);
            out.push(LForm::Omega(Box::new(from_items(inner))));
            LForm::Seq(out)
        }
        LTerm::OmegaStar(body) => {
            let bs = blocks(body);
            match bs {
                LForm::Seq(ref v) if v.is_empty() => return bs,
                LForm::Atom(Atom::F(w)) => return LForm::Atom(Atom::Wstar(w, Vec::new())),
                _ => {}
            }
            if !seam(&bs, &bs) {
                return LForm::OmegaStar(Box::new(bs));
            }
            let mut v = expose_front(items(bs));
            expose_back(&mut v);
            let n = v.len();
            let (LForm::Atom(first), LForm::Atom(last)) = (v[0].clone(), v[n - 1].clone()) else {
                unreachable!("exposed atoms at both ends")
            };
            let mid = &v[1..n - 1];
            let mut inner = mid.to_vec();
            inner.push(LForm::Atom(last.clone().merge(first)));
            let mut out = vec![LForm::OmegaStar(Box::new(from_items(inner)))];
            out.extend_from_slice(mid);
            out.push(LForm::Atom(last));
            LForm::Seq(out)
        }
    }
}

/// Shortest `p` with `w = p^k`.
fn primitive_root(w: &[Label]) -> Word {
    let n = w.len();
    for d in 1..=n {
        if n % d == 0 && (d..n).all(|i| w[i] == w[i - d]) {
            return w[..d].to_vec();
        }
    }
    w.to_vec()
}

fn conjugate(a: &[Label], b: &[Label]) -> bool {
    a.len() == b.len() && (0..a.len().max(1)).any(|r| a.iter().cycle().skip(r).take(a.len()).eq(b.iter()))
}

fn least_rotation(a: &[Label]) -> Word {
    (0..a.len())
        .map(|r| a.iter().cycle().skip(r).take(a.len()).copied().collect::<Word>())
        .min()
        .unwrap_or_default()
}

fn canon_omega(mut pre: Word, per: &[Label]) -> (Word, Word) {
    let mut per = primitive_root(per);
    while pre.last().is_some_and(|l| Some(l) == per.last()) {
        pre.pop();
        per.rotate_right(1);
    }
    (pre, per)
}

fn reversed(w: &[Label]) -> Word {
    w.iter().rev().copied().collect()
}

fn canonical(atom: Atom) -> Atom {
    match atom {
        Atom::F(w) => Atom::F(w),
        Atom::W(pre, per) => {
            let (pre, per) = canon_omega(pre, &per);
            Atom::W(pre, per)
        }
        Atom::Wstar(per, post) => {
            let (pre, per) = canon_omega(reversed(&post), &reversed(&per));
            Atom::Wstar(reversed(&per), reversed(&pre))
        }
        Atom::Z(left, mut mid, right) => {
            let mut left = primitive_root(&left);
            let mut right = primitive_root(&right);
            // extend the left periodic region as far as it goes
            while !mid.is_empty() && mid[0] == left[0] {
                mid.remove(0);
                left.rotate_left(1);
            }
            if mid.is_empty() {
                if conjugate(&left, &right) {
                    let r = least_rotation(&left);
                    return Atom::Z(r.clone(), Vec::new(), r);
                }
                while left[0] == right[0] {
                    left.rotate_left(1);
                    right.rotate_left(1);
                }
            } else {
                while mid.last().is_some_and(|l| Some(l) == right.last()) {
                    mid.pop();
                    right.rotate_right(1);
                }
            }
            Atom::Z(left, mid, right)
        }
    }
}

#[derive(Default)]
struct Labels {
    ids: HashMap<Atom, Label>,
}

impl Labels {
    fn label(&mut self, atom: Atom) -> Label {
        let next = self.ids.len() as Label + 1;
        *self.ids.entry(canonical(atom)).or_insert(next)
    }

    fn collapse(&mut self, f: LForm) -> LTerm {
        match f {
            LForm::Atom(a) => LTerm::Word(vec![self.label(a)]),
            LForm::Seq(v) => LTerm::Sum(v.into_iter().map(|x| self.collapse(x)).collect()),
            LForm::Omega(b) => LTerm::Omega(Box::new(self.collapse(*b))),
            LForm::OmegaStar(b) => LTerm::OmegaStar(Box::new(self.collapse(*b))),
        }
    }
}

/// Exact isomorphism of the orders denoted by two terms.
pub fn isomorphic(a: &OrderTerm, b: &OrderTerm) -> bool {
    let mut labels = Labels::default();
    let mut x = lnorm(from_term(a));
    let mut y = lnorm(from_term(b));
    loop {
        match (&x, &y) {
            (LTerm::Word(u), LTerm::Word(v)) => return u == v,
            (LTerm::Word(_), _) | (_, LTerm::Word(_)) => return false,
            _ => {}
        }
        x = lnorm(labels.collapse(blocks(&x)));
        y = lnorm(labels.collapse(blocks(&y)));
    }
}
