//! Finite descriptions of elements of a term, and the intervals they cut out.

use super::{normalize, OrderTerm};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coord {
    /// Element index under `Fin`, or part index under `Sum`.
    At(u64),
    /// Copy index under `Omega`, counted from the left.
    Left(u64),
    /// Copy index under `OmegaStar`, counted from the right.
    Right(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Position(pub Vec<Coord>);

pub type CutTuple = Vec<Position>;

impl Coord {
    fn cmp_same_node(&self, other: &Coord) -> Ordering {
        match (self, other) {
            (Coord::At(a), Coord::At(b)) | (Coord::Left(a), Coord::Left(b)) => a.cmp(b),
            (Coord::Right(a), Coord::Right(b)) => b.cmp(a),
            // only reachable for positions of different terms
            (a, b) => kind(a).cmp(&kind(b)),
        }
    }
}

fn kind(c: &Coord) -> u8 {
    match c {
        Coord::At(_) => 0,
        Coord::Left(_) => 1,
        Coord::Right(_) => 2,
    }
}

impl Ord for Position {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.cmp_same_node(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Position {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            match c {
                Coord::At(i) => write!(f, "{i}")?,
                Coord::Left(i) => write!(f, "L{i}")?,
                Coord::Right(i) => write!(f, "R{i}")?,
            }
        }
        write!(f, "]")
    }
}

fn invalid(pos: &[Coord], why: &str) -> Error {
    Error::InvalidPosition(format!("{} ({why})", Position(pos.to_vec())))
}

/// Checks that `pos` names an element of `t`.
pub fn validate(t: &OrderTerm, pos: &[Coord]) -> Result<()> {
    match (t, pos.split_first()) {
        (OrderTerm::Fin(n), Some((Coord::At(i), []))) if i < n => Ok(()),
        (OrderTerm::Fin(_), _) => Err(invalid(pos, "expected an element index below the block size")),
        (OrderTerm::Sum(parts), Some((Coord::At(j), rest))) => match parts.get(*j as usize) {
            Some(p) => validate(p, rest),
            None => Err(invalid(pos, "part index out of range")),
        },
        (OrderTerm::Omega(b), Some((Coord::Left(_), rest)))
        | (OrderTerm::OmegaStar(b), Some((Coord::Right(_), rest))) => validate(b, rest),
        _ => Err(invalid(pos, "coordinate kind does not match the term")),
    }
}

fn repeat(t: &OrderTerm, i: u64) -> OrderTerm {
    match t {
        OrderTerm::Fin(n) => OrderTerm::Fin(n * i),
        _ => OrderTerm::Sum(vec![t.clone(); i as usize]),
    }
}

fn raw_prefix(t: &OrderTerm, pos: &[Coord]) -> OrderTerm {
    match (t, pos.split_first()) {
        (OrderTerm::Fin(_), Some((Coord::At(i), _))) => OrderTerm::Fin(*i),
        (OrderTerm::Sum(parts), Some((Coord::At(j), rest))) => {
            let j = *j as usize;
            let mut v = parts[..j].to_vec();
            v.push(raw_prefix(&parts[j], rest));
            OrderTerm::Sum(v)
        }
        (OrderTerm::Omega(b), Some((Coord::Left(i), rest))) => {
            OrderTerm::Sum(vec![repeat(b, *i), raw_prefix(b, rest)])
        }
        (OrderTerm::OmegaStar(b), Some((Coord::Right(_), rest))) => {
            OrderTerm::Sum(vec![t.clone(), raw_prefix(b, rest)])
        }
        _ => unreachable!("validated position"),
    }
}

fn raw_suffix(t: &OrderTerm, pos: &[Coord]) -> OrderTerm {
    match (t, pos.split_first()) {
        (OrderTerm::Fin(n), Some((Coord::At(i), _))) => OrderTerm::Fin(n - i - 1),
        (OrderTerm::Sum(parts), Some((Coord::At(j), rest))) => {
            let j = *j as usize;
            let mut v = vec![raw_suffix(&parts[j], rest)];
            v.extend_from_slice(&parts[j + 1..]);
            OrderTerm::Sum(v)
        }
        (OrderTerm::Omega(b), Some((Coord::Left(_), rest))) => {
            OrderTerm::Sum(vec![raw_suffix(b, rest), t.clone()])
        }
        (OrderTerm::OmegaStar(b), Some((Coord::Right(j), rest))) => {
            OrderTerm::Sum(vec![raw_suffix(b, rest), repeat(b, *j)])
        }
        _ => unreachable!("validated position"),
    }
}

/// Interval strictly between `lo` and `hi`; `None` stands for -∞ / +∞.
fn raw_between(t: &OrderTerm, lo: Option<&[Coord]>, hi: Option<&[Coord]>) -> OrderTerm {
    let (lo, hi) = match (lo, hi) {
        (None, None) => return t.clone(),
        (None, Some(h)) => return raw_prefix(t, h),
        (Some(l), None) => return raw_suffix(t, l),
        (Some(l), Some(h)) => (l, h),
    };
    let (lc, lrest) = lo.split_first().expect("nonempty position");
    let (hc, hrest) = hi.split_first().expect("nonempty position");
    match (t, lc, hc) {
        (OrderTerm::Fin(_), Coord::At(i), Coord::At(j)) => OrderTerm::Fin(j - i - 1),
        (OrderTerm::Sum(parts), Coord::At(i), Coord::At(j)) => {
            let (i, j) = (*i as usize, *j as usize);
            if i == j {
                return raw_between(&parts[i], Some(lrest), Some(hrest));
            }
            let mut v = vec![raw_suffix(&parts[i], lrest)];
            v.extend_from_slice(&parts[i + 1..j]);
            v.push(raw_prefix(&parts[j], hrest));
            OrderTerm::Sum(v)
        }
        (OrderTerm::Omega(b), Coord::Left(i), Coord::Left(j))
        | (OrderTerm::OmegaStar(b), Coord::Right(j), Coord::Right(i)) => {
            if i == j {
                return raw_between(b, Some(lrest), Some(hrest));
            }
            OrderTerm::Sum(vec![raw_suffix(b, lrest), repeat(b, j - i - 1), raw_prefix(b, hrest)])
        }
        _ => unreachable!("validated, increasing positions"),
    }
}

/// The initial segment strictly below `pos`.
pub fn prefix(t: &OrderTerm, pos: &Position) -> Result<OrderTerm> {
    validate(t, &pos.0)?;
    Ok(normalize(&raw_prefix(t, &pos.0)))
}

/// The final segment strictly above `pos`.
pub fn suffix(t: &OrderTerm, pos: &Position) -> Result<OrderTerm> {
    validate(t, &pos.0)?;
    Ok(normalize(&raw_suffix(t, &pos.0)))
}

/// The open interval `(lo, hi)`; `None` bounds are the ends of the order.
pub fn between(t: &OrderTerm, lo: Option<&Position>, hi: Option<&Position>) -> Result<OrderTerm> {
    for p in lo.iter().chain(hi.iter()) {
        validate(t, &p.0)?;
    }
    if let (Some(l), Some(h)) = (lo, hi) {
        if l >= h {
            return Err(Error::NonIncreasingCuts);
        }
    }
    Ok(normalize(&raw_between(t, lo.map(|p| p.0.as_slice()), hi.map(|p| p.0.as_slice()))))
}

/// Splits `t` at the strictly increasing `cuts` into `cuts.len() + 1` intervals
/// `L_0, …, L_m` with `t ≅ L_0 + 1 + L_1 + … + 1 + L_m`.
pub fn cut_decompose(t: &OrderTerm, cuts: &[Position]) -> Result<Vec<OrderTerm>> {
    for p in cuts {
        validate(t, &p.0)?;
    }
    if cuts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NonIncreasingCuts);
    }
    let mut out = Vec::with_capacity(cuts.len() + 1);
    let mut lo: Option<&Position> = None;
    for c in cuts.iter().map(Some).chain(std::iter::once(None)) {
        out.push(normalize(&raw_between(t, lo.map(|p| p.0.as_slice()), c.map(|p| p.0.as_slice()))));
        lo = c;
    }
    Ok(out)
}

/// All positions of `t` in increasing order, with copy indices under
/// `Omega`/`OmegaStar` limited to `0..=index_cap`.
pub fn positions(t: &OrderTerm, index_cap: u64) -> Vec<Position> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    collect_positions(t, index_cap, &mut path, &mut out);
    out
}

fn collect_positions(t: &OrderTerm, cap: u64, path: &mut Vec<Coord>, out: &mut Vec<Position>) {
    match t {
        OrderTerm::Fin(n) => {
            for i in 0..*n {
                path.push(Coord::At(i));
                out.push(Position(path.clone()));
                path.pop();
            }
        }
        OrderTerm::Sum(parts) => {
            for (j, p) in parts.iter().enumerate() {
                path.push(Coord::At(j as u64));
                collect_positions(p, cap, path, out);
                path.pop();
            }
        }
        OrderTerm::Omega(b) => {
            for i in 0..=cap {
                path.push(Coord::Left(i));
                collect_positions(b, cap, path, out);
                path.pop();
            }
        }
        OrderTerm::OmegaStar(b) => {
            for j in (0..=cap).rev() {
                path.push(Coord::Right(j));
                collect_positions(b, cap, path, out);
                path.pop();
            }
        }
    }
}

/// All strictly increasing `m`-tuples of capped positions, in lexicographic order.
pub fn enumerate_cuts(t: &OrderTerm, m: usize, index_cap: u64) -> Vec<CutTuple> {
    let pos = positions(t, index_cap);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    choose(&pos, 0, m, &mut cur, &mut out);
    out
}

fn choose(pos: &[Position], from: usize, m: usize, cur: &mut Vec<Position>, out: &mut Vec<CutTuple>) {
    if cur.len() == m {
        out.push(cur.clone());
        return;
    }
    let need = m - cur.len();
    for i in from..pos.len() {
        if pos.len() - i < need {
            break;
        }
        cur.push(pos[i].clone());
        choose(pos, i + 1, m, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_term;

    fn t(s: &str) -> OrderTerm {
        parse_term(s).unwrap()
    }

    #[test]
    fn cut_omega_at_three() {
        let cuts = vec![Position(vec![Coord::Left(3), Coord::At(0)])];
        assert_eq!(cut_decompose(&t("w"), &cuts).unwrap(), vec![t("3"), t("w")]);
    }

    #[test]
    fn cut_omega_squared() {
        let cuts = vec![Position(vec![Coord::Left(1), Coord::Left(0), Coord::At(0)])];
        let parts = cut_decompose(&t("w^2"), &cuts).unwrap();
        assert_eq!(parts, vec![t("w"), t("w+w^2")]);
        assert_eq!(crate::term::reduce(&parts[1]), t("w^2"));
    }

    #[test]
    fn cut_zeta_at_right_zero() {
        let cuts = vec![Position(vec![Coord::At(0), Coord::Right(0), Coord::At(0)])];
        assert_eq!(cut_decompose(&t("z"), &cuts).unwrap(), vec![t("w*"), t("w")]);
    }

    #[test]
    fn interval_between_copies() {
        let z = t("w^2");
        let lo = Position(vec![Coord::Left(0), Coord::Left(2), Coord::At(0)]);
        let hi = Position(vec![Coord::Left(3), Coord::Left(1), Coord::At(0)]);
        assert_eq!(between(&z, Some(&lo), Some(&hi)).unwrap(), t("w*3+1"));
        let lo = Position(vec![Coord::Left(0), Coord::Left(2), Coord::At(0)]);
        let hi = Position(vec![Coord::Left(0), Coord::Left(7), Coord::At(0)]);
        assert_eq!(between(&z, Some(&lo), Some(&hi)).unwrap(), t("4"));
    }

    #[test]
    fn interval_inside_omega_star() {
        let s = t("w*");
        let lo = Position(vec![Coord::Right(5), Coord::At(0)]);
        let hi = Position(vec![Coord::Right(1), Coord::At(0)]);
        assert_eq!(between(&s, Some(&lo), Some(&hi)).unwrap(), t("3"));
        assert_eq!(suffix(&s, &hi).unwrap(), t("1"));
    }

    #[test]
    fn errors() {
        let bad = Position(vec![Coord::At(4)]);
        assert!(matches!(cut_decompose(&t("3"), &[bad]), Err(Error::InvalidPosition(_))));
        let a = Position(vec![Coord::At(1)]);
        let b = Position(vec![Coord::At(0)]);
        assert_eq!(cut_decompose(&t("3"), &[a.clone(), b]), Err(Error::NonIncreasingCuts));
        assert_eq!(cut_decompose(&t("3"), &[a.clone(), a]), Err(Error::NonIncreasingCuts));
        let wrong_kind = Position(vec![Coord::Right(0), Coord::At(0)]);
        assert!(cut_decompose(&t("w"), &[wrong_kind]).is_err());
    }

    #[test]
    fn capped_enumeration_counts() {
        assert_eq!(enumerate_cuts(&t("2"), 1, 4).len(), 2);
        assert_eq!(enumerate_cuts(&t("w"), 1, 2).len(), 3);
        assert_eq!(enumerate_cuts(&t("z"), 2, 1).len(), 6);
        assert_eq!(enumerate_cuts(&t("z"), 0, 1), vec![Vec::<Position>::new()]);
    }

    #[test]
    fn positions_are_increasing() {
        for s in ["w^2", "z+3+w*", "omegastar(2+w)", "w*+w^2"] {
            let ps = positions(&t(s), 3);
            assert!(ps.windows(2).all(|w| w[0] < w[1]), "{s}");
        }
    }
}
