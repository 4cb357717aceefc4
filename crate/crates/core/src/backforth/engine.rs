use super::Caps;
use crate::term::{positions, prefix, reduce, suffix, OrderTerm};
use std::collections::{HashMap, HashSet, VecDeque};
use std::rc::Rc;

type Id = u32;

/// The responder may use copy indices this many times larger than the
/// challenger's, so that a challenge near the cap can be matched when the
/// two terms place their finite parts differently.
const RESPONDER_SLACK: u64 = 2;

/// Memoizing decider for `A ≤_k B` on terms.
///
/// A challenger cut tuple of `B` is consumed one cut at a time. The responder
/// keeps the set of `A`-suffixes reachable by some partial response; the search
/// runs over pairs (remaining `B`-suffix, reachable set), which is finite
/// because every suffix of a term is one of finitely many terms up to the
/// capped copy indices.
pub struct BfEngine {
    caps: Caps,
    shortcuts: bool,
    terms: Vec<OrderTerm>,
    ids: HashMap<OrderTerm, Id>,
    cuts: HashMap<(Id, u64), Rc<Vec<(Id, Id)>>>,
    memo: HashMap<(Id, Id, u32), bool>,
    reach: HashMap<(Id, Id, u32), Rc<Vec<Id>>>,
    active: HashSet<(Id, Id, u32)>,
}

/// A challenger tuple that has no matching response: the intervals
/// `B_0, …, B_m` it cuts the right-hand order into.
pub(crate) type Refutation = Vec<OrderTerm>;

struct Node {
    b: Id,
    reach: Rc<Vec<Id>>,
    depth: u64,
    parent: Option<(usize, Id)>,
}

impl BfEngine {
    pub fn new(caps: Caps) -> Self {
        BfEngine {
            caps,
            shortcuts: true,
            terms: Vec::new(),
            ids: HashMap::new(),
            cuts: HashMap::new(),
            memo: HashMap::new(),
            reach: HashMap::new(),
            active: HashSet::new(),
        }
    }

    /// Disables the shortcuts for equal terms, finite terms and level 1, so
    /// that every verdict comes from the cut search itself.
    pub fn without_shortcuts(mut self) -> Self {
        self.shortcuts = false;
        self
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    /// Sizes of the term table and of the memo table.
    pub fn stats(&self) -> (usize, usize) {
        (self.terms.len(), self.memo.len())
    }

    fn intern(&mut self, t: OrderTerm) -> Id {
        if let Some(&id) = self.ids.get(&t) {
            return id;
        }
        let id = self.terms.len() as Id;
        self.terms.push(t.clone());
        self.ids.insert(t, id);
        id
    }

    pub(crate) fn id_of(&mut self, t: &OrderTerm) -> u32 {
        self.intern(reduce(t))
    }

    fn size(&self, id: Id) -> Option<u64> {
        self.terms[id as usize].size()
    }

    /// `(prefix, suffix)` pairs over all positions with copy indices ≤ `cap`.
    fn cuts(&mut self, id: Id, cap: u64) -> Rc<Vec<(Id, Id)>> {
        if let Some(c) = self.cuts.get(&(id, cap)) {
            return c.clone();
        }
        let t = self.terms[id as usize].clone();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for p in positions(&t, cap) {
            let pre = reduce(&prefix(&t, &p).expect("enumerated position"));
            let suf = reduce(&suffix(&t, &p).expect("enumerated position"));
            let pair = (self.intern(pre), self.intern(suf));
            if seen.insert(pair) {
                out.push(pair);
            }
        }
        let out = Rc::new(out);
        self.cuts.insert((id, cap), out.clone());
        out
    }

    fn shortcut(&self, a: Id, b: Id, k: u32) -> Option<bool> {
        if !self.shortcuts {
            return None;
        }
        if k == 0 || a == b {
            return Some(true);
        }
        match (self.size(a), self.size(b), k) {
            (sa, sb, 1) => Some(match (sa, sb) {
                (_, None) => sa.is_none(),
                (None, Some(_)) => true,
                (Some(x), Some(y)) => y <= x,
            }),
            // finite orders are ≤_2-related only when equal
            (Some(x), Some(y), _) => Some(x == y),
            (Some(_), None, _) | (None, Some(_), _) => Some(false),
            _ => None,
        }
    }

    pub(crate) fn leq(&mut self, a: Id, b: Id, k: u32) -> bool {
        if k == 0 {
            return true;
        }
        if let Some(v) = self.shortcut(a, b, k) {
            return v;
        }
        if let Some(&v) = self.memo.get(&(a, b, k)) {
            return v;
        }
        self.active.insert((a, b, k));
        let v = self.search(a, b, k, false).is_none();
        self.active.remove(&(a, b, k));
        self.memo.insert((a, b, k), v);
        v
    }

    /// Some single suffix answers every remaining challenge on its own.
    /// Searches already in progress are not re-entered.
    fn settled(&mut self, b: Id, from: &[Id], k: u32) -> bool {
        from.iter().any(|&x| !self.active.contains(&(x, b, k)) && self.leq(x, b, k))
    }

    /// `A ≤_k B` with a refutation when it fails.
    pub(crate) fn decide(&mut self, a: Id, b: Id, k: u32) -> (bool, Option<Refutation>) {
        if k == 0 {
            return (true, None);
        }
        if let Some(true) = self.shortcut(a, b, k) {
            return (true, None);
        }
        self.active.insert((a, b, k));
        let found = self.search(a, b, k, true);
        self.active.remove(&(a, b, k));
        match found {
            None => {
                self.memo.insert((a, b, k), true);
                (true, None)
            }
            Some(w) => {
                self.memo.insert((a, b, k), false);
                (false, Some(w))
            }
        }
    }

    /// Suffixes `X'` of `x` split off by a cut whose prefix `P` satisfies
    /// `interval ≤_{k-1} P`.
    fn reach_one(&mut self, x: Id, interval: Id, k: u32) -> Rc<Vec<Id>> {
        if let Some(r) = self.reach.get(&(x, interval, k)) {
            return r.clone();
        }
        let cuts = self.cuts(x, RESPONDER_SLACK * self.caps.index_cap(k));
        let mut out = Vec::new();
        for &(pre, suf) in cuts.iter() {
            if self.leq(interval, pre, k - 1) {
                out.push(suf);
            }
        }
        out.sort_unstable();
        out.dedup();
        let out = Rc::new(out);
        self.reach.insert((x, interval, k), out.clone());
        out
    }

    fn step(&mut self, from: &[Id], interval: Id, k: u32) -> Rc<Vec<Id>> {
        if let [x] = from {
            return self.reach_one(*x, interval, k);
        }
        let mut out = Vec::new();
        for &x in from {
            out.extend(self.reach_one(x, interval, k).iter().copied());
        }
        out.sort_unstable();
        out.dedup();
        Rc::new(out)
    }

    fn closes(&mut self, b: Id, from: &[Id], k: u32) -> bool {
        from.iter().any(|&x| self.leq(b, x, k - 1))
    }

    /// Searches for a challenger tuple without a response.
    /// Returns its intervals, or `None` when `a ≤_k b`.
    fn search(&mut self, a: Id, b: Id, k: u32, want_witness: bool) -> Option<Refutation> {
        let tuple_cap = self.caps.tuple_cap(k);
        let index_cap = self.caps.index_cap(k);
        let mut nodes = vec![Node { b, reach: Rc::new(vec![a]), depth: 0, parent: None }];
        let mut visited: HashSet<(Id, Rc<Vec<Id>>)> = HashSet::new();
        visited.insert((b, nodes[0].reach.clone()));
        let mut queue = VecDeque::from([0usize]);
        // breadth first for shortest witnesses, depth first to fail fast otherwise
        while let Some(i) = if want_witness { queue.pop_front() } else { queue.pop_back() } {
            let (cur_b, cur_reach, depth) = (nodes[i].b, nodes[i].reach.clone(), nodes[i].depth);
            if !self.closes(cur_b, &cur_reach, k) {
                return Some(if want_witness { self.refutation(&nodes, i) } else { Vec::new() });
            }
            if tuple_cap.is_some_and(|c| depth >= c) {
                continue;
            }
            if self.shortcuts && k >= 2 && tuple_cap.is_none() {
                if let Some(m) = self.size(cur_b) {
                    // Only a copy of the finite remainder survives the tuple
                    // that cuts at every one of its elements.
                    if cur_reach.binary_search(&cur_b).is_ok() {
                        continue;
                    }
                    return Some(if want_witness {
                        let mut r = self.refutation(&nodes, i);
                        r.pop();
                        r.extend(std::iter::repeat(OrderTerm::Fin(0)).take(m as usize + 1));
                        r
                    } else {
                        Vec::new()
                    });
                }
            }
            if i > 0 && tuple_cap.is_none() && self.settled(cur_b, &cur_reach, k) {
                continue;
            }
            let cuts = self.cuts(cur_b, index_cap);
            for &(interval, rest) in cuts.iter() {
                let next = self.step(&cur_reach, interval, k);
                if visited.insert((rest, next.clone())) {
                    let empty = next.is_empty();
                    nodes.push(Node { b: rest, reach: next, depth: depth + 1, parent: Some((i, interval)) });
                    if empty {
                        let last = nodes.len() - 1;
                        return Some(if want_witness { self.refutation(&nodes, last) } else { Vec::new() });
                    }
                    queue.push_back(nodes.len() - 1);
                }
            }
        }
        None
    }

    fn refutation(&self, nodes: &[Node], mut i: usize) -> Refutation {
        let mut out = vec![self.terms[nodes[i].b as usize].clone()];
        while let Some((parent, interval)) = nodes[i].parent {
            out.push(self.terms[interval as usize].clone());
            i = parent;
        }
        out.reverse();
        out
    }

    /// Re-runs the responder on a fixed challenger tuple given by its intervals
    /// and reports whether some response exists.
    pub(crate) fn responds(&mut self, a: Id, intervals: &[OrderTerm], k: u32) -> bool {
        let Some((last, init)) = intervals.split_last() else {
            return true;
        };
        let mut reach = Rc::new(vec![a]);
        for t in init {
            let i = self.id_of(t);
            reach = self.step(&reach, i, k);
            if reach.is_empty() {
                return false;
            }
        }
        let l = self.id_of(last);
        self.closes(l, &reach, k)
    }
}
