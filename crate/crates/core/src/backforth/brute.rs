use crate::error::{Error, Result};
use std::collections::HashMap;

pub const BRUTE_MAX_SIZE: usize = 8;
pub const BRUTE_MAX_LEVEL: u32 = 4;

/// `A ≤_k B` for finite orders, straight from the definition: quantifying
/// over every level `β < k` and every extension tuple, with no caps and no
/// interval reasoning. The orders are the given slices in slice order.
pub fn brute_force_leq<T>(a: &[T], b: &[T], k: u32) -> Result<bool> {
    if a.len() > BRUTE_MAX_SIZE || b.len() > BRUTE_MAX_SIZE {
        return Err(Error::SizeLimit(format!(
            "brute force handles orders of at most {BRUTE_MAX_SIZE} elements"
        )));
    }
    if k > BRUTE_MAX_LEVEL {
        return Err(Error::LevelTooHigh { level: k, max: BRUTE_MAX_LEVEL });
    }
    let mut s = Brute { sizes: [a.len() as u8, b.len() as u8], memo: HashMap::new() };
    Ok(s.rel(0, Vec::new(), k))
}

struct Brute {
    /// `sizes[0]` is `A`, `sizes[1]` is `B`.
    sizes: [u8; 2],
    memo: HashMap<(u8, Vec<(u8, u8)>, u32), bool>,
}

impl Brute {
    /// `(X, x̄) ≤_k (Y, ȳ)` where `X = sizes[side]`, `Y = sizes[1 - side]` and
    /// `pairs` lists `(x_i, y_i)` sorted.
    fn rel(&mut self, side: u8, pairs: Vec<(u8, u8)>, k: u32) -> bool {
        if k == 0 {
            // same atomic type: the pairing is order preserving
            return pairs.windows(2).all(|w| w[0].1 < w[1].1);
        }
        let key = (side, pairs, k);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let (side, pairs, k) = key;
        let x_size = self.sizes[side as usize];
        let y_size = self.sizes[1 - side as usize];
        let free_y: Vec<u8> = (0..y_size).filter(|y| !pairs.iter().any(|p| p.1 == *y)).collect();
        let mut holds = true;
        'levels: for beta in 0..k {
            for mask in 0u32..(1 << free_y.len()) {
                let d: Vec<u8> =
                    free_y.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, y)| *y).collect();
                let mut c = Vec::with_capacity(d.len());
                if !self.respond(side, &pairs, &d, &mut c, x_size, beta) {
                    holds = false;
                    break 'levels;
                }
            }
        }
        self.memo.insert((side, pairs, k), holds);
        holds
    }

    /// Tries every tuple `c` from `X` answering `d` from `Y`, keeping the
    /// combined tuple order preserving, and checks `(Y, ȳd) ≤_β (X, x̄c)`.
    fn respond(&mut self, side: u8, pairs: &[(u8, u8)], d: &[u8], c: &mut Vec<u8>, x_size: u8, beta: u32) -> bool {
        if c.len() == d.len() {
            let mut swapped: Vec<(u8, u8)> = pairs.iter().map(|&(x, y)| (y, x)).collect();
            swapped.extend(d.iter().zip(c.iter()).map(|(&y, &x)| (y, x)));
            swapped.sort_unstable();
            return self.rel(1 - side, swapped, beta);
        }
        let y = d[c.len()];
        // the answer must sit in the gap of x̄ matching the gap of y in ȳ
        let lo = pairs.iter().filter(|p| p.1 < y).map(|p| p.0 as i16).max().unwrap_or(-1);
        let hi = pairs.iter().filter(|p| p.1 > y).map(|p| p.0 as i16).min().unwrap_or(x_size as i16);
        let lo = lo.max(c.last().map_or(-1, |&x| x as i16));
        for x in (lo + 1)..hi {
            c.push(x as u8);
            let ok = self.respond(side, pairs, d, c, x_size, beta);
            c.pop();
            if ok {
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bf(a: usize, b: usize, k: u32) -> bool {
        brute_force_leq(&vec![(); a], &vec![(); b], k).unwrap()
    }

    #[test]
    fn examples() {
        assert!(bf(3, 2, 1));
        assert!(!bf(1, 2, 1));
        for k in 0..=4 {
            assert!(bf(2, 2, k));
        }
    }

    #[test]
    fn level_two_separates_sizes() {
        assert!(!bf(3, 2, 2));
        assert!(!bf(2, 3, 2));
        assert!(bf(0, 0, 3));
    }

    #[test]
    fn limits() {
        assert!(matches!(brute_force_leq(&[0; 9], &[0; 2], 1), Err(Error::SizeLimit(_))));
        assert!(matches!(brute_force_leq(&[0; 2], &[0; 2], 5), Err(Error::LevelTooHigh { .. })));
    }
}
