use super::{normalize, OrderTerm};
use crate::error::{Error, Result};

/// Largest repetition count accepted for `T*m` with an infinite `T`, and for `w^k`.
const MAX_REPEAT: u64 = 4096;

/// Parses the term grammar
///
/// ```text
/// term := sum
/// sum  := item ('+' item)*
/// item := atom ('*' NAT)?
/// atom := NAT | 'w' | 'w*' | 'z' | 'w^' NAT
///       | 'omega' '(' term ')' | 'omegastar' '(' term ')' | '(' term ')'
/// ```
///
/// and returns the normalized term. `w*3` is ω·3; `w*` not followed by a
/// number is ω*.
pub fn parse_term(text: &str) -> Result<OrderTerm> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let t = p.sum()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("'+', '*' or end of input"));
    }
    Ok(normalize(&t))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, expected: &str) -> Error {
        let found = match self.src.get(self.pos) {
            Some(_) => {
                let rest = String::from_utf8_lossy(&self.src[self.pos..]);
                format!("`{}`", rest.chars().take(8).collect::<String>())
            }
            None => "end of input".to_string(),
        };
        Error::Parse { offset: self.pos, expected: expected.to_string(), found }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("'{}'", c as char)))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let end = self.pos + kw.len();
        if self.src.get(self.pos..end) == Some(kw.as_bytes())
            && !self.src.get(end).is_some_and(|c| c.is_ascii_alphanumeric())
        {
            self.pos = end;
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("a natural number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        digits
            .parse::<u64>()
            .map_err(|_| Error::Overflow(format!("count `{digits}` at offset {start}")))
    }

    fn next_is_digit_after_star(&self) -> bool {
        let mut i = self.pos + 1;
        while i < self.src.len() && self.src[i].is_ascii_whitespace() {
            i += 1;
        }
        self.src.get(i).is_some_and(|c| c.is_ascii_digit())
    }

    fn sum(&mut self) -> Result<OrderTerm> {
        let mut parts = vec![self.item()?];
        while self.eat(b'+') {
            parts.push(self.item()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { OrderTerm::Sum(parts) })
    }

    fn item(&mut self) -> Result<OrderTerm> {
        let atom = self.atom()?;
        if self.peek() == Some(b'*') && self.next_is_digit_after_star() {
            self.pos += 1;
            let at = self.pos;
            let m = self.nat()?;
            return repeat(atom, m, at);
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<OrderTerm> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(OrderTerm::Fin(self.nat()?)),
            Some(b'(') => {
                self.pos += 1;
                let t = self.sum()?;
                self.expect(b')')?;
                Ok(t)
            }
            Some(b'z') if self.keyword("z") => Ok(OrderTerm::zeta()),
            Some(b'o') if self.keyword("omegastar") => {
                self.expect(b'(')?;
                let t = self.sum()?;
                self.expect(b')')?;
                Ok(OrderTerm::omega_star(t))
            }
            Some(b'o') if self.keyword("omega") => {
                self.expect(b'(')?;
                let t = self.sum()?;
                self.expect(b')')?;
                Ok(OrderTerm::omega(t))
            }
            Some(b'w') => {
                self.pos += 1;
                if self.src.get(self.pos) == Some(&b'^') {
                    self.pos += 1;
                    let at = self.pos;
                    let k = self.nat()?;
                    if k > MAX_REPEAT {
                        return Err(Error::Overflow(format!("exponent {k} at offset {at}")));
                    }
                    return Ok(OrderTerm::w_pow(k as u32));
                }
                if self.peek() == Some(b'*') && !self.next_is_digit_after_star() {
                    self.pos += 1;
                    return Ok(OrderTerm::w_star());
                }
                Ok(OrderTerm::w())
            }
            _ => Err(self.error("a number, 'w', 'w*', 'w^', 'z', 'omega(', 'omegastar(' or '('")),
        }
    }
}

fn repeat(t: OrderTerm, m: u64, at: usize) -> Result<OrderTerm> {
    if let OrderTerm::Fin(n) = t {
        return n
            .checked_mul(m)
            .map(OrderTerm::Fin)
            .ok_or_else(|| Error::Overflow(format!("{n}*{m} at offset {at}")));
    }
    if m > MAX_REPEAT {
        return Err(Error::Overflow(format!("repetition {m} at offset {at}")));
    }
    Ok(OrderTerm::Sum(vec![t; m as usize]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn notation() {
        assert_eq!(parse_term("w").unwrap(), OrderTerm::w());
        assert_eq!(
            parse_term("w*+3+w").unwrap(),
            OrderTerm::sum([OrderTerm::w_star(), OrderTerm::fin(3), OrderTerm::w()])
        );
        assert_eq!(parse_term("z").unwrap(), OrderTerm::zeta());
        assert_eq!(parse_term("w^2").unwrap(), OrderTerm::w_pow(2));
        assert_eq!(parse_term("omega(1+w)").unwrap(), OrderTerm::w_pow(2));
        assert_eq!(parse_term("omegastar(w*)").unwrap().to_string(), "omegastar(w*)");
    }

    #[test]
    fn star_disambiguation() {
        assert_eq!(parse_term("w*3").unwrap().to_string(), "w + w + w");
        assert_eq!(parse_term("w * 2").unwrap().to_string(), "w + w");
        assert_eq!(parse_term("w**2").unwrap().to_string(), "w* + w*");
        assert_eq!(parse_term("(w+1)*2").unwrap().to_string(), "w + 1 + w + 1");
        assert_eq!(parse_term("3*4").unwrap(), OrderTerm::fin(12));
    }

    #[test]
    fn errors_report_offset() {
        match parse_term("w + ") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_term("omega(w"), Err(Error::Parse { .. })));
        assert!(matches!(parse_term("w w"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse_term("x"), Err(Error::Parse { offset: 0, .. })));
    }

    #[test]
    fn overflow() {
        assert!(matches!(parse_term("99999999999999999999999"), Err(Error::Overflow(_))));
        assert!(matches!(parse_term("4294967296*4294967296"), Err(Error::Overflow(_))));
        assert!(matches!(parse_term("w*100000"), Err(Error::Overflow(_))));
    }
}
