//! Reader for the text form produced by `Display for Polynomial`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use super::field::Field;
use super::monomial::Monomial;
use super::poly::Polynomial;
use super::ring::{PolyRing, VarId};
use super::PolyError;

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { s: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), PolyError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn number(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(txt.parse().unwrap())
    }

    fn small(&mut self) -> Result<usize, PolyError> {
        let n = self.number()?;
        n.to_string()
            .parse()
            .map_err(|_| self.error("index out of range"))
    }

    fn error(&self, msg: &str) -> PolyError {
        PolyError::Parse(format!(
            "{msg} at offset {} in `{}`",
            self.pos,
            String::from_utf8_lossy(self.s)
        ))
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

fn parse_factor<F: Field>(
    cur: &mut Cursor<'_>,
    ring: &PolyRing<F>,
    mon: &mut Monomial,
) -> Result<(), PolyError> {
    let var = if cur.eat(b'x') {
        cur.expect(b'[')?;
        let i = cur.small()?;
        cur.expect(b',')?;
        let j = cur.small()?;
        cur.expect(b',')?;
        let h = cur.small()?;
        cur.expect(b']')?;
        VarId::jet(i, j, h)
    } else if cur.eat(b'w') {
        cur.expect(b'[')?;
        let u = cur.small()?;
        cur.expect(b']')?;
        VarId::Aux(u as u16)
    } else {
        return Err(cur.error("expected a variable"));
    };
    let e = if cur.eat(b'^') { cur.small()? } else { 1 };
    let idx = ring.var_index(var).ok_or(PolyError::UnknownVariable(var))?;
    let e = u16::try_from(e).map_err(|_| cur.error("exponent too large"))?;
    let cur_e = mon.exponent(idx);
    mon.set_exponent(idx, cur_e + e);
    Ok(())
}

fn parse_term<F: Field>(
    cur: &mut Cursor<'_>,
    ring: &PolyRing<F>,
) -> Result<(Monomial, BigInt, BigInt), PolyError> {
    let mut mon = Monomial::one(ring.nvars());
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    let mut need_factor = true;
    if matches!(cur.peek(), Some(c) if c.is_ascii_digit()) {
        num = cur.number()?;
        if cur.eat(b'/') {
            den = cur.number()?;
        }
        need_factor = cur.eat(b'*');
        if !need_factor && matches!(cur.peek(), Some(b'x') | Some(b'w')) {
            need_factor = true;
        }
        if !need_factor {
            return Ok((mon, num, den));
        }
    }
    if need_factor {
        parse_factor(cur, ring, &mut mon)?;
        while cur.eat(b'*') {
            parse_factor(cur, ring, &mut mon)?;
        }
    }
    Ok((mon, num, den))
}

/// Parses a polynomial in the ring's text form.
pub fn parse_polynomial<F: Field>(ring: &Arc<PolyRing<F>>, text: &str) -> Result<Polynomial<F>, PolyError> {
    let mut cur = Cursor::new(text);
    if cur.at_end() {
        return Err(cur.error("empty polynomial"));
    }
    let field = ring.field();
    let mut terms = Vec::new();
    let mut negative = cur.eat(b'-');
    loop {
        let (mon, num, den) = parse_term(&mut cur, ring)?;
        let c = field.from_ratio(&num, &den)?;
        let c = if negative { field.neg(&c) } else { c };
        terms.push((mon, c));
        if cur.at_end() {
            break;
        }
        negative = if cur.eat(b'+') {
            false
        } else if cur.eat(b'-') {
            true
        } else {
            return Err(cur.error("expected `+` or `-`"));
        };
    }
    Ok(Polynomial::from_terms(ring.clone(), terms))
}

/// Parses a single monomial (`1` or a product of variables).
pub fn parse_monomial<F: Field>(ring: &PolyRing<F>, text: &str) -> Result<Monomial, PolyError> {
    let mut cur = Cursor::new(text);
    let mut mon = Monomial::one(ring.nvars());
    if cur.eat(b'1') {
        if !cur.at_end() {
            return Err(cur.error("trailing input"));
        }
        return Ok(mon);
    }
    parse_factor(&mut cur, ring, &mut mon)?;
    while cur.eat(b'*') {
        parse_factor(&mut cur, ring, &mut mon)?;
    }
    if !cur.at_end() {
        return Err(cur.error("trailing input"));
    }
    Ok(mon)
}
