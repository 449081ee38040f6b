//! Ring specs, element literals and matrix literals.
//!
//! ```text
//! ring    := "Z/" INT | "F" PRIME | "Zloc(" PRIME ")" | ring "[t]/t^" INT
//! elem    := INT | INT "/" INT | "[" elem ("," elem)* "]"
//! matrix  := "[[" elem "," elem "],[" elem "," elem "]]"
//! ```
//!
//! Integers may carry a leading `-`. A list is read as the coefficient vector
//! `[c0, c1, ...]` of a truncated polynomial (shorter lists are zero padded);
//! a bare integer or fraction in a polynomial ring is a constant.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::genmat::GenMatrix;
use crate::localring::{Elem, Ring, RingDescriptor};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        self.error_at(self.pos, msg)
    }

    fn error_at(&self, pos: usize, msg: impl Into<String>) -> Error {
        let token: String = self.src[pos..]
            .chars()
            .take_while(|c| !matches!(c, ',' | ']' | ')' | ' '))
            .take(16)
            .collect();
        let token = if token.is_empty() {
            self.src[pos..].chars().take(1).collect()
        } else {
            token
        };
        Error::Parse {
            pos,
            token,
            msg: msg.into(),
        }
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.rest().starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(self.error(format!("expected {lit:?}")))
        }
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        let neg = self.eat("-");
        let digits = self.rest().chars().take_while(char::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error_at(start, "expected an integer"));
        }
        let text = &self.rest()[..digits];
        self.pos += digits;
        let value: BigInt = text.parse().expect("ascii digits");
        Ok(if neg { -value } else { value })
    }

    fn unsigned(&mut self) -> Result<u64> {
        let start = self.pos;
        let digits = self.rest().chars().take_while(char::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error_at(start, "expected a positive integer"));
        }
        let text = &self.rest()[..digits];
        self.pos += digits;
        text.parse()
            .map_err(|_| self.error_at(start, "integer out of range"))
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }
}

fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..).take_while(|d| d * d <= n).find(|d| n.is_multiple_of(*d)).unwrap_or(n);
    let mut k = 0;
    let mut rest = n;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn is_prime(n: u64) -> bool {
    matches!(prime_power(n), Some((_, 1)))
}

/// Parses a ring spec such as `Z/4[t]/t^2`.
pub fn parse_ring(spec: &str) -> Result<RingDescriptor> {
    let mut cur = Cursor::new(spec);
    cur.skip_ws();
    let start = cur.pos;
    let mut desc = if cur.eat("Zloc(") {
        let at = cur.pos;
        let p = cur.unsigned()?;
        if !is_prime(p) {
            return Err(cur.error_at(at, format!("{p} is not prime")));
        }
        cur.expect(")")?;
        RingDescriptor::localized(p)
    } else if cur.eat("Z/") {
        let at = cur.pos;
        let n = cur.unsigned()?;
        let (p, k) = prime_power(n).ok_or_else(|| {
            cur.error_at(at, format!("{n} is not a prime power, so Z/{n} is not local"))
        })?;
        RingDescriptor::zmod(p, k)
    } else if cur.eat("F") {
        let at = cur.pos;
        let p = cur.unsigned()?;
        if !is_prime(p) {
            return Err(cur.error_at(at, format!("{p} is not prime")));
        }
        RingDescriptor::prime_field(p)
    } else {
        return Err(cur.error_at(start, "expected Z/<n>, F<p> or Zloc(<p>)"));
    };
    loop {
        cur.skip_ws();
        if !cur.eat("[t]/t^") {
            break;
        }
        let at = cur.pos;
        let n = cur.unsigned()?;
        if n == 0 {
            return Err(cur.error_at(at, "truncation degree must be at least 1"));
        }
        desc = RingDescriptor::quotient(desc, n as usize);
    }
    cur.finish()?;
    // Size limits and the like are checked by Ring::new.
    Ring::new(desc.clone()).map_err(|e| cur.error_at(start, e.to_string()))?;
    Ok(desc)
}

#[derive(Debug)]
enum Literal {
    Number(usize, BigRational),
    List(usize, Vec<Literal>),
}

impl Literal {
    fn pos(&self) -> usize {
        match self {
            Literal::Number(p, _) | Literal::List(p, _) => *p,
        }
    }
}

fn literal(cur: &mut Cursor<'_>) -> Result<Literal> {
    cur.skip_ws();
    let start = cur.pos;
    if cur.eat("[") {
        let mut items = Vec::new();
        cur.skip_ws();
        if cur.eat("]") {
            return Ok(Literal::List(start, items));
        }
        loop {
            items.push(literal(cur)?);
            cur.skip_ws();
            if cur.eat("]") {
                return Ok(Literal::List(start, items));
            }
            if !cur.eat(",") {
                return Err(cur.error("expected ',' or ']'"));
            }
        }
    }
    let num = cur.integer()?;
    cur.skip_ws();
    if cur.peek() == Some('/') {
        cur.pos += 1;
        cur.skip_ws();
        let at = cur.pos;
        let den = cur.integer()?;
        if den.is_zero() {
            return Err(cur.error_at(at, "zero denominator"));
        }
        return Ok(Literal::Number(start, BigRational::new(num, den)));
    }
    Ok(Literal::Number(start, BigRational::from_integer(num)))
}

fn interpret(ring: &Ring, lit: &Literal, cur: &Cursor<'_>) -> Result<Elem> {
    match (lit, ring.base()) {
        (Literal::Number(pos, q), _) => {
            if q.denom().is_one() {
                Ok(ring.from_bigint(q.numer()))
            } else {
                ring.from_rational(q).map_err(|e| cur.error_at(*pos, e.to_string()))
            }
        }
        (Literal::List(pos, items), Some(base)) => {
            let n = ring.truncation().expect("quotient ring");
            if items.len() > n {
                return Err(cur.error_at(
                    *pos,
                    format!("{} coefficients given but {ring} keeps only {n}", items.len()),
                ));
            }
            let coeffs = items
                .iter()
                .map(|it| interpret(base, it, cur))
                .collect::<Result<Vec<_>>>()?;
            ring.poly(coeffs).map_err(|e| cur.error_at(*pos, e.to_string()))
        }
        (Literal::List(pos, _), None) => {
            Err(cur.error_at(*pos, format!("coefficient lists need a polynomial ring, not {ring}")))
        }
    }
}

/// Parses an element literal in `ring`.
pub fn parse_element(ring: &Ring, text: &str) -> Result<Elem> {
    let mut cur = Cursor::new(text);
    let lit = literal(&mut cur)?;
    cur.finish()?;
    interpret(ring, &lit, &cur)
}

/// Parses `[[a,b],[c,d]]` into `K_s(ring)`.
pub fn parse_matrix(ring: &Ring, s: &Elem, text: &str) -> Result<GenMatrix> {
    let mut cur = Cursor::new(text);
    let lit = literal(&mut cur)?;
    cur.finish()?;
    let shape_err = |pos| cur.error_at(pos, "expected a 2x2 matrix [[a,b],[c,d]]");
    let rows = match &lit {
        Literal::List(_, rows) if rows.len() == 2 => rows,
        _ => return Err(shape_err(lit.pos())),
    };
    let mut entries = Vec::with_capacity(4);
    for row in rows {
        match row {
            Literal::List(_, xs) if xs.len() == 2 => {
                for x in xs {
                    entries.push(interpret(ring, x, &cur)?);
                }
            }
            _ => return Err(shape_err(row.pos())),
        }
    }
    let [a, b, c, d]: [Elem; 4] = entries.try_into().expect("four entries");
    GenMatrix::new(ring, s.clone(), [[a, b], [c, d]])
}
