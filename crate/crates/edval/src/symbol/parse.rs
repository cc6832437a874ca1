//! Recursive-descent parser for the symbol-class DSL.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! class  := [ "rank" nat ";" ] term ( "+" term )*
//! term   := [ int "*" ] "(" slot ( "," slot )* ")" "_" posint
//! slot   := factor ( "*" factor )*
//! factor := nonzero-int | var [ "^" int ]
//! var    := "t" nat
//! ```
//!
//! The subscript must be a prime power `p^n` with `n >= 1`, and one prime
//! must serve the whole class. The optional leading integer of a term is
//! its weight. The ambient rank defaults to one past the largest variable
//! index; a `rank R;` header overrides it (useful for embedding a class in
//! a larger value group).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Slot, SymbolClass, SymbolTerm};
use crate::{util, Error, Result};

struct RawTerm {
    level: u32,
    weight: BigInt,
    slots: Vec<RawSlot>,
}

struct RawSlot {
    exponents: BTreeMap<usize, BigInt>,
    scalar: BigInt,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, pos: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        match self.peek() {
            Some(b) if b == byte => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(self.pos, format!("expected '{}'", byte as char))),
        }
    }

    fn parse_digits(&mut self) -> Result<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err(start, "expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .to_string())
    }

    fn parse_nat(&mut self) -> Result<usize> {
        self.skip_ws();
        let pos = self.pos;
        let digits = self.parse_digits()?;
        digits
            .parse()
            .map_err(|_| self.err(pos, "number too large"))
    }

    fn parse_int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let negative = if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let digits = self.parse_digits()?;
        let value: BigInt = digits.parse().expect("ascii digits parse as BigInt");
        Ok(if negative { -value } else { value })
    }

    fn parse_subscript(&mut self) -> Result<(u64, u32)> {
        self.skip_ws();
        let pos = self.pos;
        let digits = self.parse_digits()?;
        let value: u128 = digits
            .parse()
            .map_err(|_| self.err(pos, "subscript too large"))?;
        util::prime_power_parts(value)
            .ok_or_else(|| self.err(pos, "subscript must be a prime power"))
    }

    fn parse_slot(&mut self) -> Result<RawSlot> {
        let mut slot = RawSlot {
            exponents: BTreeMap::new(),
            scalar: BigInt::one(),
        };
        loop {
            self.skip_ws();
            let pos = self.pos;
            match self.peek() {
                Some(b't') => {
                    self.pos += 1;
                    let var = self.parse_nat()?;
                    let exp = if self.src.get(self.pos) == Some(&b'^') {
                        self.pos += 1;
                        self.parse_int()?
                    } else {
                        BigInt::one()
                    };
                    let entry = slot.exponents.entry(var).or_insert_with(BigInt::zero);
                    *entry += exp;
                }
                Some(b) if b == b'-' || b.is_ascii_digit() => {
                    let value = self.parse_int()?;
                    if value.is_zero() {
                        return Err(self.err(pos, "zero scalar factor"));
                    }
                    slot.scalar *= value;
                }
                _ => return Err(self.err(self.pos, "expected a variable or integer factor")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(slot)
    }
}

pub(super) fn parse_class(text: &str) -> Result<SymbolClass> {
    let mut parser = Parser::new(text);

    // optional rank header
    let mut declared_rank: Option<(usize, usize)> = None;
    if parser.peek() == Some(b'r') {
        let pos = parser.pos;
        let rest = &parser.src[parser.pos..];
        if rest.starts_with(b"rank") {
            parser.pos += 4;
            let r = parser.parse_nat()?;
            parser.expect(b';')?;
            declared_rank = Some((r, pos));
        } else {
            return Err(parser.err(pos, "expected 'rank' header or a term"));
        }
    }

    let mut raw_terms: Vec<RawTerm> = Vec::new();
    let mut prime: Option<u64> = None;
    loop {
        parser.skip_ws();
        let term_pos = parser.pos;
        let (term, p) = parse_term_with_prime(&mut parser)?;
        match prime {
            None => prime = Some(p),
            Some(q) if q != p => {
                return Err(parser.err(
                    term_pos,
                    format!("mixed primes {} and {}", q.min(p), q.max(p)),
                ));
            }
            _ => {}
        }
        raw_terms.push(term);
        match parser.peek() {
            Some(b'+') => {
                parser.pos += 1;
            }
            Some(_) => {
                return Err(parser.err(parser.pos, "expected '+' or end of input"));
            }
            None => break,
        }
    }
    let p = prime.expect("at least one term parsed");

    let needed_rank = raw_terms
        .iter()
        .flat_map(|t| t.slots.iter())
        .flat_map(|s| s.exponents.iter())
        .filter(|(_, e)| !e.is_zero())
        .map(|(&i, _)| i + 1)
        .max()
        .unwrap_or(0);
    let rank = match declared_rank {
        None => needed_rank,
        Some((r, pos)) => {
            if r < needed_rank {
                return Err(Error::Parse {
                    pos,
                    msg: format!(
                        "rank header {r} too small for variable t{}",
                        needed_rank - 1
                    ),
                });
            }
            r
        }
    };

    let terms = raw_terms
        .into_iter()
        .map(|t| SymbolTerm {
            level: t.level,
            weight: t.weight,
            slots: t
                .slots
                .into_iter()
                .map(|s| {
                    let mut v = vec![BigInt::zero(); rank];
                    for (i, e) in s.exponents {
                        v[i] = e;
                    }
                    Slot {
                        valuation: v,
                        scalar: s.scalar,
                    }
                })
                .collect(),
        })
        .collect();
    SymbolClass::new(p, rank, terms)
}

fn parse_term_with_prime(parser: &mut Parser<'_>) -> Result<(RawTerm, u64)> {
    parser.skip_ws();
    let weight_pos = parser.pos;
    let weight = match parser.peek() {
        Some(b) if b == b'-' || b.is_ascii_digit() => {
            let w = parser.parse_int()?;
            if w.is_zero() {
                return Err(parser.err(weight_pos, "zero weight"));
            }
            parser.expect(b'*')?;
            w
        }
        _ => BigInt::one(),
    };
    parser.expect(b'(')?;
    let mut slots = vec![parser.parse_slot()?];
    while parser.peek() == Some(b',') {
        parser.pos += 1;
        slots.push(parser.parse_slot()?);
    }
    parser.expect(b')')?;
    parser.expect(b'_')?;
    let (p, n) = parser.parse_subscript()?;
    Ok((
        RawTerm {
            level: n,
            weight,
            slots,
        },
        p,
    ))
}
