//! Shared grammar for polynomial-like text: a signed sum of terms, each term
//! a product of field coefficients and powers of named variables.
//!
//! ```text
//! expr   := sign? term (sign term)*
//! term   := factor ('*'? factor)*
//! factor := integer | '[' integer (',' integer)* ']' | var ('^' integer)?
//! ```

use crate::error::{Error, Result};
use crate::gf::{Elem, PrimePowerField};

pub(crate) struct Term {
    pub coeff: Elem,
    /// One exponent per variable slot.
    pub exponents: Vec<u64>,
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::parse(start, "integer out of range"))
    }
}

/// `slots[i]` lists the interchangeable spellings of variable `i`.
pub(crate) fn parse_terms(
    field: &PrimePowerField,
    s: &str,
    slots: &[&[&str]],
) -> Result<Vec<Term>> {
    let mut cur = Cursor {
        src: s.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    let mut negate = false;
    let mut first = true;
    loop {
        match cur.peek() {
            Some(b'+') if !first => cur.pos += 1,
            Some(b'-') => {
                cur.pos += 1;
                negate = true;
            }
            None if first => return Err(Error::parse(cur.pos, "empty expression")),
            None => return Err(Error::parse(cur.pos, "expected a term after sign")),
            _ if first => {}
            Some(_) => return Err(Error::parse(cur.pos, "expected '+' or '-'")),
        }
        let mut term = parse_term(field, &mut cur, slots)?;
        if negate {
            term.coeff = field.neg(term.coeff);
        }
        terms.push(term);
        negate = false;
        first = false;
        match cur.peek() {
            None => return Ok(terms),
            Some(b'+') | Some(b'-') => {}
            Some(_) => return Err(Error::parse(cur.pos, "unexpected character")),
        }
    }
}

fn parse_term(field: &PrimePowerField, cur: &mut Cursor<'_>, slots: &[&[&str]]) -> Result<Term> {
    let mut coeff = field.one();
    let mut exponents = vec![0u64; slots.len()];
    let mut factors = 0;
    loop {
        let start = {
            cur.skip_ws();
            cur.pos
        };
        match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let v = cur.integer()?;
                coeff = field.mul(coeff, field.from_int((v % field.characteristic()) as i64));
            }
            Some(b'[') => {
                let close = cur.src[cur.pos..]
                    .iter()
                    .position(|&b| b == b']')
                    .ok_or_else(|| Error::parse(cur.pos, "unterminated '['"))?;
                let text = std::str::from_utf8(&cur.src[cur.pos..=cur.pos + close]).unwrap();
                let v = field.parse_at(text, cur.pos)?;
                cur.pos += close + 1;
                coeff = field.mul(coeff, v);
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let mut end = cur.pos;
                while end < cur.src.len() && cur.src[end].is_ascii_alphanumeric() {
                    end += 1;
                }
                let name = std::str::from_utf8(&cur.src[cur.pos..end]).unwrap();
                let slot = slots
                    .iter()
                    .position(|names| names.contains(&name))
                    .ok_or_else(|| Error::parse(start, format!("unknown variable '{name}'")))?;
                cur.pos = end;
                let mut e = 1;
                if cur.peek() == Some(b'^') {
                    cur.pos += 1;
                    e = cur.integer()?;
                }
                exponents[slot] += e;
            }
            _ if factors == 0 => return Err(Error::parse(start, "expected a term")),
            _ => return Err(Error::parse(start, "expected a factor after '*'")),
        }
        factors += 1;
        match cur.peek() {
            Some(b'*') => cur.pos += 1,
            Some(c) if c.is_ascii_alphanumeric() || c == b'[' => {}
            _ => return Ok(Term { coeff, exponents }),
        }
    }
}

/// `c*x^i*y^j`, omitting unit coefficients and zero exponents.
pub(crate) fn format_term(field: &PrimePowerField, c: Elem, vars: &[(&str, u64)]) -> String {
    let mut parts = Vec::new();
    let has_var = vars.iter().any(|&(_, e)| e > 0);
    if !has_var || c != field.one() {
        parts.push(field.format(c));
    }
    for &(name, e) in vars {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}
