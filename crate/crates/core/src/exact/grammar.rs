//! Text form of a β spec.
//!
//! ```text
//! spec := "pi" | "e" | surd | dec
//! surd := "surd:(" int sign uint "*sqrt(" uint "))/" uint
//! dec  := "dec:" digits "." digits
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use super::{DigitConstant, IrrationalSpec, Surd};
use crate::error::{Error, Result};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.text[self.pos..].starts_with(lit) {
            self.pos += lit.len();
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{lit}`")))
        }
    }

    fn uint(&mut self) -> Result<(usize, BigInt)> {
        let start = self.pos;
        let len = self.text[start..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        if len == 0 {
            return Err(Error::parse(start, "expected digits"));
        }
        self.pos += len;
        let v = self.text[start..self.pos].parse().expect("ascii digits");
        Ok((start, v))
    }

    fn int(&mut self) -> Result<BigInt> {
        let neg = self.text[self.pos..].starts_with('-');
        if neg {
            self.pos += 1;
        }
        let (_, v) = self.uint()?;
        Ok(if neg { -v } else { v })
    }

    fn sign(&mut self) -> Result<bool> {
        match self.text[self.pos..].bytes().next() {
            Some(b'+') => {
                self.pos += 1;
                Ok(false)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(true)
            }
            _ => Err(Error::parse(self.pos, "expected `+` or `-`")),
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos == self.text.len() {
            Ok(())
        } else {
            Err(Error::parse(self.pos, "unexpected trailing input"))
        }
    }
}

fn parse_surd(cur: &mut Cursor<'_>) -> Result<Surd> {
    cur.expect("surd:")?;
    cur.expect("(")?;
    let a = cur.int()?;
    let negative = cur.sign()?;
    let (_, b) = cur.uint()?;
    cur.expect("*sqrt(")?;
    let (_, d) = cur.uint()?;
    cur.expect("))/")?;
    let (c_at, c) = cur.uint()?;
    cur.finish()?;
    if c.is_zero() {
        return Err(Error::parse(c_at, "zero denominator"));
    }
    let b = if negative { -b } else { b };
    Surd::new(a, b, c, d)
}

/// Parses a β spec. Syntax errors report the byte offset of the first
/// offending character.
pub fn parse_beta_spec(text: &str) -> Result<IrrationalSpec> {
    match text {
        "pi" => return Ok(IrrationalSpec::pi()),
        "e" => return Ok(IrrationalSpec::e()),
        _ => {}
    }
    let mut cur = Cursor { text, pos: 0 };
    if text.starts_with("surd:") {
        return parse_surd(&mut cur).map(IrrationalSpec::Surd);
    }
    if let Some(rest) = text.strip_prefix("dec:") {
        const PREFIX: usize = "dec:".len();
        return DigitConstant::literal(rest)
            .map(IrrationalSpec::Digits)
            .map_err(|e| match e {
                Error::Parse { offset, message } => Error::Parse {
                    offset: offset + PREFIX,
                    message,
                },
                other => other,
            });
    }
    Err(Error::parse(0, "expected `pi`, `e`, `surd:(` or `dec:`"))
}
