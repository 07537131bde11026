//! Text form of a family: `n=13; ap(1,6); ap(3,4)` or `n=6; set{0,1,2,4}`.
//!
//! ```text
//! family  = ws "n" ws "=" ws uint ws { ";" ws [ member ws ] }
//! member  = "ap" ws "(" ws uint ws "," ws uint ws ")"
//!         | "set" ws "{" ws [ uint ws { "," ws uint ws } ] "}"
//! uint    = digit { digit }
//! ws      = { " " | "\t" | "\n" | "\r" }
//! ```
//!
//! Syntax errors carry the byte offset where parsing stopped. Semantic
//! problems (degenerate AP, element out of range) come back as their own
//! error variants.

use crate::error::{Error, Result};
use crate::zn::{Family, ModularAp, Modulus, ZSet};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            Ok(())
        } else {
            self.err(format!("expected `{tok}`"))
        }
    }

    fn uint(&mut self) -> Result<u32> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a non-negative integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: format!("integer `{text}` is too large"),
        })
    }
}

/// Parses a family literal.
pub fn parse_family(text: &str) -> Result<Family> {
    let mut c = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    c.ws();
    c.expect("n")?;
    c.ws();
    c.expect("=")?;
    c.ws();
    let n_pos = c.pos;
    let n = c.uint()?;
    let m = Modulus::new(n).map_err(|e| Error::Parse {
        pos: n_pos,
        msg: e.to_string(),
    })?;
    let mut family = Family::new(m);
    loop {
        c.ws();
        match c.peek() {
            None => break,
            Some(b';') => c.pos += 1,
            Some(_) => return c.err("expected `;` or end of input"),
        }
        c.ws();
        match c.peek() {
            None | Some(b';') => continue,
            Some(b'a') => {
                c.expect("ap")?;
                c.ws();
                c.expect("(")?;
                c.ws();
                let g = c.uint()?;
                c.ws();
                c.expect(",")?;
                c.ws();
                let k = c.uint()?;
                c.ws();
                c.expect(")")?;
                family.push(ModularAp::new(m, g, k)?)?;
            }
            Some(b's') => {
                c.expect("set")?;
                c.ws();
                c.expect("{")?;
                c.ws();
                let mut elems = Vec::new();
                if c.peek() != Some(b'}') {
                    loop {
                        elems.push(c.uint()?);
                        c.ws();
                        match c.peek() {
                            Some(b',') => {
                                c.pos += 1;
                                c.ws();
                            }
                            Some(b'}') => break,
                            _ => return c.err("expected `,` or `}`"),
                        }
                    }
                }
                c.expect("}")?;
                family.push(ZSet::new(m, elems)?)?;
            }
            Some(_) => return c.err("expected `ap(` or `set{`"),
        }
    }
    Ok(family)
}
