//! A small expression language for GW elements: integer combinations of
//! `<a>` generators, `H`, and `n_eps(k)`, with `+`, `-`, `*` and parentheses.
//!
//! Examples: `n_eps(2)`, `H*<-1>`, `2*<1> - 3*H`, `<u>` (the fixed nonsquare).

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, SquareClass};
use crate::gw::GwElement;

pub fn parse_gw_expression(input: &str, field: FieldDescriptor) -> Result<GwElement> {
    let mut p = Parser {
        input: input.as_bytes(),
        pos: 0,
        field,
    };
    p.skip_ws();
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.input.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
    field: FieldDescriptor,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.input.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
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
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<GwElement> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<GwElement> {
        let mut acc = self.atom()?;
        loop {
            self.skip_ws();
            if self.eat(b'*') {
                acc = acc * self.atom()?;
            } else if matches!(self.peek(), Some(b'<') | Some(b'H') | Some(b'n') | Some(b'(')) {
                // implicit multiplication: 2<1>, 3H, 2(...)
                acc = acc * self.atom()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn atom(&mut self) -> Result<GwElement> {
        self.skip_ws();
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.atom()?)
            }
            Some(b'(') => {
                self.pos += 1;
                let value = self.expr()?;
                self.skip_ws();
                self.expect(b')')?;
                Ok(value)
            }
            Some(b'<') => self.generator(),
            Some(b'H') => {
                self.pos += 1;
                Ok(GwElement::hyperbolic(self.field))
            }
            Some(b'n') => self.n_eps(),
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(GwElement::one(self.field).scalar_mul(n))
            }
            Some(c) => Err(self.error(format!("unexpected character `{}`", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn generator(&mut self) -> Result<GwElement> {
        let start = self.pos;
        let reposition = |e: Error| Error::Parse {
            pos: start,
            message: e.to_string(),
        };
        self.expect(b'<')?;
        self.skip_ws();
        let negate = self.eat(b'-');
        let mut class = if self.eat(b'u') {
            SquareClass::nonsquare(self.field).map_err(reposition)?
        } else {
            let n = self.integer()?;
            SquareClass::of_integer(self.field, n).map_err(reposition)?
        };
        if negate {
            let minus_one = SquareClass::of_integer(self.field, -1).map_err(reposition)?;
            class = class.product(&minus_one).expect("same field");
        }
        self.skip_ws();
        self.expect(b'>')?;
        Ok(GwElement::form(class))
    }

    fn n_eps(&mut self) -> Result<GwElement> {
        if !self.input[self.pos..].starts_with(b"n_eps") {
            return Err(self.error("expected `n_eps`"));
        }
        self.pos += 5;
        self.skip_ws();
        self.expect(b'(')?;
        self.skip_ws();
        let n = self.integer()?;
        if n < 0 {
            return Err(self.error("n_eps takes a nonnegative integer"));
        }
        self.skip_ws();
        self.expect(b')')?;
        Ok(GwElement::n_epsilon(n as u64, self.field))
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let negative = self.eat(b'-');
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.input[start..self.pos]).expect("ascii digits");
        let value: i64 = digits
            .parse()
            .map_err(|_| self.error("integer out of range"))?;
        Ok(if negative { -value } else { value })
    }
}
