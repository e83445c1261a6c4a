//! Recursive-descent parser.
//!
//! ```text
//! expr    := tensor (';' tensor)*
//! tensor  := unary ('*' unary)*
//! unary   := ('dag' | 'conj' | 'dual') '(' expr ')' | atom
//! atom    := '(' expr ')' | builtin | ident | scalar
//! builtin := ('id' | 'cup' | 'cap') '[' word ']' | 'swap' '[' group ',' group ']'
//! word    := (object (',' object)*)?
//! group   := object | '(' word ')'
//! object  := digits '*'?
//! scalar  := '-'? number 'i'?
//! ```

use super::ast::Expr;
use crate::error::{Error, Result};
use crate::linalg::{Wire, WireWord};

pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
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
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut e = self.tensor()?;
        while self.eat(b';') {
            e = Expr::Compose(Box::new(e), Box::new(self.tensor()?));
        }
        Ok(e)
    }

    fn tensor(&mut self) -> Result<Expr> {
        let mut e = self.unary()?;
        while self.eat(b'*') {
            e = Expr::Tensor(Box::new(e), Box::new(self.unary()?));
        }
        Ok(e)
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c == b'-' || c == b'.' || c.is_ascii_digit() => self.scalar(),
            Some(c) if c == b'_' || c.is_ascii_alphabetic() => {
                let name = self.ident();
                match name.as_str() {
                    "dag" | "conj" | "dual" => {
                        self.expect(b'(')?;
                        let inner = Box::new(self.expr()?);
                        self.expect(b')')?;
                        Ok(match name.as_str() {
                            "dag" => Expr::Dag(inner),
                            "conj" => Expr::Conj(inner),
                            _ => Expr::Dual(inner),
                        })
                    }
                    "id" | "cup" | "cap" => {
                        self.expect(b'[')?;
                        let w = self.word(b']')?;
                        self.expect(b']')?;
                        Ok(match name.as_str() {
                            "id" => Expr::Id(w),
                            "cup" => Expr::Cup(w),
                            _ => Expr::Cap(w),
                        })
                    }
                    "swap" => {
                        self.expect(b'[')?;
                        let a = self.group()?;
                        self.expect(b',')?;
                        let b = self.group()?;
                        self.expect(b']')?;
                        Ok(Expr::Swap(a, b))
                    }
                    _ => Ok(Expr::Gen(name)),
                }
            }
            Some(_) => Err(self.error("expected an expression")),
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            if c == b'_' || c == b'\'' || c.is_ascii_alphanumeric() {
                self.pos += 1;
            } else {
                break;
            }
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn scalar(&mut self) -> Result<Expr> {
        let start = self.pos;
        if self.src[self.pos] == b'-' {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.') {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.error("expected a number"));
        }
        if self.pos < self.src.len() && matches!(self.src[self.pos], b'e' | b'E') {
            let save = self.pos;
            self.pos += 1;
            if self.pos < self.src.len() && matches!(self.src[self.pos], b'+' | b'-') {
                self.pos += 1;
            }
            let exp_start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if self.pos == exp_start {
                self.pos = save;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let value: f64 = text.parse().map_err(|_| Error::Syntax {
            offset: start,
            message: format!("malformed number `{text}`"),
        })?;
        let imaginary = self.pos < self.src.len() && self.src[self.pos] == b'i' && !self.continues_ident(self.pos + 1);
        if imaginary {
            self.pos += 1;
        }
        Ok(Expr::Scalar { value, imaginary })
    }

    fn continues_ident(&self, at: usize) -> bool {
        self.src
            .get(at)
            .is_some_and(|&c| c == b'_' || c == b'\'' || c.is_ascii_alphanumeric())
    }

    fn object(&mut self) -> Result<Wire> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a dimension"));
        }
        let dim: usize = std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| Error::Syntax {
                offset: start,
                message: "dimension out of range".into(),
            })?;
        let dual = self.eat(b'*');
        Ok(Wire::new(dim, dual))
    }

    /// Comma-separated objects up to (not including) `close`.
    fn word(&mut self, close: u8) -> Result<WireWord> {
        let mut wires = Vec::new();
        if self.peek() == Some(close) {
            return Ok(WireWord::new(wires));
        }
        wires.push(self.object()?);
        while self.eat(b',') {
            wires.push(self.object()?);
        }
        Ok(WireWord::new(wires))
    }

    fn group(&mut self) -> Result<WireWord> {
        if self.eat(b'(') {
            let w = self.word(b')')?;
            self.expect(b')')?;
            Ok(w)
        } else {
            Ok(WireWord::new(vec![self.object()?]))
        }
    }
}
