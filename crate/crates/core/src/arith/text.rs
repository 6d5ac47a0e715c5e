//! Canonical text form.
//!
//! Terms are written in descending grevlex order as `c*x^2*y`, joined by
//! ` + ` / ` - `; unit coefficients are omitted on non-constant terms and the
//! zero polynomial is `0`. The parser accepts this form and, more generally,
//! any expression built from `+ - * / ^` and parentheses, where `/` divides
//! by a nonzero constant.

use std::fmt::{self, Write as _};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use sha2::{Digest, Sha256};

use super::{ExactRat, Monomial, PolyError, Polynomial, VariableSpace};

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mono = format_monomial(self.space(), m);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

fn format_monomial(space: &VariableSpace, m: &Monomial) -> String {
    let mut s = String::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push('*');
        }
        s.push_str(space.name(i));
        if e > 1 {
            write!(s, "^{e}").unwrap();
        }
    }
    s
}

impl Polynomial {
    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }

    /// `content*(primitive)`, with the sign folded into the content so that
    /// the primitive part has a positive leading coefficient.
    pub fn to_content_string(&self) -> String {
        let (unit, prim) = self.primitive_normalized();
        format!("{unit}*({prim})")
    }

    pub fn parse(text: &str, space: &Arc<VariableSpace>) -> Result<Self, PolyError> {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
            space,
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(out)
    }

    /// SHA-256 over the space declaration and the canonical text.
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.space().to_string().as_bytes());
        h.update(b"\n");
        h.update(self.to_canonical_string().as_bytes());
        hex::encode(h.finalize())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    space: &'a Arc<VariableSpace>,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> PolyError {
        PolyError::Parse {
            position: self.pos,
            message: msg.to_string(),
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

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let at = self.pos;
            let rhs = self.unary()?;
            if op == b'*' {
                acc = acc * rhs;
            } else {
                match rhs.constant_value() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                    Some(_) => {
                        self.pos = at;
                        return Err(self.error("division by zero"));
                    }
                    None => {
                        self.pos = at;
                        return Err(self.error("division by a non-constant"));
                    }
                }
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, PolyError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected exponent"));
            }
            let e: u32 = digits.parse().map_err(|_| {
                self.pos = start;
                self.error("exponent out of range")
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Polynomial, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let n: BigInt = d.parse().expect("digits");
                Ok(Polynomial::constant(self.space, ExactRat::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.space.index_of(name) {
                    Some(i) => Ok(Polynomial::var_at(self.space, i)),
                    None => {
                        self.pos = start;
                        Err(self.error(&format!("unknown variable `{name}`")))
                    }
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
