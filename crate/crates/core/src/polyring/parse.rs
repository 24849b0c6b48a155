//! Text grammar for forms:
//!
//! ```text
//! form   := sign? term (sign term)*
//! term   := factor ('*' factor)*
//! factor := integer ('/' integer)? | name ('^' integer)?
//! ```
//!
//! Whitespace is ignored. Names must be declared in the variable list.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::form::{Form, Vars};
use super::monomial::Monomial;
use super::poly::Poly;
use super::FormError;
use crate::exactmath::Rational;

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or_else(|| self.chars.last().map_or(0, |&(i, c)| i + c.len_utf8()), |&(i, _)| i)
    }

    fn err(&self, msg: impl Into<String>) -> FormError {
        FormError::Parse { position: self.offset(), message: msg.into() }
    }

    fn integer(&mut self) -> Result<BigInt, FormError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        Ok(s.parse().expect("digits parse"))
    }

    fn exponent(&mut self) -> Result<u32, FormError> {
        let n = self.integer()?;
        u32::try_from(n).map_err(|_| self.err("exponent too large"))
    }

    fn factor(&mut self, mono: &mut [u32], coeff: &mut Rational) -> Result<(), FormError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let mut value = Rational::from_integer(n);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    value /= Rational::from_integer(d);
                }
                *coeff *= value;
                Ok(())
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
                let Some(idx) = self.vars.iter().position(|v| *v == name) else {
                    self.pos = start;
                    return Err(self.err(format!("unknown variable '{name}'")));
                };
                let e = if self.peek() == Some('^') {
                    self.pos += 1;
                    self.exponent()?
                } else {
                    1
                };
                mono[idx] += e;
                Ok(())
            }
            Some(c) => Err(self.err(format!("unexpected '{c}'"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn term(&mut self, sign: Rational) -> Result<(Monomial, Rational), FormError> {
        let mut mono = vec![0u32; self.vars.len()];
        let mut coeff = sign;
        self.factor(&mut mono, &mut coeff)?;
        while self.peek() == Some('*') {
            self.pos += 1;
            self.factor(&mut mono, &mut coeff)?;
        }
        Ok((Monomial::new(mono), coeff))
    }

    fn signs(&mut self) -> Option<Rational> {
        let mut sign = Rational::one();
        let mut seen = false;
        while let Some(c @ ('+' | '-')) = self.peek() {
            if c == '-' {
                sign = -sign;
            }
            seen = true;
            self.pos += 1;
        }
        seen.then_some(sign)
    }
}

/// Parses a homogeneous form over `vars`.
pub fn parse_form(text: &str, vars: Vars) -> Result<Form, FormError> {
    let mut p = Parser {
        chars: text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
        pos: 0,
        vars: &vars,
    };
    if p.chars.is_empty() {
        return Err(p.err("empty input"));
    }
    let mut poly = Poly::zero(vars.len());
    let first_sign = p.signs().unwrap_or_else(Rational::one);
    let (m, c) = p.term(first_sign)?;
    poly.add_term(m, c);
    while p.peek().is_some() {
        let Some(sign) = p.signs() else {
            return Err(p.err("expected '+' or '-'"));
        };
        let (m, c) = p.term(sign)?;
        poly.add_term(m, c);
    }
    Form::new(vars, poly)
}
