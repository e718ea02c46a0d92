//! Text form of polynomials.
//!
//! ```text
//! poly   := sign? term (('+'|'-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! coeff  := integer | integer '/' positive-integer
//! factor := name ('^' positive-integer)?
//! ```
//!
//! Whitespace is ignored between tokens. Names must be declared by the
//! caller; [`default_names`] gives `x1..xN`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::ParseError;
use crate::poly::{Monomial, Polynomial, Rational};

pub fn default_names(arity: usize) -> Vec<String> {
    (1..=arity).map(|i| format!("x{}", i)).collect()
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
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

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { pos: self.pos, message: message.into() }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digit string"))
    }

    fn identifier(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' => {}
            _ => return None,
        }
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        Some((start, std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier")))
    }
}

/// Parses `text` in the ring whose variables are `var_names` (in order).
pub fn parse_poly<S: AsRef<str>>(text: &str, var_names: &[S]) -> Result<Polynomial, ParseError> {
    let arity = var_names.len();
    let mut lx = Lexer { src: text.as_bytes(), pos: 0 };
    let mut terms = Vec::new();
    let mut negative = if lx.eat(b'-') {
        true
    } else {
        lx.eat(b'+');
        false
    };
    loop {
        let (m, mut c) = parse_term(&mut lx, var_names)?;
        if negative {
            c = -c;
        }
        terms.push((m, c));
        match lx.peek() {
            None => break,
            Some(b'+') => {
                lx.pos += 1;
                negative = false;
            }
            Some(b'-') => {
                lx.pos += 1;
                negative = true;
            }
            Some(other) => return Err(lx.err(format!("unexpected character `{}`", other as char))),
        }
    }
    Ok(Polynomial::from_terms(arity, terms))
}

fn parse_term<S: AsRef<str>>(lx: &mut Lexer<'_>, names: &[S]) -> Result<(Monomial, Rational), ParseError> {
    let mut exps = vec![0u32; names.len()];
    let mut coeff = Rational::one();
    let mut need_factor = true;
    if matches!(lx.peek(), Some(c) if c.is_ascii_digit()) {
        let num = lx.integer()?;
        let den = if lx.eat(b'/') {
            let d = lx.integer()?;
            if d.is_zero() {
                return Err(lx.err("zero denominator"));
            }
            d
        } else {
            BigInt::one()
        };
        coeff = Rational::new(num, den);
        need_factor = false;
        if !lx.eat(b'*') {
            return Ok((Monomial::new(exps), coeff));
        }
    }
    loop {
        let (pos, name) = match lx.identifier() {
            Some(found) => found,
            None if need_factor => return Err(lx.err("expected a term")),
            None => return Err(lx.err("expected variable after `*`")),
        };
        let idx = names
            .iter()
            .position(|n| n.as_ref() == name)
            .ok_or_else(|| ParseError::UnknownVariable { name: name.to_string(), pos })?;
        let e = if lx.eat(b'^') {
            let e = lx.integer()?;
            if e.is_zero() {
                return Err(lx.err("exponent must be positive"));
            }
            u32::try_from(e).map_err(|_| lx.err("exponent too large"))?
        } else {
            1
        };
        exps[idx] += e;
        if !lx.eat(b'*') {
            break;
        }
    }
    Ok((Monomial::new(exps), coeff))
}

fn format_monomial<S: AsRef<str>>(m: &Monomial, names: &[S]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].as_ref().to_string()),
            _ => parts.push(format!("{}^{}", names[i].as_ref(), e)),
        }
    }
    parts.join("*")
}

/// Formats with terms in descending `≺` order.
pub fn format_poly<S: AsRef<str>>(p: &Polynomial, names: &[S]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = format_monomial(m, names);
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&abs.to_string());
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}
