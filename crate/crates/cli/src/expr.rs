//! Polynomial expressions:
//!
//! ```text
//! expr   := ws term (ws ("+"|"-") ws term)* ws
//! term   := coeff ("*" factor)* | factor ("*" factor)*
//! factor := ident ("^" nat)?
//! coeff  := nat
//! ident  := letter (letter|digit|"_")*
//! ```
//!
//! A leading `-` is allowed on the first term. Coefficients are reduced mod `p`.

use std::fmt;
use std::sync::Arc;

use hk_core::{PolyRing, Polynomial, TermOrder};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprErrorKind {
    Syntax,
    UnknownVariable,
    ExponentOverflow,
}

impl ExprErrorKind {
    pub fn code(&self) -> &'static str {
        match self {
            ExprErrorKind::Syntax => "syntax_error",
            ExprErrorKind::UnknownVariable => "unknown_variable",
            ExprErrorKind::ExponentOverflow => "exponent_overflow",
        }
    }
}

/// `offset` counts characters from the start of the expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprError {
    pub kind: ExprErrorKind,
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at offset {}", self.message, self.offset)
    }
}

impl std::error::Error for ExprError {}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    ring: &'a Arc<PolyRing>,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, kind: ExprErrorKind, offset: usize, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError { kind, offset, message: message.into() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn describe(&self) -> String {
        match self.peek() {
            Some(c) => format!("unexpected `{c}`"),
            None => "unexpected end of input".to_string(),
        }
    }

    /// Digits as a residue mod `p`, without overflow.
    fn coeff(&mut self) -> u64 {
        let p = self.ring.characteristic() as u64;
        let mut acc = 0u64;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            acc = (acc * 10 + d as u64) % p;
            self.pos += 1;
        }
        acc
    }

    fn exponent(&mut self) -> Result<u32, ExprError> {
        let start = self.pos;
        let mut acc = 0u32;
        let mut overflow = false;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            match acc.checked_mul(10).and_then(|a| a.checked_add(d)) {
                Some(a) => acc = a,
                None => overflow = true,
            }
            self.pos += 1;
        }
        if self.pos == start {
            return self.err(ExprErrorKind::Syntax, self.pos, format!("expected exponent, {}", self.describe()));
        }
        if overflow {
            return self.err(ExprErrorKind::ExponentOverflow, start, "exponent does not fit in 32 bits");
        }
        Ok(acc)
    }

    fn factor(&mut self, exps: &mut [u32]) -> Result<(), ExprError> {
        let start = self.pos;
        if !self.peek().is_some_and(char::is_alphabetic) {
            return self.err(ExprErrorKind::Syntax, self.pos, format!("expected variable, {}", self.describe()));
        }
        while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        let Some(idx) = self.ring.var_index(&name) else {
            return self.err(ExprErrorKind::UnknownVariable, start, format!("unknown variable `{name}`"));
        };
        self.skip_ws();
        let e = if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            self.exponent()?
        } else {
            1
        };
        match exps[idx].checked_add(e) {
            Some(v) => exps[idx] = v,
            None => return self.err(ExprErrorKind::ExponentOverflow, start, "exponent does not fit in 32 bits"),
        }
        Ok(())
    }

    fn term(&mut self) -> Result<(u64, Vec<u32>), ExprError> {
        let mut exps = vec![0u32; self.ring.nvars()];
        let coeff = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.coeff()
        } else {
            self.factor(&mut exps)?;
            1
        };
        loop {
            self.skip_ws();
            if self.peek() != Some('*') {
                break;
            }
            self.pos += 1;
            self.skip_ws();
            self.factor(&mut exps)?;
        }
        Ok((coeff, exps))
    }

    fn expr(&mut self) -> Result<Vec<(i64, Vec<u32>)>, ExprError> {
        let p = self.ring.characteristic() as u64;
        let mut terms = Vec::new();
        self.skip_ws();
        let mut negative = false;
        if self.peek() == Some('-') {
            negative = true;
            self.pos += 1;
            self.skip_ws();
        }
        loop {
            let (c, e) = self.term()?;
            let c = if negative { (p - c) % p } else { c };
            terms.push((c as i64, e));
            self.skip_ws();
            match self.peek() {
                Some('+') => negative = false,
                Some('-') => negative = true,
                None => break,
                Some(_) => {
                    return self.err(ExprErrorKind::Syntax, self.pos, format!("expected `+`, `-` or `*`, {}", self.describe()))
                }
            }
            self.pos += 1;
            self.skip_ws();
        }
        Ok(terms)
    }
}

/// Parses one expression over `ring`.
pub fn parse_polynomial(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial, ExprError> {
    let mut parser = Parser { chars: text.chars().collect(), pos: 0, ring };
    let terms = parser.expr()?;
    Polynomial::from_terms(ring, TermOrder::Grevlex, terms).map_err(|e| ExprError {
        kind: ExprErrorKind::ExponentOverflow,
        offset: 0,
        message: e.to_string(),
    })
}
