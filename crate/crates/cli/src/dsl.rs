//! A small language for writing sets.
//!
//! ```text
//! expr  := term (("|" | "^" | "\") term)*
//! term  := unary ("&" unary)*
//! unary := "~" unary | atom
//! atom  := "(" expr ")" | "ap(" int "," int ")" | "finite{" ints "}"
//!        | "cofinite{" ints "}" | "block(" int "," int ")" | "abundant"
//! ```
//!
//! `ap(a,b)` is the residue class of `a` modulo `b`. Binary operators are
//! left-associative.

use std::fmt;

use density_core::abundant::abundant_set;
use density_core::{DensitySet, SetError};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Union,
    Intersection,
    Difference,
    SymDiff,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Union => '|',
            BinOp::Intersection => '&',
            BinOp::Difference => '\\',
            BinOp::SymDiff => '^',
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Intersection => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SetExpr {
    Ap(u64, u64),
    Finite(Vec<u64>),
    Cofinite(Vec<u64>),
    Block(u64, u8),
    Abundant,
    Not(Box<SetExpr>),
    Binary(BinOp, Box<SetExpr>, Box<SetExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at line {line}, column {column}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            chars: text.chars().collect(),
            pos: 0,
            text,
        }
    }

    fn location(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        (line, column)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> SyntaxError {
        let (line, column) = self.location(pos);
        SyntaxError {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn describe(c: Option<char>) -> String {
        match c {
            Some(c) => format!("`{c}`"),
            None => "end of input".to_string(),
        }
    }

    fn expect(&mut self, want: char) -> Result<(), SyntaxError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            other => Err(self.error_at(self.pos, format!("expected `{want}`, found {}", Self::describe(other)))),
        }
    }

    fn integer(&mut self) -> Result<u64, SyntaxError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            let found = self.chars.get(self.pos).copied();
            return Err(self.error_at(start, format!("expected an integer, found {}", Self::describe(found))));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits
            .parse()
            .map_err(|_| self.error_at(start, format!("integer `{digits}` is too large")))
    }

    fn integer_list(&mut self) -> Result<Vec<u64>, SyntaxError> {
        self.expect('{')?;
        let mut out = Vec::new();
        if self.peek() == Some('}') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.integer()?);
            match self.peek() {
                Some(',') => self.pos += 1,
                Some('}') => {
                    self.pos += 1;
                    return Ok(out);
                }
                other => {
                    return Err(self.error_at(
                        self.pos,
                        format!("expected `,` or `}}`, found {}", Self::describe(other)),
                    ))
                }
            }
        }
    }

    fn pair(&mut self) -> Result<(u64, u64, usize), SyntaxError> {
        self.expect('(')?;
        let a = self.integer()?;
        self.expect(',')?;
        self.skip_ws();
        let second_at = self.pos;
        let b = self.integer()?;
        self.expect(')')?;
        Ok((a, b, second_at))
    }

    fn identifier(&mut self) -> (String, usize) {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
        {
            self.pos += 1;
        }
        (self.chars[start..self.pos].iter().collect(), start)
    }

    fn atom(&mut self) -> Result<SetExpr, SyntaxError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let (name, start) = self.identifier();
                match name.as_str() {
                    "ap" => {
                        let (a, b, at) = self.pair()?;
                        if b == 0 {
                            return Err(self.error_at(at, "modulus must be positive"));
                        }
                        Ok(SetExpr::Ap(a, b))
                    }
                    "block" => {
                        let (rho, phase, at) = self.pair()?;
                        if rho < 2 {
                            return Err(self.error_at(start, "block base must be at least 2"));
                        }
                        if phase > 1 {
                            return Err(self.error_at(at, "block phase must be 0 or 1"));
                        }
                        Ok(SetExpr::Block(rho, phase as u8))
                    }
                    "finite" => Ok(SetExpr::Finite(self.integer_list()?)),
                    "cofinite" => Ok(SetExpr::Cofinite(self.integer_list()?)),
                    "abundant" => Ok(SetExpr::Abundant),
                    other => Err(self.error_at(start, format!("unknown identifier `{other}`"))),
                }
            }
            other => Err(self.error_at(self.pos, format!("expected a set, found {}", Self::describe(other)))),
        }
    }

    fn unary(&mut self) -> Result<SetExpr, SyntaxError> {
        if self.peek() == Some('~') {
            self.pos += 1;
            return Ok(SetExpr::Not(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn term(&mut self) -> Result<SetExpr, SyntaxError> {
        let mut left = self.unary()?;
        while self.peek() == Some('&') {
            self.pos += 1;
            let right = self.unary()?;
            left = SetExpr::Binary(BinOp::Intersection, Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn expr(&mut self) -> Result<SetExpr, SyntaxError> {
        let mut left = self.term()?;
        loop {
            let op = match self.peek() {
                Some('|') => BinOp::Union,
                Some('^') => BinOp::SymDiff,
                Some('\\') => BinOp::Difference,
                _ => return Ok(left),
            };
            self.pos += 1;
            let right = self.term()?;
            left = SetExpr::Binary(op, Box::new(left), Box::new(right));
        }
    }
}

pub fn parse(text: &str) -> Result<SetExpr, SyntaxError> {
    let mut p = Parser::new(text);
    let e = p.expr()?;
    match p.peek() {
        None => Ok(e),
        Some(c) => Err(p.error_at(
            p.pos,
            format!("unexpected `{c}` after a complete set in `{}`", p.text.trim()),
        )),
    }
}

impl SetExpr {
    fn precedence(&self) -> u8 {
        match self {
            SetExpr::Binary(op, ..) => op.precedence(),
            SetExpr::Not(_) => 3,
            _ => 4,
        }
    }

    pub fn to_set(&self) -> Result<DensitySet, SetError> {
        Ok(match self {
            SetExpr::Ap(a, b) => DensitySet::residue_class(*a, *b)?,
            SetExpr::Finite(v) => DensitySet::finite(v.iter().copied()),
            SetExpr::Cofinite(v) => DensitySet::cofinite(v.iter().copied()),
            SetExpr::Block(rho, phase) => DensitySet::block(*rho, *phase)?,
            SetExpr::Abundant => abundant_set(),
            SetExpr::Not(e) => e.to_set()?.complement(),
            SetExpr::Binary(op, l, r) => {
                let (l, r) = (l.to_set()?, r.to_set()?);
                match op {
                    BinOp::Union => l.union(&r),
                    BinOp::Intersection => l.intersect(&r),
                    BinOp::Difference => l.difference(&r),
                    BinOp::SymDiff => l.symdiff(&r),
                }
            }
        })
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, name: &str, items: &[u64]) -> fmt::Result {
    let joined: Vec<String> = items.iter().map(u64::to_string).collect();
    write!(f, "{name}{{{}}}", joined.join(","))
}

/// Prints with the fewest parentheses that parse back to the same tree.
impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetExpr::Ap(a, b) => write!(f, "ap({a},{b})"),
            SetExpr::Finite(v) => write_list(f, "finite", v),
            SetExpr::Cofinite(v) => write_list(f, "cofinite", v),
            SetExpr::Block(rho, phase) => write!(f, "block({rho},{phase})"),
            SetExpr::Abundant => f.write_str("abundant"),
            SetExpr::Not(e) => {
                if e.precedence() < 3 {
                    write!(f, "~({e})")
                } else {
                    write!(f, "~{e}")
                }
            }
            SetExpr::Binary(op, l, r) => {
                let p = op.precedence();
                if l.precedence() < p {
                    write!(f, "({l})")?;
                } else {
                    write!(f, "{l}")?;
                }
                write!(f, " {} ", op.symbol())?;
                if r.precedence() <= p {
                    write!(f, "({r})")
                } else {
                    write!(f, "{r}")
                }
            }
        }
    }
}
