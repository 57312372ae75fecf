//! Recursive-descent parser for the polynomial grammar.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary ("*" unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" INT)?
//! atom   := INT | IDENT | "(" expr ")"
//! ```
//! Whitespace is insignificant and `#` starts a comment running to the end
//! of the line. Multiplication must be written explicitly.

use std::sync::Arc;

use super::ParseError;
use crate::poly::{Context, Poly, PolyError};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(s) => format!("number `{s}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    col: usize,
}

fn lex(text: &str, origin: Pos) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut line = origin.line;
    let mut col = origin.col;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push((Tok::Int(s), pos));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars
                .peek()
                .filter(|d| d.is_ascii_alphanumeric() || **d == '_')
            {
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push((Tok::Ident(s), pos));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                return Err(ParseError::Syntax {
                    line,
                    col,
                    msg: format!("unexpected character `{c}`"),
                })
            }
        };
        chars.next();
        col += 1;
        out.push((tok, pos));
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    ctx: &'a Arc<Context>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        let Pos { line, col } = self.pos();
        ParseError::Syntax {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            let pos = self.pos();
            self.bump();
            let rhs = self.unary()?;
            acc = acc.try_mul(&rhs).map_err(|e| overflow(e, pos))?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let (tok, pos) = self.bump();
        match tok {
            Tok::Int(digits) => {
                let e: u32 = digits.parse().map_err(|_| ParseError::ExponentOverflow {
                    line: pos.line,
                    col: pos.col,
                })?;
                base.try_pow(e).map_err(|err| overflow(err, pos))
            }
            Tok::Minus => Err(ParseError::NegativeExponent {
                line: pos.line,
                col: pos.col,
            }),
            other => Err(ParseError::Syntax {
                line: pos.line,
                col: pos.col,
                msg: format!("expected an integer exponent, found {}", other.describe()),
            }),
        }
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Int(digits) => {
                let p = self.ctx.p() as u64;
                let v = digits
                    .bytes()
                    .fold(0u64, |acc, b| (acc * 10 + (b - b'0') as u64) % p);
                Ok(Poly::constant(self.ctx, v as i64))
            }
            Tok::Ident(name) => {
                Poly::var_named(self.ctx, &name).map_err(|_| ParseError::UnknownVariable {
                    name,
                    line: pos.line,
                    col: pos.col,
                })
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(
                        self.syntax(format!("expected `)`, found {}", self.peek().describe()))
                    );
                }
                self.bump();
                Ok(inner)
            }
            other => Err(ParseError::Syntax {
                line: pos.line,
                col: pos.col,
                msg: format!(
                    "expected a number, variable or `(`, found {}",
                    other.describe()
                ),
            }),
        }
    }
}

fn overflow(e: PolyError, pos: Pos) -> ParseError {
    match e {
        PolyError::ExponentOverflow => ParseError::ExponentOverflow {
            line: pos.line,
            col: pos.col,
        },
        other => ParseError::Context(other),
    }
}

/// Parses a polynomial over `ctx` into canonical form.
pub fn parse_poly(text: &str, ctx: &Arc<Context>) -> Result<Poly, ParseError> {
    parse_poly_at(text, ctx, 1, 1)
}

/// As [`parse_poly`], reporting positions relative to `line:col`.
pub(crate) fn parse_poly_at(
    text: &str,
    ctx: &Arc<Context>,
    line: usize,
    col: usize,
) -> Result<Poly, ParseError> {
    let toks = lex(text, Pos { line, col })?;
    let mut parser = Parser { toks, at: 0, ctx };
    let f = parser.expr()?;
    match parser.peek() {
        Tok::Eof => Ok(f),
        Tok::Ident(_) | Tok::Int(_) | Tok::LParen => Err(parser.syntax(format!(
            "unexpected {}; multiplication must be written with `*`",
            parser.peek().describe()
        ))),
        other => Err(parser.syntax(format!("unexpected {}", other.describe()))),
    }
}
