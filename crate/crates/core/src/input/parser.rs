//! Recursive-descent parser for polynomial expressions with exact rational
//! coefficients.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | base ('^' nonneg-int)?
//! base   := rational | var | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{BiPoly, UniPoly, Q};
use crate::{GermError, Result};

/// Which variables an expression may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `x` and `y`.
    Implicit,
    /// `t` only; stored in the `x` slot of a [`BiPoly`].
    Parametric,
}

const MAX_EXPONENT: u32 = 4096;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Q),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let err = |line, col, msg: String| GermError::Parse { line, col, msg };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, line: l0, col: c0 });
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '.') {
                i += 1;
            }
            let mut lit: String = chars[start..i].iter().collect();
            if lit.chars().any(|ch| !ch.is_ascii_digit()) {
                return Err(GermError::NonRationalLiteral { lit, line: l0, col: c0 });
            }
            let num: BigInt = lit.parse().unwrap();
            let mut den = BigInt::from(1);
            if i < chars.len() && chars[i] == '/' {
                let dstart = i + 1;
                let mut j = dstart;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '.') {
                    j += 1;
                }
                let dlit: String = chars[dstart..j].iter().collect();
                lit = format!("{lit}/{dlit}");
                if dlit.is_empty() {
                    return Err(err(line, col + (j - start), "expected denominator after '/'".into()));
                }
                if dlit.chars().any(|ch| !ch.is_ascii_digit()) {
                    return Err(GermError::NonRationalLiteral { lit, line: l0, col: c0 });
                }
                den = dlit.parse().unwrap();
                if den.is_zero() {
                    return Err(err(l0, c0, format!("zero denominator in '{lit}'")));
                }
                i = j;
            }
            col += i - start;
            out.push(Token {
                tok: Tok::Num(Q::new(num, den)),
                line: l0,
                col: c0,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: l0,
                col: c0,
            });
            continue;
        }
        return Err(err(l0, c0, format!("unexpected character '{c}'")));
    }
    out.push(Token { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    mode: Mode,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        let t = self.peek();
        Err(GermError::Parse {
            line: t.line,
            col: t.col,
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<BiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BiPoly> {
        let mut acc = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<BiPoly> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(-&self.factor()?);
        }
        let b = self.base()?;
        if self.peek().tok != Tok::Caret {
            return Ok(b);
        }
        self.bump();
        let t = self.peek().clone();
        match &t.tok {
            Tok::Num(q) if q.is_integer() && *q >= Q::zero() => {
                let e: u32 = match q.to_integer().try_into() {
                    Ok(e) if e <= MAX_EXPONENT => e,
                    _ => return self.error(format!("exponent exceeds {MAX_EXPONENT}")),
                };
                self.bump();
                Ok(b.pow(e))
            }
            Tok::Num(_) => self.error("exponent must be a nonnegative integer"),
            _ => self.error("expected exponent after '^'"),
        }
    }

    fn base(&mut self) -> Result<BiPoly> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Num(q) => {
                self.bump();
                Ok(BiPoly::constant(q))
            }
            Tok::Ident(name) => {
                let v = match (self.mode, name.as_str()) {
                    (Mode::Implicit, "x") | (Mode::Parametric, "t") => BiPoly::x(),
                    (Mode::Implicit, "y") => BiPoly::y(),
                    _ => {
                        return Err(GermError::UnknownVariable {
                            name,
                            line: t.line,
                            col: t.col,
                        })
                    }
                };
                self.bump();
                Ok(v)
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                if self.peek().tok != Tok::RParen {
                    return self.error("expected ')'");
                }
                self.bump();
                Ok(e)
            }
            Tok::End => self.error("unexpected end of input"),
            _ => self.error("expected a number, variable or '('"),
        }
    }
}

fn parse(text: &str, mode: Mode) -> Result<BiPoly> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, mode };
    let e = p.expr()?;
    if p.peek().tok != Tok::End {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}

/// Parse an implicit polynomial in `x` and `y`.
pub fn parse_poly(text: &str) -> Result<BiPoly> {
    parse(text, Mode::Implicit)
}

/// Parse a polynomial in the parameter `t`.
pub fn parse_univariate(text: &str) -> Result<UniPoly> {
    Ok(parse(text, Mode::Parametric)?.row(0))
}

/// Canonical printed form; `parse_poly(&print_poly(f)) == f`.
pub fn print_poly(f: &BiPoly) -> String {
    f.to_string_xy()
}
