use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::AffineVariety;
use crate::algebra::{MultiPoly, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Semi,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Int(n) => write!(f, "number `{n}`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, column);
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            column += 1;
            out.push(Spanned { tok, line: l0, column: c0 });
        } else if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
        } else if c.is_whitespace() {
            chars.next();
            column += 1;
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                column += 1;
            }
            out.push(Spanned { tok: Tok::Int(s.parse().expect("digits")), line: l0, column: c0 });
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_alphanumeric() || **d == '_') {
                s.push(d);
                chars.next();
                column += 1;
            }
            out.push(Spanned { tok: Tok::Ident(s), line: l0, column: c0 });
        } else {
            return Err(ParseError { line, column, message: format!("unexpected character {c:?}") });
        }
    }
    out.push(Spanned { tok: Tok::Eof, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    vars: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn error(&self, message: String) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError { line: t.line, column: t.column, message }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Tok::Eof => self.error(format!("syntax error at end of input: expected {wanted}")),
            t => self.error(format!("syntax error: expected {wanted}, found {t}")),
        }
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn declarations(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Ident(k) if k == "vars" => {
                self.bump();
            }
            _ => return Err(self.unexpected("`vars`")),
        }
        loop {
            match self.bump() {
                Tok::Ident(name) => {
                    if self.vars.contains(&name) {
                        self.pos -= 1;
                        return Err(self.error(format!("variable `{name}` declared twice")));
                    }
                    self.vars.push(name);
                }
                _ => {
                    self.pos = self.pos.saturating_sub(1);
                    return Err(self.unexpected("variable name"));
                }
            }
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                return Ok(());
            }
        }
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.pos;
                    let d = self.unary()?;
                    let c = constant_value(&d).filter(|c| !c.is_zero()).ok_or_else(|| {
                        let t = &self.toks[at];
                        ParseError {
                            line: t.line,
                            column: t.column,
                            message: "division only by nonzero constants".into(),
                        }
                    })?;
                    acc = acc.scale(&c.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.bump() {
            Tok::Int(n) => {
                let e: u32 = n.try_into().map_err(|_| {
                    self.pos -= 1;
                    self.error("exponent too large".into())
                })?;
                Ok(base.pow(e))
            }
            _ => {
                self.pos -= 1;
                Err(self.unexpected("nonnegative integer exponent"))
            }
        }
    }

    fn atom(&mut self) -> Result<MultiPoly, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(MultiPoly::constant(&self.vars, Rational::from_integer(n)))
            }
            Tok::Ident(name) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => {
                    self.bump();
                    Ok(MultiPoly::var(&self.vars, i))
                }
                None => Err(self.error(format!("undeclared identifier `{name}`"))),
            },
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            _ => Err(self.unexpected("expression")),
        }
    }
}

fn constant_value(p: &MultiPoly) -> Option<Rational> {
    match p.terms().len() {
        0 => Some(Rational::zero()),
        1 => {
            let (e, c) = p.terms().iter().next()?;
            e.iter().all(|&k| k == 0).then(|| c.clone())
        }
        _ => None,
    }
}

/// Parses `vars x, y; f_1; f_2; ...` (trailing `;` optional, `#` comments).
pub fn parse_system(text: &str) -> Result<AffineVariety, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, vars: Vec::new() };
    p.declarations()?;
    let mut gens = Vec::new();
    loop {
        match p.peek() {
            Tok::Eof => break,
            Tok::Semi => {
                p.bump();
                if *p.peek() == Tok::Eof {
                    break;
                }
                gens.push(p.expr()?);
            }
            _ => return Err(p.unexpected("`;`")),
        }
    }
    Ok(AffineVariety::new(p.vars, gens).expect("parser only builds polynomials over declared variables"))
}
