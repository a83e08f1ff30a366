//! Event expressions: named events combined with `&`, `|`, `!` and parentheses
//! over the primitives
//!
//! ```text
//! Omega  Empty  S=<cell>  S=@  SinX  X=<k>  X>=<k>  X<=<k>  X><k>  X<<k>
//! ZS=<colour>  Z[<cell>]=<colour>  occ=<cell>  atom=<label>  atom=<prefix>*
//! ```
//!
//! `S=@` is the no-observer location `∂`; `SinX` is `{S ∈ 𝒳}`; `occ=x` is the
//! objective event `{x ∈ 𝒳}`; `ZS=y` is `{S ∈ 𝒳, Z_S = y}`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::extended::{Event, ExtendedSpace, Location};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Word { text: String, position: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    LParen,
    RParen,
    And,
    Or,
    Not,
    Word(String),
}

fn tokenize(src: &str) -> Vec<(usize, Token)> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let single = match c {
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            '&' => Some(Token::And),
            '|' => Some(Token::Or),
            '!' => Some(Token::Not),
            _ => None,
        };
        if let Some(t) = single {
            out.push((i, t));
            chars.next();
        } else if c.is_whitespace() {
            chars.next();
        } else {
            let mut word = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if c.is_whitespace() || "()&|!".contains(c) {
                    break;
                }
                word.push(c);
                chars.next();
            }
            out.push((i, Token::Word(word)));
        }
    }
    out
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(i, _)| *i)
    }

    fn or(&mut self) -> Result<Expr> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Token::Or) {
            self.pos += 1;
            lhs = Expr::Or(Box::new(lhs), Box::new(self.and()?));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Token::And) {
            self.pos += 1;
            lhs = Expr::And(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        let at = self.offset();
        match self.tokens.get(self.pos).cloned() {
            Some((_, Token::Not)) => {
                self.pos += 1;
                Ok(Expr::Not(Box::new(self.unary()?)))
            }
            Some((_, Token::LParen)) => {
                self.pos += 1;
                let inner = self.or()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(Error::parse(self.offset(), "expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some((i, Token::Word(text))) => {
                self.pos += 1;
                Ok(Expr::Word { text, position: i })
            }
            Some(_) => Err(Error::parse(at, "expected an event")),
            None => Err(Error::parse(at, "unexpected end of expression")),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser {
        tokens: tokenize(src),
        pos: 0,
        end: src.len(),
    };
    let e = p.or()?;
    if p.pos != p.tokens.len() {
        return Err(Error::parse(p.offset(), "unexpected trailing input"));
    }
    Ok(e)
}

/// Resolves expressions against a space and a table of named definitions.
pub struct Resolver<'a> {
    pub ext: &'a ExtendedSpace,
    pub names: &'a BTreeMap<String, String>,
}

impl Resolver<'_> {
    pub fn resolve(&self, src: &str) -> Result<Event> {
        self.resolve_nested(src, &mut Vec::new())
    }

    fn resolve_nested(&self, src: &str, stack: &mut Vec<String>) -> Result<Event> {
        let expr = parse(src)?;
        self.eval(&expr, stack)
    }

    fn eval(&self, e: &Expr, stack: &mut Vec<String>) -> Result<Event> {
        Ok(match e {
            Expr::Not(a) => self.eval(a, stack)?.complement(),
            Expr::And(a, b) => self.eval(a, stack)?.and(&self.eval(b, stack)?),
            Expr::Or(a, b) => self.eval(a, stack)?.or(&self.eval(b, stack)?),
            Expr::Word { text, position } => self.word(text, *position, stack)?,
        })
    }

    fn word(&self, w: &str, at: usize, stack: &mut Vec<String>) -> Result<Event> {
        let ext = self.ext;
        let base = ext.base();
        let cell = |label: &str| {
            base.cell_index(label)
                .ok_or_else(|| Error::parse(at, format!("unknown cell `{label}`")))
        };
        let colour = |label: &str| {
            base.colour_index(label)
                .ok_or_else(|| Error::parse(at, format!("unknown colour `{label}`")))
        };
        let count = |text: &str| {
            text.parse::<usize>()
                .map_err(|_| Error::parse(at, format!("expected a count, found `{text}`")))
        };
        match w {
            "Omega" | "Ω" => return Ok(ext.full()),
            "Empty" | "∅" => return Ok(ext.empty()),
            "SinX" | "S∈X" => return Ok(ext.observer_exists_event()),
            "S=@" | "S=∂" => return Ok(ext.location_event(Location::Boundary)),
            _ => {}
        }
        if let Some(x) = w.strip_prefix("S=") {
            return Ok(ext.location_event(Location::Cell(cell(x)?)));
        }
        if let Some(y) = w.strip_prefix("ZS=") {
            let y = colour(y)?;
            return Ok(ext.event_where(
                |a, l| matches!(l, Location::Cell(x) if a.occupied.contains(x) && a.colours[x] == y),
            ));
        }
        if let Some(rest) = w.strip_prefix("Z[") {
            let (x, y) = rest
                .split_once("]=")
                .ok_or_else(|| Error::parse(at, "expected `Z[<cell>]=<colour>`"))?;
            let (x, y) = (cell(x)?, colour(y)?);
            return Ok(ext.objective_event(|a| a.colours[x] == y));
        }
        if let Some(x) = w.strip_prefix("occ=") {
            let x = cell(x)?;
            return Ok(ext.objective_event(|a| a.occupied.contains(x)));
        }
        if let Some(label) = w.strip_prefix("atom=") {
            let matched = match label.strip_suffix('*') {
                Some(prefix) => ext.objective_event(|a| a.label.starts_with(prefix)),
                None => {
                    if base.atom_index(label).is_none() {
                        return Err(Error::parse(at, format!("unknown atom `{label}`")));
                    }
                    ext.objective_event(|a| a.label == label)
                }
            };
            return Ok(matched);
        }
        for (op, cmp) in [
            (">=", (|a, b| a >= b) as fn(usize, usize) -> bool),
            ("<=", |a, b| a <= b),
            (">", |a, b| a > b),
            ("<", |a, b| a < b),
            ("=", |a, b| a == b),
        ] {
            if let Some(k) = w.strip_prefix("X").and_then(|r| r.strip_prefix(op)) {
                let k = count(k)?;
                return Ok(ext.objective_event(|a| cmp(a.occupancy(), k)));
            }
        }
        if w.contains('=') || w.contains('[') {
            return Err(Error::parse(at, format!("unrecognised primitive `{w}`")));
        }
        let def = self
            .names
            .get(w)
            .ok_or_else(|| Error::UnknownEvent(w.to_string()))?;
        if stack.iter().any(|s| s == w) {
            return Err(Error::parse(
                at,
                format!("event `{w}` is defined in terms of itself"),
            ));
        }
        stack.push(w.to_string());
        let e = self.resolve_nested(def, stack);
        stack.pop();
        e
    }
}
