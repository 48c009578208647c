//! Expression text: lexer, parser, normalization of parsed trees, printer.
//!
//! ```text
//! expr := sum
//! sum  := ['-'] prod (('+'|'-') prod)*
//! prod := power (('*'|'/') power)*       at most one non-scalar factor; '/' by scalars only
//! power := atom ['^' INT]                 powers of scalars only
//! atom := IDENT | INT | 'k' | 'D(' expr ',' INT ')' | ':' atom atom+ ':' | 'exp(' expr ')' | '(' expr ')'
//! ```
//!
//! `:a b c:` abbreviates `:a :b c::`. Identifiers are matched against the
//! presentation's names, longest match first, so `G+` and `xi-` lex as
//! single tokens.

use super::calculus::Engine;
use super::presentation::Presentation;
use super::state::{LatVec, Monomial, State};
use super::EngineError;
use crate::scalars::LevelScalar;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    /// A scalar multiple of the vacuum.
    Scalar(LevelScalar),
    Ident(String),
    Exp(Box<Expr>),
    Deriv(Box<Expr>, u32),
    Nop(Box<Expr>, Box<Expr>),
    Scale(LevelScalar, Box<Expr>),
    Sum(Vec<Expr>),
}

impl Expr {
    fn scalar(&self) -> Option<&LevelScalar> {
        match self {
            Expr::Scalar(c) => Some(c),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    K,
    Ident(String),
    D,
    Exp,
    Sym(char),
}

struct Lexer<'a> {
    src: &'a str,
    names: Vec<&'a str>,
    toks: Vec<(Tok, usize, usize)>,
}

fn line_col(src: &str, pos: usize) -> (usize, usize) {
    let before = &src[..pos.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(pos, |i| pos - i - 1) + 1;
    (line, col)
}

fn syntax(src: &str, pos: usize, msg: impl Into<String>) -> EngineError {
    let (line, col) = line_col(src, pos);
    EngineError::Syntax { line, col, msg: msg.into() }
}

impl<'a> Lexer<'a> {
    fn run(mut self) -> Result<Vec<(Tok, usize, usize)>, EngineError> {
        let bytes = self.src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = self.src[start..i]
                    .parse::<i64>()
                    .map_err(|_| syntax(self.src, start, "integer literal too large"))?;
                self.toks.push((Tok::Int(n), start, i));
                continue;
            }
            if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                // longest known name starting here, allowing +/- suffixes
                let best = self
                    .names
                    .iter()
                    .filter(|n| self.src[start..].starts_with(**n))
                    .filter(|n| {
                        let end = start + n.len();
                        end >= bytes.len() || !(bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_')
                    })
                    .max_by_key(|n| n.len())
                    .copied();
                if let Some(n) = best {
                    i = start + n.len();
                    self.toks.push((Tok::Ident(n.to_string()), start, i));
                    continue;
                }
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &self.src[start..i];
                let tok = match word {
                    "k" => Tok::K,
                    "D" => Tok::D,
                    "exp" => Tok::Exp,
                    _ => return Err(EngineError::UnknownGenerator(word.to_string())),
                };
                self.toks.push((tok, start, i));
                continue;
            }
            if "+-*/^(),:".contains(c) {
                self.toks.push((Tok::Sym(c), i, i + 1));
                i += 1;
                continue;
            }
            return Err(syntax(self.src, i, format!("unexpected character `{c}`")));
        }
        Ok(self.toks)
    }
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.src.len(), |t| t.1)
    }

    fn err(&self, msg: impl Into<String>) -> EngineError {
        syntax(self.src, self.here(), msg)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), EngineError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn sum(&mut self) -> Result<Expr, EngineError> {
        let mut terms = Vec::new();
        let mut neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        loop {
            let t = self.product()?;
            terms.push(if neg { negate(t) } else { t });
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { fold_sum(terms) })
    }

    fn product(&mut self) -> Result<Expr, EngineError> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                let rhs = self.power()?;
                acc = match (acc.scalar(), rhs.scalar()) {
                    (Some(a), Some(b)) => Expr::Scalar(a * b),
                    (Some(a), None) => scale(a.clone(), rhs),
                    (None, Some(b)) => scale(b.clone(), acc),
                    (None, None) => return Err(self.err("product of two states; use `:a b:`")),
                };
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let at = self.here();
                self.pos += 1;
                let rhs = self.power()?;
                let Some(b) = rhs.scalar() else {
                    return Err(syntax(self.src, at, "division by a state"));
                };
                let inv = b.inv().map_err(EngineError::Scalar)?;
                acc = match acc.scalar() {
                    Some(a) => Expr::Scalar(a * &inv),
                    None => scale(inv, acc),
                };
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Expr, EngineError> {
        let base = self.atom()?;
        if self.eat('^') {
            let Some(Tok::Int(n)) = self.peek().cloned() else {
                return Err(self.err("expected an integer exponent"));
            };
            self.pos += 1;
            let Some(b) = base.scalar() else {
                return Err(self.err("only scalars can be raised to a power"));
            };
            return Ok(Expr::Scalar(b.pow(n as u32)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, EngineError> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.err("unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Int(n) => Ok(Expr::Scalar(LevelScalar::int(n))),
            Tok::K => Ok(Expr::Scalar(LevelScalar::k())),
            Tok::Ident(name) => Ok(Expr::Ident(name)),
            Tok::D => {
                self.expect('(')?;
                let e = self.sum()?;
                self.expect(',')?;
                let Some(Tok::Int(n)) = self.peek().cloned() else {
                    return Err(self.err("expected derivative order"));
                };
                self.pos += 1;
                self.expect(')')?;
                Ok(Expr::Deriv(Box::new(e), n as u32))
            }
            Tok::Exp => {
                self.expect('(')?;
                let e = self.sum()?;
                self.expect(')')?;
                Ok(Expr::Exp(Box::new(e)))
            }
            Tok::Sym('(') => {
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym(':') => {
                let mut parts = vec![self.atom()?];
                loop {
                    if parts.len() >= 2 && self.eat(':') {
                        break;
                    }
                    if self.peek().is_none() {
                        return Err(self.err("unterminated normal-ordered product"));
                    }
                    parts.push(self.atom()?);
                }
                let mut it = parts.into_iter().rev();
                let mut acc = it.next().unwrap();
                for p in it {
                    acc = Expr::Nop(Box::new(p), Box::new(acc));
                }
                Ok(acc)
            }
            Tok::Sym(c) => {
                self.pos -= 1;
                Err(self.err(format!("unexpected `{c}`")))
            }
        }
    }
}

fn negate(e: Expr) -> Expr {
    match e {
        Expr::Scalar(c) => Expr::Scalar(-c),
        other => scale(LevelScalar::int(-1), other),
    }
}

fn scale(c: LevelScalar, e: Expr) -> Expr {
    match e {
        Expr::Scale(d, inner) => Expr::Scale(&c * &d, inner),
        other => Expr::Scale(c, Box::new(other)),
    }
}

fn fold_sum(terms: Vec<Expr>) -> Expr {
    if terms.iter().all(|t| t.scalar().is_some()) {
        let mut s = LevelScalar::zero();
        for t in &terms {
            s += t.scalar().unwrap();
        }
        return Expr::Scalar(s);
    }
    Expr::Sum(terms)
}

/// Parses expression text against a presentation's identifiers.
pub fn parse(text: &str, pres: &Presentation) -> Result<Expr, EngineError> {
    let names: Vec<&str> = pres.known_names().collect();
    let toks = Lexer { src: text, names, toks: Vec::new() }.run()?;
    let mut p = Parser { src: text, toks, pos: 0 };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

impl<'p> Engine<'p> {
    /// Evaluates an expression tree to normal form.
    pub fn normalize(&self, e: &Expr) -> Result<State, EngineError> {
        let pres = self.presentation();
        Ok(match e {
            Expr::Scalar(c) => State::scalar(c.clone()),
            Expr::Ident(n) => {
                if let Some(i) = pres.index_of(n) {
                    State::generator(i)
                } else if let Some(s) = pres.alias(n) {
                    s.clone()
                } else if let Some(v) = pres.exponential(n) {
                    State::monomial(Monomial::exponential(v.clone()))
                } else {
                    return Err(EngineError::UnknownGenerator(n.clone()));
                }
            }
            Expr::Exp(inner) => State::monomial(Monomial::exponential(self.lattice_vector(inner)?)),
            Expr::Deriv(inner, n) => self.derive_n(&self.normalize(inner)?, *n)?,
            Expr::Nop(a, b) => self.nop(&self.normalize(a)?, &self.normalize(b)?)?,
            Expr::Scale(c, inner) => self.normalize(inner)?.scale(c),
            Expr::Sum(ts) => {
                let mut s = State::zero();
                for t in ts {
                    s += &self.normalize(t)?;
                }
                s
            }
        })
    }

    /// A lattice vector written as a linear combination of lattice basis
    /// generators (or aliases of such).
    pub fn lattice_vector(&self, e: &Expr) -> Result<LatVec, EngineError> {
        let pres = self.presentation();
        let Some(lat) = pres.lattice() else {
            return Err(EngineError::Unsupported("exp(...) in a presentation without lattice".into()));
        };
        let s = self.normalize(e)?;
        let mut v = vec![LevelScalar::zero(); lat.basis.len()];
        for (m, c) in s.terms() {
            let slot = match (m.factors.as_slice(), &m.exp) {
                ([f], None) if f.deriv == 0 => pres.lattice_slot(f.gen as usize),
                _ => None,
            };
            let Some(slot) = slot else {
                return Err(EngineError::Unsupported(
                    "exponent must be a linear combination of lattice generators".into(),
                ));
            };
            v[slot] = c.clone();
        }
        Ok(LatVec(v))
    }

    /// Parses and normalizes in one step.
    pub fn eval(&self, text: &str) -> Result<State, EngineError> {
        self.normalize(&parse(text, self.presentation())?)
    }
}

fn fmt_factor(pres: &Presentation, f: super::state::Factor) -> String {
    let n = pres.name(f.gen as usize);
    if f.deriv == 0 {
        n.to_string()
    } else {
        format!("D({},{})", n, f.deriv)
    }
}

/// `c` rendered so that `c*x` reparses; `None` for `c = 1`.
fn fmt_coeff(c: &LevelScalar) -> String {
    if c.is_compound() {
        format!("({c})")
    } else {
        c.to_string()
    }
}

fn fmt_latvec(pres: &Presentation, v: &LatVec) -> String {
    let lat = pres.lattice().expect("exponential without lattice");
    let mut s = State::zero();
    for (slot, c) in v.0.iter().enumerate() {
        s.add_term(Monomial::single(super::state::Factor::new(lat.basis[slot], 0)), c.clone());
    }
    print(&s, pres)
}

fn fmt_monomial(pres: &Presentation, m: &Monomial) -> String {
    let mut parts: Vec<String> = m.factors.iter().map(|f| fmt_factor(pres, *f)).collect();
    if let Some(v) = &m.exp {
        parts.push(format!("exp({})", fmt_latvec(pres, v)));
    }
    match parts.len() {
        0 => "1".to_string(),
        1 => parts.pop().unwrap(),
        _ => format!(":{}:", parts.join(" ")),
    }
}

/// Prints a normal form; the output reparses to the same state.
pub fn print(s: &State, pres: &Presentation) -> String {
    if s.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in s.terms().enumerate() {
        let neg = c.is_negative_constant();
        let mag = if neg { -c } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let body = fmt_monomial(pres, m);
        if m.is_vacuum() {
            out.push_str(&fmt_coeff(&mag));
        } else if mag.is_one() {
            out.push_str(&body);
        } else {
            out.push_str(&format!("{}*{}", fmt_coeff(&mag), body));
        }
    }
    out
}

/// Prints a λ-polynomial as `c0 + (c1)*λ + ...` with the ASCII name `lambda`.
pub fn print_lambda(p: &super::state::LambdaPoly, pres: &Presentation) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (n, c) in p.iter().collect::<Vec<_>>().into_iter().rev() {
        let body = print(c, pres);
        parts.push(match n {
            0 => format!("({body})"),
            1 => format!("({body})*lambda"),
            _ => format!("({body})*lambda^{n}"),
        });
    }
    parts.join(" + ")
}
