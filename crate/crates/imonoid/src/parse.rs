//! Parser for terms, identities and quasi-identities.
//!
//! ```text
//! quasi    := identity ("," identity)* "=>" identity
//! identity := term "=" term
//! term     := product ("+" product)*
//! product  := factor ("*" factor)*
//! factor   := "¬" factor | atom "'"*
//! atom     := "0" | "1" | var | "(" term ")"
//! var      := [a-z] digits?
//! ```
//!
//! `≈` is accepted for `=` and `′` for `'`. Variables are numbered by first
//! occurrence across the whole input.

use crate::term::{Identity, Law, QuasiIdentity, Term};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Var(String),
    Zero,
    One,
    Star,
    Plus,
    Prime,
    Not,
    LParen,
    RParen,
    Eq,
    Comma,
    Implies,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Var(v) => format!("variable `{v}`"),
        Tok::Zero => "`0`".into(),
        Tok::One => "`1`".into(),
        Tok::Star => "`*`".into(),
        Tok::Plus => "`+`".into(),
        Tok::Prime => "`'`".into(),
        Tok::Not => "`¬`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Eq => "`=`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Implies => "`=>`".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some((pos, c)) = chars.next() {
        let tok = match c {
            c if c.is_whitespace() => continue,
            'a'..='z' => {
                let mut name = c.to_string();
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_ascii_digit() {
                        name.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                Tok::Var(name)
            }
            '0' => Tok::Zero,
            '1' => Tok::One,
            '*' | '·' => Tok::Star,
            '+' => Tok::Plus,
            '\'' | '′' => Tok::Prime,
            '¬' => Tok::Not,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '≈' => Tok::Eq,
            '=' => {
                if let Some(&(_, '>')) = chars.peek() {
                    chars.next();
                    Tok::Implies
                } else {
                    Tok::Eq
                }
            }
            other => {
                return Err(ParseError {
                    offset: pos,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((tok, pos));
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    names: Vec<String>,
}

impl Parser {
    fn new(src: &str) -> Result<Parser, ParseError> {
        Ok(Parser {
            toks: lex(src)?,
            pos: 0,
            names: Vec::new(),
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.offset(),
            message: format!("expected {expected}, found {}", describe(self.peek())),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(what)
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut t = self.product()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            t = Term::join(t, self.product()?);
        }
        Ok(t)
    }

    fn product(&mut self) -> Result<Term, ParseError> {
        let mut t = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            t = Term::mul(t, self.factor()?);
        }
        Ok(t)
    }

    fn factor(&mut self) -> Result<Term, ParseError> {
        if *self.peek() == Tok::Not {
            self.bump();
            return Ok(Term::inv(self.factor()?));
        }
        let mut t = self.atom()?;
        while *self.peek() == Tok::Prime {
            self.bump();
            t = Term::inv(t);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Zero => {
                self.bump();
                Ok(Term::Const0)
            }
            Tok::One => {
                self.bump();
                Ok(Term::Const1)
            }
            Tok::Var(name) => {
                self.bump();
                let idx = match self.names.iter().position(|n| *n == name) {
                    Some(i) => i,
                    None => {
                        self.names.push(name);
                        self.names.len() - 1
                    }
                };
                Ok(Term::Var(idx))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            _ => self.error("a term"),
        }
    }

    fn equation(&mut self) -> Result<(Term, Term), ParseError> {
        let l = self.term()?;
        self.expect(Tok::Eq, "`=`")?;
        let r = self.term()?;
        Ok((l, r))
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.error("end of input")
        }
    }
}

/// Parses a single term. Variables are numbered by first occurrence.
pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Parses `s = t`.
pub fn parse_identity(src: &str) -> Result<Identity, ParseError> {
    let mut p = Parser::new(src)?;
    let (l, r) = p.equation()?;
    p.finish()?;
    let k = p.names.len();
    Ok(Identity::with_names(l, r, k, p.names))
}

/// Parses `s1 = t1, ..., sk = tk => s = t`. Zero premises are allowed when
/// the input starts with `=>`.
pub fn parse_quasi(src: &str) -> Result<QuasiIdentity, ParseError> {
    let mut p = Parser::new(src)?;
    let mut premises = Vec::new();
    if *p.peek() != Tok::Implies {
        premises.push(p.equation()?);
        while *p.peek() == Tok::Comma {
            p.bump();
            premises.push(p.equation()?);
        }
    }
    p.expect(Tok::Implies, "`=>` or `,`")?;
    let conclusion = p.equation()?;
    p.finish()?;
    let k = p.names.len();
    let names = p.names;
    let mk = |(l, r): (Term, Term)| Identity::with_names(l, r, k, names.clone());
    Ok(QuasiIdentity::with_names(
        premises.into_iter().map(mk).collect(),
        mk(conclusion),
        k,
        names,
    ))
}

/// Parses either form, choosing by the presence of `=>`.
pub fn parse_law(src: &str) -> Result<Law, ParseError> {
    if src.contains("=>") {
        parse_quasi(src).map(Law::Quasi)
    } else {
        parse_identity(src).map(Law::Identity)
    }
}
