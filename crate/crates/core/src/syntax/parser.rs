use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::lexer::{tokenize, Tok, Token};
use super::{Span, SyntaxError, SyntaxErrorKind};
use crate::linalg::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub enum Index {
    Symbol { name: String, span: Span },
    Number { value: usize, span: Span },
}

#[derive(Clone, Debug, PartialEq)]
pub enum ScalarRef {
    Literal(Complex64),
    Name { name: String, span: Span },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Atom {
        name: String,
        indices: Vec<Index>,
        span: Span,
    },
    Prod(Box<Expr>, Box<Expr>),
    /// `a - b` parses as `Add(a, Neg(b))`.
    Add(Box<Expr>, Box<Expr>),
    Smul(ScalarRef, Box<Expr>),
    Action {
        group: String,
        span: Span,
        expr: Box<Expr>,
    },
    Neg(Box<Expr>),
    /// Only at top level.
    Eq(Box<Expr>, Box<Expr>),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|t| &t.tok)
    }

    fn span_here(&self) -> Span {
        self.toks
            .get(self.pos)
            .map(|t| t.span)
            .unwrap_or(Span {
                start: self.len,
                end: self.len,
            })
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        self.pos += 1;
        t
    }

    fn found(&self) -> String {
        match self.peek() {
            None => "end of input".to_string(),
            Some(t) => describe(t),
        }
    }

    fn expected(&self, what: &'static str) -> SyntaxError {
        let kind = match self.peek() {
            None => SyntaxErrorKind::UnbalancedBraces,
            Some(_) => SyntaxErrorKind::Expected {
                expected: what,
                found: self.found(),
            },
        };
        SyntaxError {
            kind,
            span: self.span_here(),
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn top(&mut self) -> Result<Expr, SyntaxError> {
        if !self.eat(&Tok::Open) {
            return Err(self.expected("`{`"));
        }
        let e = self.equation()?;
        if !self.eat(&Tok::Close) {
            if self.peek() == Some(&Tok::Open) {
                return Err(SyntaxError {
                    kind: SyntaxErrorKind::UnbalancedBraces,
                    span: self.span_here(),
                });
            }
            return Err(self.expected("`}ᵀ`"));
        }
        self.eat(&Tok::DotTensor);
        if self.peek().is_some() {
            return Err(SyntaxError {
                kind: SyntaxErrorKind::TrailingInput,
                span: self.span_here(),
            });
        }
        Ok(e)
    }

    fn equation(&mut self) -> Result<Expr, SyntaxError> {
        let l = self.sum()?;
        if self.eat(&Tok::Equals) {
            let r = self.sum()?;
            if self.peek() == Some(&Tok::Equals) {
                return Err(SyntaxError {
                    kind: SyntaxErrorKind::NestedEquation,
                    span: self.span_here(),
                });
            }
            return Ok(Expr::Eq(Box::new(l), Box::new(r)));
        }
        Ok(l)
    }

    fn sum(&mut self) -> Result<Expr, SyntaxError> {
        let mut acc = self.prod()?;
        loop {
            if self.eat(&Tok::Plus) {
                let r = self.prod()?;
                acc = Expr::Add(Box::new(acc), Box::new(r));
            } else if self.eat(&Tok::Minus) {
                let r = self.prod()?;
                acc = Expr::Add(Box::new(acc), Box::new(Expr::Neg(Box::new(r))));
            } else {
                return Ok(acc);
            }
        }
    }

    fn prod(&mut self) -> Result<Expr, SyntaxError> {
        let mut acc = self.unary()?;
        while self.eat(&Tok::Times) {
            let r = self.unary()?;
            acc = Expr::Prod(Box::new(acc), Box::new(r));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        if self.eat(&Tok::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        match (self.peek().cloned(), self.peek2()) {
            (Some(Tok::Number(text)), Some(Tok::Smul)) => {
                let span = self.bump().span;
                self.bump();
                let v: f64 = text.parse().map_err(|_| SyntaxError {
                    kind: SyntaxErrorKind::BadNumber(text.clone()),
                    span,
                })?;
                Ok(Expr::Smul(ScalarRef::Literal(Complex64::new(v, 0.0)), Box::new(self.unary()?)))
            }
            (Some(Tok::Complex(z)), Some(Tok::Smul)) => {
                self.bump();
                self.bump();
                Ok(Expr::Smul(ScalarRef::Literal(z), Box::new(self.unary()?)))
            }
            (Some(Tok::Ident(name)), Some(Tok::Smul)) => {
                let span = self.bump().span;
                self.bump();
                Ok(Expr::Smul(ScalarRef::Name { name, span }, Box::new(self.unary()?)))
            }
            (Some(Tok::Ident(group)), Some(Tok::Act)) => {
                let span = self.bump().span;
                self.bump();
                Ok(Expr::Action {
                    group,
                    span,
                    expr: Box::new(self.unary()?),
                })
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Expr, SyntaxError> {
        if self.eat(&Tok::LParen) {
            let e = self.sum()?;
            if !self.eat(&Tok::RParen) {
                return Err(self.expected("`)`"));
            }
            return Ok(e);
        }
        let Some(Tok::Ident(name)) = self.peek().cloned() else {
            return Err(self.expected("a tensor name or `(`"));
        };
        let start = self.bump().span;
        let mut end = start.end;
        let mut indices = Vec::new();
        if self.eat(&Tok::Bar) {
            end = self.toks[self.pos - 1].span.end;
            loop {
                match self.peek().cloned() {
                    Some(Tok::Ident(s)) => {
                        let span = self.bump().span;
                        end = span.end;
                        indices.push(Index::Symbol { name: s, span });
                    }
                    Some(Tok::Number(text)) => {
                        let span = self.bump().span;
                        end = span.end;
                        let value = text.parse::<usize>().map_err(|_| SyntaxError {
                            kind: SyntaxErrorKind::BadIndex(text.clone()),
                            span,
                        })?;
                        indices.push(Index::Number { value, span });
                    }
                    _ => break,
                }
            }
        }
        Ok(Expr::Atom {
            name,
            indices,
            span: Span {
                start: start.start,
                end,
            },
        })
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Open => "`{`".into(),
        Tok::Close => "`}ᵀ`".into(),
        Tok::DotTensor => "`.tensor`".into(),
        Tok::Bar => "`|`".into(),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Equals => "`=`".into(),
        Tok::Times => "`⊗`".into(),
        Tok::Smul => "`•ₜ`".into(),
        Tok::Act => "`•ₐ`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Ident(s) => alloc::format!("identifier `{s}`"),
        Tok::Number(s) => alloc::format!("number `{s}`"),
        Tok::Complex(z) => alloc::format!("complex literal {z}"),
    }
}

/// Parses a full `{ … }ᵀ` expression.
pub fn parse(src: &str) -> Result<Expr, SyntaxError> {
    let toks = tokenize(src)?;
    Parser {
        toks,
        pos: 0,
        len: src.len(),
    }
    .top()
}
