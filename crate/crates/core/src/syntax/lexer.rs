use alloc::string::String;
use alloc::vec::Vec;

use super::{Span, SyntaxError, SyntaxErrorKind};
use crate::linalg::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    /// `{`
    Open,
    /// `}ᵀ` or `}T`
    Close,
    /// `.tensor`
    DotTensor,
    Bar,
    Plus,
    Minus,
    Equals,
    /// `⊗`, `(x)` or `@`
    Times,
    /// `•ₜ` or `*.`
    Smul,
    /// `•ₐ` or `@.`
    Act,
    LParen,
    RParen,
    Ident(String),
    /// A non-negative real literal, kept as written.
    Number(String),
    /// `2i`, `[1-2i]`
    Complex(Complex64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

fn ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\'' || c == '′'
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn err(&self, kind: SyntaxErrorKind, start: usize) -> SyntaxError {
        SyntaxError {
            kind,
            span: Span {
                start,
                end: self.pos.max(start + 1),
            },
        }
    }

    /// Digits with an optional fractional part.
    fn number_text(&mut self) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.rest().starts_with('.') && self.rest()[1..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
        }
        &self.src[start..self.pos]
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += self.peek().map_or(0, char::len_utf8);
        }
    }

    /// `[re±imi]`, after the opening bracket.
    fn complex_literal(&mut self, start: usize) -> Result<Complex64, SyntaxError> {
        let bad = |lx: &Self| lx.err(SyntaxErrorKind::BadComplex, start);
        self.skip_ws();
        let re_neg = self.eat("-") || self.eat("−");
        self.skip_ws();
        let re_text = self.number_text();
        let re: f64 = re_text.parse().map_err(|_| bad(self))?;
        self.skip_ws();
        let im_neg = if self.eat("+") {
            false
        } else if self.eat("-") || self.eat("−") {
            true
        } else {
            return Err(bad(self));
        };
        self.skip_ws();
        let im_text = self.number_text();
        let im: f64 = if im_text.is_empty() { 1.0 } else { im_text.parse().map_err(|_| bad(self))? };
        if !self.eat("i") {
            return Err(bad(self));
        }
        self.skip_ws();
        if !self.eat("]") {
            return Err(bad(self));
        }
        Ok(Complex64::new(
            if re_neg { -re } else { re },
            if im_neg { -im } else { im },
        ))
    }

    fn next_token(&mut self) -> Result<Option<Token>, SyntaxError> {
        self.skip_ws();
        let start = self.pos;
        let Some(c) = self.peek() else {
            return Ok(None);
        };
        let tok = if self.eat("{") {
            Tok::Open
        } else if self.eat("}") {
            if self.eat("ᵀ") || self.eat("T") {
                Tok::Close
            } else {
                return Err(self.err(SyntaxErrorKind::MissingTranspose, start));
            }
        } else if self.eat(".tensor") {
            Tok::DotTensor
        } else if self.eat("|") {
            Tok::Bar
        } else if self.eat("+") {
            Tok::Plus
        } else if self.eat("-") || self.eat("−") {
            Tok::Minus
        } else if self.eat("=") {
            Tok::Equals
        } else if self.eat("⊗") || self.eat("(x)") {
            Tok::Times
        } else if self.eat("•ₜ") || self.eat("*.") {
            Tok::Smul
        } else if self.eat("•ₐ") || self.eat("@.") {
            Tok::Act
        } else if self.eat("@") {
            Tok::Times
        } else if self.eat("(") {
            Tok::LParen
        } else if self.eat(")") {
            Tok::RParen
        } else if self.eat("[") {
            Tok::Complex(self.complex_literal(start)?)
        } else if c.is_ascii_digit() {
            let text = self.number_text();
            if self.rest().starts_with('i') && !self.rest()[1..].starts_with(ident_continue) {
                self.pos += 1;
                let im: f64 = text.parse().map_err(|_| self.err(SyntaxErrorKind::BadComplex, start))?;
                Tok::Complex(Complex64::new(0.0, im))
            } else {
                Tok::Number(String::from(text))
            }
        } else if ident_start(c) {
            while self.peek().is_some_and(ident_continue) {
                self.pos += self.peek().map_or(0, char::len_utf8);
            }
            Tok::Ident(String::from(&self.src[start..self.pos]))
        } else {
            self.pos += c.len_utf8();
            return Err(self.err(SyntaxErrorKind::UnexpectedChar(c), start));
        };
        Ok(Some(Token {
            tok,
            span: Span { start, end: self.pos },
        }))
    }
}

/// Splits `src` into tokens. ASCII spellings are normalised here.
pub fn tokenize(src: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut lx = Lexer { src, pos: 0 };
    let mut out = Vec::new();
    while let Some(t) = lx.next_token()? {
        out.push(t);
    }
    Ok(out)
}
