//! Index-notation front end.
//!
//! ```text
//! top      = "{" equation "}ᵀ" [ ".tensor" ] ;
//! equation = sum [ "=" sum ] ;
//! sum      = prod { ( "+" | "-" ) prod } ;
//! prod     = unary { "⊗" unary } ;
//! unary    = "-" unary | scalar "•ₜ" unary | IDENT "•ₐ" unary | primary ;
//! primary  = "(" sum ")" | IDENT [ "|" { index } ] ;
//! scalar   = NUMBER | COMPLEX | IDENT ;
//! index    = IDENT | NATURAL ;
//! ```
//!
//! ASCII spellings: `}T` for `}ᵀ`, `(x)` or `@` for `⊗`, `*.` for `•ₜ`,
//! `@.` for `•ₐ`. Complex literals are written `2i` or `[1-2i]`.

mod elaborate;
mod format;
mod lexer;
mod parser;

pub use elaborate::{elaborate, free_indices, ElabError, Elaborated, Environment};
pub use format::{format, format_equation, FormatError};
pub use lexer::{tokenize, Tok, Token};
pub use parser::{parse, Expr, Index, ScalarRef};

use alloc::string::String;
use core::fmt;

use thiserror::Error;

/// Byte range `start..end` in the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SyntaxErrorKind {
    UnexpectedChar(char),
    /// A `}` without the `ᵀ` marker.
    MissingTranspose,
    UnbalancedBraces,
    Expected { expected: &'static str, found: String },
    TrailingInput,
    NestedEquation,
    BadNumber(String),
    BadIndex(String),
    BadComplex,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind} at byte {}", span.start)]
pub struct SyntaxError {
    pub kind: SyntaxErrorKind,
    pub span: Span,
}

impl fmt::Display for SyntaxErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SyntaxErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            SyntaxErrorKind::MissingTranspose => f.write_str("`}` must be followed by `ᵀ` (or `T`)"),
            SyntaxErrorKind::UnbalancedBraces => f.write_str("unbalanced braces"),
            SyntaxErrorKind::Expected { expected, found } => write!(f, "expected {expected}, found {found}"),
            SyntaxErrorKind::TrailingInput => f.write_str("input continues after `}ᵀ`"),
            SyntaxErrorKind::NestedEquation => f.write_str("only one `=` is allowed"),
            SyntaxErrorKind::BadNumber(s) => write!(f, "malformed number `{s}`"),
            SyntaxErrorKind::BadIndex(s) => write!(f, "index `{s}` is not a natural number"),
            SyntaxErrorKind::BadComplex => f.write_str("malformed complex literal"),
        }
    }
}

/// Any failure on the way from text to trees.
#[derive(Clone, Debug, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Elab(#[from] ElabError),
}

impl Error {
    pub fn category(&self) -> &'static str {
        match self {
            Error::Syntax(_) => "parse",
            Error::Elab(e) => e.category(),
        }
    }
}

/// Parses and elaborates in one go.
pub fn read(src: &str, env: &Environment) -> Result<Elaborated, Error> {
    Ok(elaborate(&parse(src)?, env)?)
}

#[cfg(test)]
mod tests;
