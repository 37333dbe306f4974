//! Canonical s-expression dump, e.g.
//! `(contr 1 1 (prod (tensor "T") (tensor "T2")))`.

use core::fmt;

use super::{Node, Scalar, TensorTree};
use crate::linalg::Complex64;

/// Writes a complex number as `2`, `-0.5` or `[1+2i]`.
pub fn write_complex(f: &mut dyn fmt::Write, z: Complex64) -> fmt::Result {
    if z.im == 0.0 {
        write!(f, "{}", z.re)
    } else if z.im < 0.0 {
        write!(f, "[{}-{}i]", z.re, -z.im)
    } else {
        write!(f, "[{}+{}i]", z.re, z.im)
    }
}

fn write_quoted(f: &mut fmt::Formatter<'_>, s: &str) -> fmt::Result {
    f.write_str("\"")?;
    for ch in s.chars() {
        if ch == '"' || ch == '\\' {
            f.write_str("\\")?;
        }
        write!(f, "{ch}")?;
    }
    f.write_str("\"")
}

fn write_scalar(f: &mut fmt::Formatter<'_>, s: &Scalar) -> fmt::Result {
    match &s.name {
        Some(n) => f.write_str(n),
        None => write_complex(f, s.value),
    }
}

impl fmt::Display for TensorTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Tensor(leaf) => match &leaf.name {
                Some(n) => {
                    f.write_str("(tensor ")?;
                    write_quoted(f, n)?;
                    f.write_str(")")
                }
                None => f.write_str("(tensor _)"),
            },
            Node::Smul(s, c) => {
                f.write_str("(smul ")?;
                write_scalar(f, s)?;
                write!(f, " {c})")
            }
            Node::Neg(c) => write!(f, "(neg {c})"),
            Node::Add(l, r) => write!(f, "(add {l} {r})"),
            Node::Action(a, c) => write!(f, "(action {} {c})", a.name.as_deref().unwrap_or("_")),
            Node::Perm(p, c) => {
                f.write_str("(perm [")?;
                for (n, v) in p.map().iter().enumerate() {
                    if n > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, "] {c})")
            }
            Node::Prod(l, r) => write!(f, "(prod {l} {r})"),
            Node::Contr { i, j, child } => write!(f, "(contr {i} {j} {child})"),
            Node::Eval { i, x, child } => write!(f, "(eval {i} {x} {child})"),
        }
    }
}

/// Dump of an equation between two trees.
pub struct EquationDump<'a>(pub &'a TensorTree, pub &'a TensorTree);

impl fmt::Display for EquationDump<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(eq {} {})", self.0, self.1)
    }
}
