//! Tree to index-notation text.
//!
//! Every index position gets a variable; contractions and additions unify
//! variables, evaluations pin them to numerals. A permutation whose output
//! order matters is written as a product with unit tensors, so the result
//! re-elaborates to a tree with the same semantics.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use thiserror::Error;

use super::elaborate::Environment;
use crate::species::Color;
use crate::tensor::succ_above;
use crate::tree::{write_complex, Node, TensorTree};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("leaf tensor has no name")]
    AnonymousLeaf,
    #[error("group element has no name")]
    AnonymousGroup,
    #[error("no unit tensor for color `{0}` in the environment")]
    MissingUnit(String),
    #[error("evaluation of a group-acted index has no index-notation form")]
    EvalOfAction,
}

enum F {
    Atom(String, Vec<usize>),
    Prod(Box<F>, Box<F>),
    Add(Box<F>, Box<F>),
    Neg(Box<F>),
    Smul(String, Box<F>),
    Act(String, Box<F>),
}

#[derive(Default)]
struct Vars {
    parent: Vec<usize>,
    numeral: Vec<Option<usize>>,
    acted: Vec<bool>,
}

impl Vars {
    fn fresh(&mut self) -> usize {
        let v = self.parent.len();
        self.parent.push(v);
        self.numeral.push(None);
        self.acted.push(false);
        v
    }

    fn find(&mut self, v: usize) -> usize {
        let mut r = v;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = v;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb] = ra;
            self.numeral[ra] = self.numeral[ra].or(self.numeral[rb]);
            self.acted[ra] |= self.acted[rb];
        }
    }
}

struct Formatter<'e> {
    env: &'e Environment,
    vars: Vars,
}

impl Formatter<'_> {
    /// Name of the environment tensor holding the unit of signature
    /// `[c, τc]`.
    fn unit_name(&self, c: Color) -> Result<String, FormatError> {
        let sp = &self.env.species;
        let dual = sp.dual_color(c).expect("signature colors are valid");
        let want = crate::tensor::Signature::new(alloc::vec![c, dual]);
        let dual_name = sp.color_name(dual);
        for prefix in ["δ_", "delta_"] {
            let name = format!("{prefix}{dual_name}");
            if let Some(t) = self.env.tensor(&name) {
                let unit = sp.unit_vec(dual).expect("valid color");
                if t.signature() == &want && t.data() == unit.as_slice() {
                    return Ok(name);
                }
            }
        }
        Err(FormatError::MissingUnit(sp.color_name(c).to_string()))
    }

    /// `aligned` is set when the parent matches positions by index name,
    /// so the textual order of free indices is irrelevant.
    fn go(&mut self, t: &TensorTree, aligned: bool) -> Result<(F, Vec<usize>), FormatError> {
        match t.node() {
            Node::Tensor(leaf) => {
                let name = leaf.name.clone().ok_or(FormatError::AnonymousLeaf)?;
                let vs: Vec<usize> = (0..t.rank()).map(|_| self.vars.fresh()).collect();
                Ok((F::Atom(name, vs.clone()), vs))
            }
            Node::Neg(c) => {
                let (f, vs) = self.go(c, aligned)?;
                Ok((F::Neg(Box::new(f)), vs))
            }
            Node::Smul(s, c) => {
                let text = match &s.name {
                    Some(n) => n.clone(),
                    None => scalar_literal(s.value),
                };
                let (f, vs) = self.go(c, aligned)?;
                Ok((F::Smul(text, Box::new(f)), vs))
            }
            Node::Action(a, c) => {
                let name = a.name.clone().ok_or(FormatError::AnonymousGroup)?;
                let (f, vs) = self.go(c, aligned)?;
                for &v in &vs {
                    let r = self.vars.find(v);
                    self.vars.acted[r] = true;
                }
                Ok((F::Act(name, Box::new(f)), vs))
            }
            Node::Add(l, r) => {
                let (fl, vl) = self.go(l, aligned)?;
                let (fr, vr) = self.go(r, true)?;
                for (&a, &b) in vl.iter().zip(&vr) {
                    self.vars.union(a, b);
                }
                Ok((F::Add(Box::new(fl), Box::new(fr)), vl))
            }
            Node::Prod(l, r) => {
                let (fl, mut vl) = self.go(l, aligned)?;
                let (fr, vr) = self.go(r, aligned)?;
                vl.extend(vr);
                Ok((F::Prod(Box::new(fl), Box::new(fr)), vl))
            }
            Node::Contr { i, j, child } => {
                let (f, mut vs) = self.go(child, aligned)?;
                let k = succ_above(*i, *j);
                self.vars.union(vs[*i], vs[k]);
                vs.remove((*i).max(k));
                vs.remove((*i).min(k));
                Ok((f, vs))
            }
            Node::Eval { i, x, child } => {
                let (f, mut vs) = self.go(child, aligned)?;
                let r = self.vars.find(vs[*i]);
                if self.vars.acted[r] {
                    return Err(FormatError::EvalOfAction);
                }
                self.vars.numeral[r] = Some(*x);
                vs.remove(*i);
                Ok((f, vs))
            }
            Node::Perm(sigma, c) => {
                let transparent = aligned || sigma.is_identity();
                let (f, vs) = self.go(c, transparent)?;
                let mut out = alloc::vec![0; vs.len()];
                for (a, &v) in vs.iter().enumerate() {
                    out[sigma.apply(a)] = v;
                }
                if transparent {
                    return Ok((f, out));
                }
                // δ | o_b v_b ⊗ … ⊗ (child), one unit per output position.
                let mut acc: Option<F> = None;
                let mut outputs = Vec::with_capacity(out.len());
                for (b, &v) in out.iter().enumerate() {
                    let o = self.vars.fresh();
                    outputs.push(o);
                    let unit = F::Atom(self.unit_name(sigma.target()[b])?, alloc::vec![o, v]);
                    acc = Some(match acc {
                        None => unit,
                        Some(a) => F::Prod(Box::new(a), Box::new(unit)),
                    });
                }
                let whole = match acc {
                    None => f,
                    Some(a) => F::Prod(Box::new(a), Box::new(f)),
                };
                Ok((whole, outputs))
            }
        }
    }
}

fn scalar_literal(z: crate::linalg::Complex64) -> String {
    let mut s = String::new();
    if z.im == 0.0 && z.re >= 0.0 {
        let _ = write_complex(&mut s, z);
    } else if z.im < 0.0 {
        let _ = write!(s, "[{}-{}i]", z.re, -z.im);
    } else {
        let _ = write!(s, "[{}+{}i]", z.re, z.im);
    }
    s
}

struct Printer<'a> {
    vars: &'a mut Vars,
    names: Vec<Option<usize>>,
    next: usize,
    out: String,
}

impl Printer<'_> {
    fn index(&mut self, v: usize) {
        let r = self.vars.find(v);
        if let Some(x) = self.vars.numeral[r] {
            let _ = write!(self.out, "{x}");
            return;
        }
        let n = match self.names[r] {
            Some(n) => n,
            None => {
                self.names[r] = Some(self.next);
                self.next += 1;
                self.next - 1
            }
        };
        let _ = write!(self.out, "i{n}");
    }

    /// Levels: 0 sum, 1 product, 2 unary, 3 atom.
    fn print(&mut self, f: &F, min: u8) {
        let level = match f {
            F::Add(..) => 0,
            F::Prod(..) => 1,
            F::Neg(_) | F::Smul(..) | F::Act(..) => 2,
            F::Atom(..) => 3,
        };
        let paren = level < min;
        if paren {
            self.out.push('(');
        }
        match f {
            F::Atom(name, vs) => {
                self.out.push_str(name);
                if !vs.is_empty() {
                    self.out.push_str(" |");
                    for &v in vs {
                        self.out.push(' ');
                        self.index(v);
                    }
                }
            }
            F::Prod(a, b) => {
                self.print(a, 1);
                self.out.push_str(" ⊗ ");
                self.print(b, 2);
            }
            F::Add(a, b) => {
                self.print(a, 0);
                match &**b {
                    F::Neg(inner) => {
                        self.out.push_str(" - ");
                        self.print(inner, 1);
                    }
                    _ => {
                        self.out.push_str(" + ");
                        self.print(b, 1);
                    }
                }
            }
            F::Neg(a) => {
                self.out.push('-');
                self.print(a, 2);
            }
            F::Smul(s, a) => {
                self.out.push_str(s);
                self.out.push_str(" •ₜ ");
                self.print(a, 2);
            }
            F::Act(g, a) => {
                self.out.push_str(g);
                self.out.push_str(" •ₐ ");
                self.print(a, 2);
            }
        }
        if paren {
            self.out.push(')');
        }
    }
}

fn render(vars: &mut Vars, parts: &[&F]) -> String {
    let n = vars.parent.len();
    let mut p = Printer {
        vars,
        names: alloc::vec![None; n],
        next: 0,
        out: String::from("{"),
    };
    for (k, f) in parts.iter().enumerate() {
        if k > 0 {
            p.out.push_str(" = ");
        }
        p.print(f, 0);
    }
    p.out.push_str("}ᵀ");
    p.out
}

/// Index-notation text for `tree`. Leaves must be named, and named
/// scalars and groups must be present in `env` for the text to
/// re-elaborate.
pub fn format(tree: &TensorTree, env: &Environment) -> Result<String, FormatError> {
    let mut fm = Formatter {
        env,
        vars: Vars::default(),
    };
    let (f, _) = fm.go(tree, false)?;
    Ok(render(&mut fm.vars, &[&f]))
}

/// Text for the equation `lhs = rhs`.
pub fn format_equation(lhs: &TensorTree, rhs: &TensorTree, env: &Environment) -> Result<String, FormatError> {
    let mut fm = Formatter {
        env,
        vars: Vars::default(),
    };
    let (fl, vl) = fm.go(lhs, false)?;
    let (fr, vr) = fm.go(rhs, true)?;
    for (&a, &b) in vl.iter().zip(&vr) {
        fm.vars.union(a, b);
    }
    Ok(render(&mut fm.vars, &[&fl, &fr]))
}
