use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use thiserror::Error;

use super::parser::{Expr, Index, ScalarRef};
use super::Span;
use crate::group::GroupElement;
use crate::linalg::Complex64;
use crate::species::{Color, SpeciesRef};
use crate::tensor::{DenseTensor, Permutation};
use crate::tree::{Action, Scalar, TensorTree, TreeError};

/// Names visible to the elaborator.
#[derive(Clone, Debug)]
pub struct Environment {
    pub species: SpeciesRef,
    pub tensors: BTreeMap<String, Arc<DenseTensor>>,
    pub scalars: BTreeMap<String, Complex64>,
    pub groups: BTreeMap<String, GroupElement>,
}

impl Environment {
    pub fn new(species: SpeciesRef) -> Self {
        Environment {
            species,
            tensors: BTreeMap::new(),
            scalars: BTreeMap::new(),
            groups: BTreeMap::new(),
        }
    }

    pub fn insert_tensor(&mut self, name: &str, t: DenseTensor) -> &mut Self {
        self.tensors.insert(name.to_string(), Arc::new(t));
        self
    }

    pub fn insert_scalar(&mut self, name: &str, z: Complex64) -> &mut Self {
        self.scalars.insert(name.to_string(), z);
        self
    }

    pub fn insert_group(&mut self, name: &str, g: GroupElement) -> &mut Self {
        self.groups.insert(name.to_string(), g);
        self
    }

    pub fn tensor(&self, name: &str) -> Option<&Arc<DenseTensor>> {
        self.tensors.get(name)
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum ElabError {
    #[error("unknown tensor `{name}`")]
    UnknownTensor { name: String, span: Span },
    #[error("unknown scalar `{name}`")]
    UnknownScalar { name: String, span: Span },
    #[error("unknown group element `{name}`")]
    UnknownGroup { name: String, span: Span },
    #[error("`{name}` has rank {expected} but {found} indices are given")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
        span: Span,
    },
    #[error("index `{symbol}` pairs `{left}` with `{right}`, which are not dual")]
    Duality {
        symbol: String,
        left: String,
        right: String,
        span: Span,
    },
    #[error("index `{symbol}` occurs {count} times in one contraction scope")]
    Multiplicity { symbol: String, count: usize, span: Span },
    #[error("free indices differ: {left:?} vs {right:?}")]
    FreeIndexMismatch { left: Vec<String>, right: Vec<String> },
    #[error("group action: {0}")]
    Group(TreeError),
    #[error("tensor `{name}` belongs to species `{found}`, not `{expected}`")]
    Species {
        name: String,
        expected: String,
        found: String,
        span: Span,
    },
}

impl ElabError {
    /// Stable, machine-readable category.
    pub fn category(&self) -> &'static str {
        match self {
            ElabError::UnknownTensor { .. } | ElabError::UnknownScalar { .. } | ElabError::UnknownGroup { .. } => {
                "env-missing"
            }
            ElabError::Arity { .. } => "elaborate-arity",
            ElabError::Duality { .. } => "elaborate-duality",
            ElabError::Multiplicity { .. } => "elaborate-multiplicity",
            ElabError::FreeIndexMismatch { .. } => "elaborate-free-index",
            ElabError::Group(_) | ElabError::Species { .. } => "elaborate-type",
        }
    }

    pub fn span(&self) -> Option<Span> {
        match self {
            ElabError::UnknownTensor { span, .. }
            | ElabError::UnknownScalar { span, .. }
            | ElabError::UnknownGroup { span, .. }
            | ElabError::Arity { span, .. }
            | ElabError::Duality { span, .. }
            | ElabError::Multiplicity { span, .. }
            | ElabError::Species { span, .. } => Some(*span),
            _ => None,
        }
    }
}

/// Result of elaborating a top-level expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Elaborated {
    Tree(TensorTree),
    /// Both sides of `=`; the right side is wrapped in the permutation that
    /// aligns its free indices with the left side's.
    Equation(TensorTree, TensorTree),
}

impl Elaborated {
    pub fn into_tree(self) -> Option<TensorTree> {
        match self {
            Elaborated::Tree(t) => Some(t),
            Elaborated::Equation(..) => None,
        }
    }
}

#[derive(Clone, Debug)]
struct Free {
    name: String,
    span: Span,
}

const TYPED: &str = "elaborator output is well typed";

struct Elaborator<'e> {
    env: &'e Environment,
}

impl Elaborator<'_> {
    fn color_name(&self, c: Color) -> String {
        self.env.species.color_name(c).to_string()
    }

    /// Contracts repeated symbols of one scope, first occurrence first.
    fn resolve(&self, mut tree: TensorTree, mut free: Vec<Free>) -> Result<(TensorTree, Vec<Free>), ElabError> {
        for f in &free {
            let count = free.iter().filter(|g| g.name == f.name).count();
            if count > 2 {
                return Err(ElabError::Multiplicity {
                    symbol: f.name.clone(),
                    count,
                    span: f.span,
                });
            }
        }
        loop {
            let pair = (0..free.len()).find_map(|p| {
                (p + 1..free.len())
                    .find(|&q| free[q].name == free[p].name)
                    .map(|q| (p, q))
            });
            let Some((p, q)) = pair else {
                return Ok((tree, free));
            };
            let sig = tree.signature();
            if sig[q] != self.env.species.dual_color(sig[p]).expect("signature colors are valid") {
                return Err(ElabError::Duality {
                    symbol: free[p].name.clone(),
                    left: self.color_name(sig[p]),
                    right: self.color_name(sig[q]),
                    span: free[q].span,
                });
            }
            tree = TensorTree::contr(p, q - 1, tree).expect(TYPED);
            free.remove(q);
            free.remove(p);
        }
    }

    fn atom(&self, name: &str, indices: &[Index], span: Span) -> Result<(TensorTree, Vec<Free>), ElabError> {
        let t = self.env.tensors.get(name).ok_or_else(|| ElabError::UnknownTensor {
            name: name.to_string(),
            span,
        })?;
        if !crate::tensor::same_species(t.species(), &self.env.species) {
            return Err(ElabError::Species {
                name: name.to_string(),
                expected: self.env.species.name().to_string(),
                found: t.species().name().to_string(),
                span,
            });
        }
        if t.rank() != indices.len() {
            return Err(ElabError::Arity {
                name: name.to_string(),
                expected: t.rank(),
                found: indices.len(),
                span,
            });
        }
        let mut tree = TensorTree::leaf(Some(name.to_string()), t.clone());
        let mut free = Vec::new();
        let mut removed = 0;
        for (p, ix) in indices.iter().enumerate() {
            match ix {
                Index::Number { value, .. } => {
                    tree = TensorTree::eval(p - removed, *value, tree).expect(TYPED);
                    removed += 1;
                }
                Index::Symbol { name, span } => free.push(Free {
                    name: name.clone(),
                    span: *span,
                }),
            }
        }
        self.resolve(tree, free)
    }

    /// The permutation taking the right side's free order to the left's.
    fn align(&self, l: &TensorTree, fl: &[Free], r: &TensorTree, fr: &[Free]) -> Result<Permutation, ElabError> {
        let mismatch = || ElabError::FreeIndexMismatch {
            left: fl.iter().map(|f| f.name.clone()).collect(),
            right: fr.iter().map(|f| f.name.clone()).collect(),
        };
        if fl.len() != fr.len() {
            return Err(mismatch());
        }
        let mut map = Vec::with_capacity(fr.len());
        for (i, f) in fr.iter().enumerate() {
            let p = fl.iter().position(|g| g.name == f.name).ok_or_else(mismatch)?;
            if l.signature()[p] != r.signature()[i] {
                return Err(mismatch());
            }
            map.push(p);
        }
        Permutation::new(r.signature().clone(), l.signature().clone(), map).map_err(|_| mismatch())
    }

    fn expr(&self, e: &Expr) -> Result<(TensorTree, Vec<Free>), ElabError> {
        match e {
            Expr::Atom { name, indices, span } => self.atom(name, indices, *span),
            Expr::Prod(a, b) => {
                let (ta, mut fa) = self.expr(a)?;
                let (tb, fb) = self.expr(b)?;
                fa.extend(fb);
                self.resolve(TensorTree::prod(ta, tb).expect(TYPED), fa)
            }
            Expr::Add(a, b) => {
                let (ta, fa) = self.expr(a)?;
                let (tb, fb) = self.expr(b)?;
                let sigma = self.align(&ta, &fa, &tb, &fb)?;
                let right = TensorTree::perm(sigma, tb).expect(TYPED);
                Ok((TensorTree::add(ta, right).expect(TYPED), fa))
            }
            Expr::Neg(a) => {
                let (t, f) = self.expr(a)?;
                Ok((TensorTree::neg(t), f))
            }
            Expr::Smul(s, a) => {
                let scalar = match s {
                    ScalarRef::Literal(z) => Scalar { value: *z, name: None },
                    ScalarRef::Name { name, span } => Scalar {
                        value: *self.env.scalars.get(name).ok_or_else(|| ElabError::UnknownScalar {
                            name: name.clone(),
                            span: *span,
                        })?,
                        name: Some(name.clone()),
                    },
                };
                let (t, f) = self.expr(a)?;
                Ok((TensorTree::smul(scalar, t), f))
            }
            Expr::Action { group, span, expr } => {
                let g = self.env.groups.get(group).ok_or_else(|| ElabError::UnknownGroup {
                    name: group.clone(),
                    span: *span,
                })?;
                let (t, f) = self.expr(expr)?;
                let action = Action {
                    element: *g,
                    name: Some(group.clone()),
                };
                Ok((TensorTree::action(action, t).map_err(ElabError::Group)?, f))
            }
            Expr::Eq(..) => unreachable!("equations only occur at top level"),
        }
    }
}

/// Turns a parsed expression into a tensor tree, or a pair of trees for an
/// equation.
pub fn elaborate(e: &Expr, env: &Environment) -> Result<Elaborated, ElabError> {
    let el = Elaborator { env };
    match e {
        Expr::Eq(a, b) => {
            let (ta, fa) = el.expr(a)?;
            let (tb, fb) = el.expr(b)?;
            let sigma = el.align(&ta, &fa, &tb, &fb)?;
            Ok(Elaborated::Equation(ta, TensorTree::perm(sigma, tb).expect(TYPED)))
        }
        _ => Ok(Elaborated::Tree(el.expr(e)?.0)),
    }
}

/// The free index symbols of an elaborated expression, in position order.
pub fn free_indices(e: &Expr, env: &Environment) -> Result<Vec<String>, ElabError> {
    let el = Elaborator { env };
    let target = match e {
        Expr::Eq(a, _) => a,
        _ => e,
    };
    Ok(el.expr(target)?.1.into_iter().map(|f| f.name).collect())
}
