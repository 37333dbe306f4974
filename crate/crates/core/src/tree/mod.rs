//! The tensor-tree IR.
//!
//! Nine node kinds, each with a typing rule that fixes the node's
//! signature from its children. Constructors check those rules, so every
//! [`TensorTree`] value is well typed and [`TensorTree::semantics`] cannot
//! fail.

mod dump;
mod path;

pub use dump::{write_complex, EquationDump};
pub use path::{Path, Step};

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use thiserror::Error;

use crate::group::GroupElement;
use crate::linalg::Complex64;
use crate::species::SpeciesRef;
use crate::tensor::{checked_succ_above, same_species, DenseTensor, Permutation, Signature, TensorError};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum TreeError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("permutation expects {expected}, child has {found}")]
    PermSource { expected: String, found: String },
    #[error("summands have signatures {0} and {1}")]
    AddSignature(String, String),
    #[error("no subtree at path {0}")]
    NoSuchPath(String),
    #[error("replacement has signature {found}, subtree has {expected}")]
    ReplaceSignature { expected: String, found: String },
}

/// A named or anonymous leaf tensor.
#[derive(Clone, Debug)]
pub struct Leaf {
    pub name: Option<String>,
    pub tensor: Arc<DenseTensor>,
}

/// A scalar factor, optionally carrying the name it was written with.
#[derive(Clone, Debug, PartialEq)]
pub struct Scalar {
    pub value: Complex64,
    pub name: Option<String>,
}

/// A group element, optionally carrying the name it was written with.
#[derive(Clone, Debug, PartialEq)]
pub struct Action {
    pub element: GroupElement,
    pub name: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Tensor(Leaf),
    Smul(Scalar, TensorTree),
    Neg(TensorTree),
    Add(TensorTree, TensorTree),
    Action(Action, TensorTree),
    Perm(Permutation, TensorTree),
    Prod(TensorTree, TensorTree),
    /// Contracts position `i` against `succ_above(i, j)` of the child.
    Contr { i: usize, j: usize, child: TensorTree },
    /// Fixes position `i` of the child to basis index `x`.
    Eval { i: usize, x: usize, child: TensorTree },
}

#[derive(Debug)]
struct TreeNode {
    node: Node,
    signature: Signature,
    species: SpeciesRef,
}

/// An immutable, cheaply clonable tensor tree. Clones share structure.
#[derive(Clone, Debug)]
pub struct TensorTree(Arc<TreeNode>);

impl PartialEq for Leaf {
    fn eq(&self, other: &Leaf) -> bool {
        self.name == other.name
            && (Arc::ptr_eq(&self.tensor, &other.tensor)
                || (self.tensor.signature() == other.tensor.signature()
                    && self.tensor.data() == other.tensor.data()))
    }
}

impl PartialEq for TensorTree {
    fn eq(&self, other: &TensorTree) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.signature == other.0.signature
                && same_species(&self.0.species, &other.0.species)
                && self.0.node == other.0.node)
    }
}

impl TensorTree {
    fn make(node: Node, signature: Signature, species: SpeciesRef) -> Self {
        TensorTree(Arc::new(TreeNode {
            node,
            signature,
            species,
        }))
    }

    pub fn leaf(name: Option<String>, tensor: Arc<DenseTensor>) -> Self {
        let signature = tensor.signature().clone();
        let species = tensor.species().clone();
        Self::make(Node::Tensor(Leaf { name, tensor }), signature, species)
    }

    pub fn tensor(name: &str, tensor: DenseTensor) -> Self {
        Self::leaf(Some(name.to_string()), Arc::new(tensor))
    }

    pub fn anonymous(tensor: DenseTensor) -> Self {
        Self::leaf(None, Arc::new(tensor))
    }

    pub fn smul(scalar: Scalar, child: TensorTree) -> Self {
        let (sig, sp) = (child.signature().clone(), child.species().clone());
        Self::make(Node::Smul(scalar, child), sig, sp)
    }

    pub fn smul_value(value: Complex64, child: TensorTree) -> Self {
        Self::smul(Scalar { value, name: None }, child)
    }

    pub fn neg(child: TensorTree) -> Self {
        let (sig, sp) = (child.signature().clone(), child.species().clone());
        Self::make(Node::Neg(child), sig, sp)
    }

    pub fn add(left: TensorTree, right: TensorTree) -> Result<Self, TreeError> {
        check_same_species(&left, &right)?;
        if left.signature() != right.signature() {
            return Err(TreeError::AddSignature(
                left.signature().display(left.species()),
                right.signature().display(right.species()),
            ));
        }
        let (sig, sp) = (left.signature().clone(), left.species().clone());
        Ok(Self::make(Node::Add(left, right), sig, sp))
    }

    pub fn action(action: Action, child: TensorTree) -> Result<Self, TreeError> {
        let expected = child.species().group_kind();
        if action.element.kind() != expected {
            return Err(TensorError::WrongGroup {
                expected,
                found: action.element.kind(),
            }
            .into());
        }
        let (sig, sp) = (child.signature().clone(), child.species().clone());
        Ok(Self::make(Node::Action(action, child), sig, sp))
    }

    pub fn act(element: GroupElement, child: TensorTree) -> Result<Self, TreeError> {
        Self::action(Action { element, name: None }, child)
    }

    pub fn perm(sigma: Permutation, child: TensorTree) -> Result<Self, TreeError> {
        if sigma.source() != child.signature() {
            return Err(TreeError::PermSource {
                expected: sigma.source().display(child.species()),
                found: child.signature().display(child.species()),
            });
        }
        let sig = sigma.target().clone();
        let sp = child.species().clone();
        Ok(Self::make(Node::Perm(sigma, child), sig, sp))
    }

    pub fn prod(left: TensorTree, right: TensorTree) -> Result<Self, TreeError> {
        check_same_species(&left, &right)?;
        let sig = left.signature().concat(right.signature());
        let sp = left.species().clone();
        Ok(Self::make(Node::Prod(left, right), sig, sp))
    }

    pub fn contr(i: usize, j: usize, child: TensorTree) -> Result<Self, TreeError> {
        let sig = child.signature();
        let species = child.species();
        if sig.len() < 2 {
            return Err(TensorError::RankTooSmall(sig.len()).into());
        }
        let k = checked_succ_above(sig.len(), i, j)?;
        if sig[k] != species.dual(sig[i]) {
            return Err(TensorError::Duality {
                i,
                k,
                left: species.color_name(sig[i]).to_string(),
                right: species.color_name(sig[k]).to_string(),
            }
            .into());
        }
        let out = sig.without_pair(i, k);
        let sp = species.clone();
        Ok(Self::make(Node::Contr { i, j, child }, out, sp))
    }

    pub fn eval(i: usize, x: usize, child: TensorTree) -> Result<Self, TreeError> {
        let sig = child.signature();
        if i >= sig.len() {
            return Err(TensorError::PositionOutOfRange {
                position: i,
                rank: sig.len(),
            }
            .into());
        }
        let out = sig.without(i);
        let sp = child.species().clone();
        Ok(Self::make(Node::Eval { i, x, child }, out, sp))
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    pub fn signature(&self) -> &Signature {
        &self.0.signature
    }

    pub fn species(&self) -> &SpeciesRef {
        &self.0.species
    }

    pub fn rank(&self) -> usize {
        self.0.signature.len()
    }

    /// The child trees, left to right.
    pub fn children(&self) -> Vec<&TensorTree> {
        match self.node() {
            Node::Tensor(_) => Vec::new(),
            Node::Smul(_, c)
            | Node::Neg(c)
            | Node::Action(_, c)
            | Node::Perm(_, c)
            | Node::Contr { child: c, .. }
            | Node::Eval { child: c, .. } => alloc::vec![c],
            Node::Add(l, r) | Node::Prod(l, r) => alloc::vec![l, r],
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    /// Rebuilds this node over new children, rechecking its typing rule.
    pub fn with_children(&self, children: Vec<TensorTree>) -> Result<TensorTree, TreeError> {
        let mut it = children.into_iter();
        let mut next = || it.next().expect("child count matches node kind");
        Ok(match self.node() {
            Node::Tensor(_) => self.clone(),
            Node::Smul(s, _) => Self::smul(s.clone(), next()),
            Node::Neg(_) => Self::neg(next()),
            Node::Action(a, _) => Self::action(a.clone(), next())?,
            Node::Perm(p, _) => Self::perm(p.clone(), next())?,
            Node::Contr { i, j, .. } => Self::contr(*i, *j, next())?,
            Node::Eval { i, x, .. } => Self::eval(*i, *x, next())?,
            Node::Add(..) => {
                let l = next();
                Self::add(l, next())?
            }
            Node::Prod(..) => {
                let l = next();
                Self::prod(l, next())?
            }
        })
    }

    /// The tensor this tree denotes.
    pub fn semantics(&self) -> DenseTensor {
        const TYPED: &str = "typing rules were checked at construction";
        match self.node() {
            Node::Tensor(leaf) => (*leaf.tensor).clone(),
            Node::Smul(s, c) => c.semantics().scale(s.value),
            Node::Neg(c) => c.semantics().neg(),
            Node::Add(l, r) => l.semantics().add(&r.semantics()).expect(TYPED),
            Node::Action(a, c) => c.semantics().act(&a.element).expect(TYPED),
            Node::Perm(p, c) => c.semantics().permute(p).expect(TYPED),
            Node::Prod(l, r) => l.semantics().product(&r.semantics()).expect(TYPED),
            Node::Contr { i, j, child } => child.semantics().contract(*i, *j).expect(TYPED),
            Node::Eval { i, x, child } => child.semantics().eval_index(*i, *x).expect(TYPED),
        }
    }

    /// Names of all named leaves, in left-to-right order with repeats.
    pub fn leaf_names(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_leaf_names(&mut out);
        out
    }

    fn collect_leaf_names<'a>(&'a self, out: &mut Vec<&'a str>) {
        if let Node::Tensor(leaf) = self.node() {
            if let Some(n) = &leaf.name {
                out.push(n.as_str());
            }
        }
        for c in self.children() {
            c.collect_leaf_names(out);
        }
    }

    /// Replaces every named leaf for which `values(name, signature)` gives a
    /// tensor; signatures must agree.
    pub fn substitute_leaves(
        &self,
        values: &dyn Fn(&str, &Signature) -> Option<Arc<DenseTensor>>,
    ) -> Result<TensorTree, TreeError> {
        if let Node::Tensor(leaf) = self.node() {
            return Ok(match leaf.name.as_deref().and_then(|n| values(n, self.signature())) {
                Some(t) => {
                    if t.signature() != self.signature() {
                        return Err(TreeError::ReplaceSignature {
                            expected: self.signature().display(self.species()),
                            found: t.signature().display(self.species()),
                        });
                    }
                    Self::leaf(leaf.name.clone(), t)
                }
                None => self.clone(),
            });
        }
        let kids = self
            .children()
            .into_iter()
            .map(|c| c.substitute_leaves(values))
            .collect::<Result<Vec<_>, _>>()?;
        self.with_children(kids)
    }
}

fn check_same_species(a: &TensorTree, b: &TensorTree) -> Result<(), TreeError> {
    if !same_species(a.species(), b.species()) {
        return Err(TensorError::SpeciesMismatch(a.species().name().to_string(), b.species().name().to_string()).into());
    }
    Ok(())
}

#[cfg(test)]
mod tests;
