use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use super::{Node, TensorTree, TreeError};

/// One child selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    /// Left child of `add` or `prod`.
    Left,
    /// Right child of `add` or `prod`.
    Right,
    /// The child of a single-child node.
    Only,
}

/// A route from the root to a subtree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Path(pub Vec<Step>);

impl Path {
    pub fn root() -> Self {
        Path(Vec::new())
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn child(&self, step: Step) -> Path {
        let mut v = self.0.clone();
        v.push(step);
        Path(v)
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<Step>> for Path {
    fn from(v: Vec<Step>) -> Self {
        Path(v)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (n, s) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            f.write_str(match s {
                Step::Left => "left",
                Step::Right => "right",
                Step::Only => "child",
            })?;
        }
        f.write_str("]")
    }
}

impl TensorTree {
    fn step(&self, step: Step) -> Option<&TensorTree> {
        match (self.node(), step) {
            (Node::Add(l, _) | Node::Prod(l, _), Step::Left) => Some(l),
            (Node::Add(_, r) | Node::Prod(_, r), Step::Right) => Some(r),
            (
                Node::Smul(_, c)
                | Node::Neg(c)
                | Node::Action(_, c)
                | Node::Perm(_, c)
                | Node::Contr { child: c, .. }
                | Node::Eval { child: c, .. },
                Step::Only,
            ) => Some(c),
            _ => None,
        }
    }

    pub fn subtree_at(&self, path: &Path) -> Option<&TensorTree> {
        let mut cur = self;
        for &s in path.steps() {
            cur = cur.step(s)?;
        }
        Some(cur)
    }

    /// Swaps the subtree at `path` for `replacement`. The two must have the
    /// same signature; untouched subtrees are shared.
    pub fn replace_at(&self, path: &Path, replacement: TensorTree) -> Result<TensorTree, TreeError> {
        let old = self
            .subtree_at(path)
            .ok_or_else(|| TreeError::NoSuchPath(format!("{path}")))?;
        if old.signature() != replacement.signature() {
            return Err(TreeError::ReplaceSignature {
                expected: old.signature().display(old.species()),
                found: replacement.signature().display(replacement.species()),
            });
        }
        Ok(self.replace_unchecked(path.steps(), replacement))
    }

    fn replace_unchecked(&self, steps: &[Step], replacement: TensorTree) -> TensorTree {
        let Some((&first, rest)) = steps.split_first() else {
            return replacement;
        };
        let mut kids: Vec<TensorTree> = self.children().into_iter().cloned().collect();
        let slot = match first {
            Step::Left | Step::Only => 0,
            Step::Right => 1,
        };
        kids[slot] = kids[slot].replace_unchecked(rest, replacement);
        self.with_children(kids)
            .expect("same-signature replacement keeps the tree well typed")
    }

    /// All paths in pre-order.
    pub fn paths(&self) -> Vec<Path> {
        let mut out = Vec::new();
        self.collect_paths(Path::root(), &mut out);
        out
    }

    fn collect_paths(&self, here: Path, out: &mut Vec<Path>) {
        out.push(here.clone());
        match self.node() {
            Node::Tensor(_) => {}
            Node::Add(l, r) | Node::Prod(l, r) => {
                l.collect_paths(here.child(Step::Left), out);
                r.collect_paths(here.child(Step::Right), out);
            }
            _ => {
                for c in self.children() {
                    c.collect_paths(here.child(Step::Only), out);
                }
            }
        }
    }
}
