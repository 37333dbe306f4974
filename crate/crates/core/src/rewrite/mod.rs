//! Semantics-preserving rewrites on tensor trees.
//!
//! [`Rule`] is the catalog. [`apply_rule`] rewrites one addressed subtree,
//! [`normalize`] drives the catalog to a canonical form and [`check_equal`]
//! decides equality of two trees, structurally when possible and
//! numerically otherwise.

mod equal;
mod normalize;
mod rules;

pub use equal::{check_equal, check_equal_sampled, Verdict, Witness};
pub use normalize::{measure, normalize, normalize_traced, Measure, TraceStep};

use alloc::format;
use alloc::string::String;
use core::fmt;

use thiserror::Error;

use crate::tree::{Node, Path, TensorTree, TreeError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// `prod (perm σ a) b → perm (σ ⊕ id) (prod a b)`
    ProdPermLeft,
    /// `prod a (perm σ b) → perm (id ⊕ σ) (prod a b)`
    ProdPermRight,
    /// `perm σ (perm ρ t) → perm (σ ∘ ρ) t`
    PermPerm,
    /// `contr i j (perm σ t) → perm σ' (contr i' j' t)`
    PermContrCongr,
    /// `contr i j (contr k l t) → perm σ (contr k' l' (contr i' j' t))`
    ContrContr,
    /// `prod (neg a) b → neg (prod a b)`
    NegFstProd,
    /// `prod a (neg b) → neg (prod a b)`
    NegSndProd,
    /// `contr i j (neg t) → neg (contr i j t)`
    NegContr,
    /// `prod (smul s a) b → smul s (prod a b)`
    SmulFstProd,
    /// `prod a (smul s b) → smul s (prod a b)`
    SmulSndProd,
    /// `contr i j (smul s t) → smul s (contr i j t)`
    SmulContr,
    /// `neg (perm σ t) → perm σ (neg t)`
    NegPerm,
    /// `smul s (perm σ t) → perm σ (smul s t)`
    SmulPerm,
    /// `smul s (neg t) → neg (smul s t)`
    SmulNeg,
    /// `neg (neg t) → t`
    NegNeg,
    /// `smul a (smul b t) → smul (a·b) t`
    SmulSmul,
    /// `eval i x (perm σ t) → perm σ' (eval σ⁻¹(i) x t)`
    PermEval,
    /// `eval i x (neg t) → neg (eval i x t)`
    NegEval,
    /// `eval i x (smul s t) → smul s (eval i x t)`
    SmulEval,
    /// `action g (perm σ t) → perm σ (action g t)`
    PermAction,
    /// `action g (neg t) → neg (action g t)`
    NegAction,
    /// `action g (smul s t) → smul s (action g t)`
    SmulAction,
    /// `add (perm σ a) b → perm σ (add a (perm σ⁻¹ b))`, folding `σ⁻¹`
    /// into `b` when `b` is itself a permutation node.
    AddPerm,
    /// `perm σ (add a b) → add (perm σ a) (perm σ b)`
    PermAdd,
    /// `contr i j t → contr k (i - 1) t` when `k = succ_above(i, j) < i`.
    ContrSymm,
    /// `perm id t → t`
    PermId,
}

impl Rule {
    pub const ALL: [Rule; 26] = [
        Rule::ProdPermLeft,
        Rule::ProdPermRight,
        Rule::PermPerm,
        Rule::PermContrCongr,
        Rule::ContrContr,
        Rule::NegFstProd,
        Rule::NegSndProd,
        Rule::NegContr,
        Rule::SmulFstProd,
        Rule::SmulSndProd,
        Rule::SmulContr,
        Rule::NegPerm,
        Rule::SmulPerm,
        Rule::SmulNeg,
        Rule::NegNeg,
        Rule::SmulSmul,
        Rule::PermEval,
        Rule::NegEval,
        Rule::SmulEval,
        Rule::PermAction,
        Rule::NegAction,
        Rule::SmulAction,
        Rule::AddPerm,
        Rule::PermAdd,
        Rule::ContrSymm,
        Rule::PermId,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::ProdPermLeft => "prod_perm_left",
            Rule::ProdPermRight => "prod_perm_right",
            Rule::PermPerm => "perm_perm",
            Rule::PermContrCongr => "perm_contr_congr",
            Rule::ContrContr => "contr_contr",
            Rule::NegFstProd => "neg_fst_prod",
            Rule::NegSndProd => "neg_snd_prod",
            Rule::NegContr => "neg_contr",
            Rule::SmulFstProd => "smul_fst_prod",
            Rule::SmulSndProd => "smul_snd_prod",
            Rule::SmulContr => "smul_contr",
            Rule::NegPerm => "neg_perm",
            Rule::SmulPerm => "smul_perm",
            Rule::SmulNeg => "smul_neg",
            Rule::NegNeg => "neg_neg",
            Rule::SmulSmul => "smul_smul",
            Rule::PermEval => "perm_eval",
            Rule::NegEval => "neg_eval",
            Rule::SmulEval => "smul_eval",
            Rule::PermAction => "perm_action",
            Rule::NegAction => "neg_action",
            Rule::SmulAction => "smul_action",
            Rule::AddPerm => "add_perm",
            Rule::PermAdd => "perm_add",
            Rule::ContrSymm => "contr_symm",
            Rule::PermId => "perm_id",
        }
    }

    pub fn from_name(name: &str) -> Option<Rule> {
        Rule::ALL.iter().copied().find(|r| r.name() == name)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum RewriteError {
    #[error("rule {rule} does not match a node of shape {shape}")]
    NoMatch { rule: &'static str, shape: String },
    #[error("no subtree at path {0}")]
    NoSuchPath(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// Head of a node and its children's heads, e.g. `contr(perm)`.
pub fn shape(t: &TensorTree) -> String {
    let kids = t.children();
    if kids.is_empty() {
        return String::from(head(t));
    }
    let inner: alloc::vec::Vec<&str> = kids.iter().map(|c| head(c)).collect();
    format!("{}({})", head(t), inner.join(", "))
}

fn head(t: &TensorTree) -> &'static str {
    match t.node() {
        Node::Tensor(_) => "tensor",
        Node::Smul(..) => "smul",
        Node::Neg(_) => "neg",
        Node::Add(..) => "add",
        Node::Action(..) => "action",
        Node::Perm(..) => "perm",
        Node::Prod(..) => "prod",
        Node::Contr { .. } => "contr",
        Node::Eval { .. } => "eval",
    }
}

/// Rewrites the subtree at `path` with `rule`.
pub fn apply_rule(tree: &TensorTree, path: &Path, rule: Rule) -> Result<TensorTree, RewriteError> {
    let sub = tree
        .subtree_at(path)
        .ok_or_else(|| RewriteError::NoSuchPath(format!("{path}")))?;
    let new = rule.apply(sub).ok_or_else(|| RewriteError::NoMatch {
        rule: rule.name(),
        shape: shape(sub),
    })?;
    Ok(tree.replace_at(path, new)?)
}
