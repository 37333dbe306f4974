//! Innermost-out normalisation.
//!
//! Every step rewrites the first node in post-order where some rule
//! applies, trying rules in a fixed priority, then restarts from the root.
//! The normal form has its permutations at slot roots (the tree root and
//! the right summand of each `add`), then negations, then scalars, and
//! chains of contractions oriented and sorted by key.
//!
//! Each step strictly decreases [`Measure`], compared lexicographically,
//! which bounds the number of steps.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::rules::contr_contr_pairs;
use super::Rule;
use crate::tensor::succ_above;
use crate::tree::{Node, Path, Step, TensorTree};

/// Rules used by the normaliser, highest priority first. Contraction
/// reordering is tried last, on top of these.
const PRIORITY: [Rule; 23] = [
    Rule::PermPerm,
    Rule::ProdPermLeft,
    Rule::ProdPermRight,
    Rule::PermContrCongr,
    Rule::PermEval,
    Rule::PermAction,
    Rule::AddPerm,
    Rule::NegPerm,
    Rule::SmulPerm,
    Rule::NegNeg,
    Rule::SmulSmul,
    Rule::SmulNeg,
    Rule::NegFstProd,
    Rule::NegSndProd,
    Rule::NegContr,
    Rule::NegEval,
    Rule::NegAction,
    Rule::SmulFstProd,
    Rule::SmulSndProd,
    Rule::SmulContr,
    Rule::SmulEval,
    Rule::SmulAction,
    Rule::ContrSymm,
];

/// Termination measure. Field order is the lexicographic order.
///
/// Depths count the non-wrapper ancestors (anything but `perm`, `neg`,
/// `smul`) between a node and its slot root.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Measure {
    pub perm_depth: usize,
    pub perms: usize,
    pub neg_depth: usize,
    pub negs: usize,
    pub smul_depth: usize,
    pub smuls: usize,
    /// Pairs in a run of adjacent wrappers that are out of the
    /// `perm`, `neg`, `smul` order.
    pub wrapper_inversions: usize,
    /// Contractions whose second position lies before the first.
    pub misoriented: usize,
    /// Pairs of contractions in one chain where the outer one has the
    /// smaller key.
    pub contr_inversions: usize,
}

pub fn measure(t: &TensorTree) -> Measure {
    let mut m = Measure::default();
    walk(t, 0, &mut Vec::new(), false, &mut m);
    m
}

fn walk(t: &TensorTree, depth: usize, run: &mut Vec<u8>, in_chain: bool, m: &mut Measure) {
    let rank = match t.node() {
        Node::Perm(..) => Some(0u8),
        Node::Neg(_) => Some(1),
        Node::Smul(..) => Some(2),
        _ => None,
    };
    if let Some(r) = rank {
        match r {
            0 => {
                m.perm_depth += depth;
                m.perms += 1;
            }
            1 => {
                m.neg_depth += depth;
                m.negs += 1;
            }
            _ => {
                m.smul_depth += depth;
                m.smuls += 1;
            }
        }
        m.wrapper_inversions += run.iter().filter(|&&above| above > r).count();
        run.push(r);
        walk(t.children()[0], depth, run, false, m);
        run.pop();
        return;
    }
    match t.node() {
        Node::Add(l, r) => {
            walk(l, depth + 1, &mut Vec::new(), false, m);
            walk(r, 0, &mut Vec::new(), false, m);
        }
        Node::Contr { i, j, child } => {
            if succ_above(*i, *j) < *i {
                m.misoriented += 1;
            }
            if !in_chain {
                m.contr_inversions += chain_inversions(t);
            }
            walk(child, depth + 1, &mut Vec::new(), true, m);
        }
        _ => {
            for c in t.children() {
                walk(c, depth + 1, &mut Vec::new(), false, m);
            }
        }
    }
}

/// Keys (smallest base position of each pair) of a maximal chain of
/// contractions, outermost first.
fn chain_keys(top: &TensorTree) -> Vec<usize> {
    let mut pairs = Vec::new();
    let mut cur = top;
    while let Node::Contr { i, j, child } = cur.node() {
        pairs.push((*i, *j));
        cur = child;
    }
    let mut avail: Vec<usize> = (0..cur.rank()).collect();
    let mut keys = Vec::with_capacity(pairs.len());
    for &(i, j) in pairs.iter().rev() {
        let k = succ_above(i, j);
        keys.push(avail[i].min(avail[k]));
        let (hi, lo) = (i.max(k), i.min(k));
        avail.remove(hi);
        avail.remove(lo);
    }
    keys.reverse();
    keys
}

fn chain_inversions(top: &TensorTree) -> usize {
    let keys = chain_keys(top);
    let mut n = 0;
    for a in 0..keys.len() {
        for b in a + 1..keys.len() {
            if keys[a] < keys[b] {
                n += 1;
            }
        }
    }
    n
}

/// One rewrite performed by [`normalize_traced`].
#[derive(Clone, Debug, PartialEq)]
pub struct TraceStep {
    pub rule: Rule,
    pub path: Path,
    /// Whole tree before and after, as canonical dumps.
    pub before: String,
    pub after: String,
    /// Measure of the tree after the step.
    pub measure: Measure,
}

/// Finds the first rewrite in post-order.
fn find(t: &TensorTree, here: &Path) -> Option<(Rule, Path, TensorTree)> {
    let steps: Vec<Step> = match t.node() {
        Node::Tensor(_) => Vec::new(),
        Node::Add(..) | Node::Prod(..) => alloc::vec![Step::Left, Step::Right],
        _ => alloc::vec![Step::Only],
    };
    for (c, s) in t.children().into_iter().zip(steps) {
        if let Some(hit) = find(c, &here.child(s)) {
            return Some(hit);
        }
    }
    for rule in PRIORITY {
        if let Some(new) = rule.apply(t) {
            return Some((rule, here.clone(), new));
        }
    }
    if let Node::Contr { i, j, child } = t.node() {
        if let Node::Contr { i: k, j: l, child: base } = child.node() {
            let ((a, b), (p, q)) = contr_contr_pairs(*i, *j, *k, *l, base.rank());
            if a.min(b) < p.min(q) {
                let swapped = Rule::ContrContr.apply(t).expect("pattern checked above");
                // The induced permutation is the identity; drop it so the
                // swap does not add a permutation node.
                let inner = Rule::PermId.apply(&swapped).expect("contr_contr induces the identity");
                return Some((Rule::ContrContr, here.clone(), inner));
            }
        }
    }
    None
}

pub fn normalize(t: &TensorTree) -> TensorTree {
    let mut cur = t.clone();
    while let Some((_, path, new)) = find(&cur, &Path::root()) {
        cur = cur.replace_at(&path, new).expect("rewrites preserve signatures");
    }
    cur
}

/// [`normalize`] that also records every step.
pub fn normalize_traced(t: &TensorTree) -> (TensorTree, Vec<TraceStep>) {
    let mut cur = t.clone();
    let mut trace = Vec::new();
    while let Some((rule, path, new)) = find(&cur, &Path::root()) {
        let next = cur.replace_at(&path, new).expect("rewrites preserve signatures");
        trace.push(TraceStep {
            rule,
            path,
            before: cur.to_string(),
            after: next.to_string(),
            measure: measure(&next),
        });
        cur = next;
    }
    (cur, trace)
}
