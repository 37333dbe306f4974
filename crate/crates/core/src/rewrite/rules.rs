use alloc::vec::Vec;

use super::Rule;
use crate::tensor::{succ_above, succ_above_inv, Permutation};
use crate::tree::{Node, Scalar, TensorTree};

const TYPED: &str = "rewrite output is well typed";

fn perm(sigma: Permutation, t: TensorTree) -> TensorTree {
    TensorTree::perm(sigma, t).expect(TYPED)
}

fn prod(a: TensorTree, b: TensorTree) -> TensorTree {
    TensorTree::prod(a, b).expect(TYPED)
}

fn contr(i: usize, j: usize, t: TensorTree) -> TensorTree {
    TensorTree::contr(i, j, t).expect(TYPED)
}

fn eval(i: usize, x: usize, t: TensorTree) -> TensorTree {
    TensorTree::eval(i, x, t).expect(TYPED)
}

/// The permutation `σ` induces on the positions that survive deleting
/// `removed_src` from its source and `removed_tgt` from its target. The
/// deleted sets must correspond under `σ`.
pub(crate) fn induced(sigma: &Permutation, removed_src: &[usize], removed_tgt: &[usize]) -> Permutation {
    let mut map = Vec::with_capacity(sigma.len() - removed_src.len());
    let mut src = Vec::with_capacity(map.capacity());
    for a in (0..sigma.len()).filter(|a| !removed_src.contains(a)) {
        let b = sigma.apply(a);
        map.push(b - removed_tgt.iter().filter(|&&r| r < b).count());
        src.push(sigma.source()[a]);
    }
    let tgt = (0..sigma.len())
        .filter(|b| !removed_tgt.contains(b))
        .map(|b| sigma.target()[b])
        .collect();
    Permutation::new(src.into(), tgt, map).expect("induced permutation is color compatible")
}

/// Position `p` of a tensor after deleting the (distinct) positions in
/// `gone`.
fn compress(p: usize, gone: &[usize]) -> usize {
    p - gone.iter().filter(|&&g| g < p).count()
}

/// For `contr i j (contr k l t)`: the outer pair `(a, b)` and inner pair
/// `(p, q)`, all as positions of `t`, first element of each pair carrying
/// the contraction form.
pub(crate) fn contr_contr_pairs(i: usize, j: usize, k: usize, l: usize, rank_t: usize) -> ((usize, usize), (usize, usize)) {
    let p = k;
    let q = succ_above(k, l);
    let survivors: Vec<usize> = (0..rank_t).filter(|&x| x != p && x != q).collect();
    let a = survivors[i];
    let b = survivors[succ_above(i, j)];
    ((a, b), (p, q))
}

fn smul_of(s: &Scalar, t: TensorTree) -> TensorTree {
    TensorTree::smul(s.clone(), t)
}

impl Rule {
    /// Rewrites the root of `t`, or `None` when the rule does not match.
    pub fn apply(self, t: &TensorTree) -> Option<TensorTree> {
        match (self, t.node()) {
            (Rule::ProdPermLeft, Node::Prod(l, b)) => match l.node() {
                Node::Perm(sigma, a) => Some(perm(sigma.pad_right(b.signature()), prod(a.clone(), b.clone()))),
                _ => None,
            },
            (Rule::ProdPermRight, Node::Prod(a, r)) => match r.node() {
                Node::Perm(sigma, b) => Some(perm(sigma.pad_left(a.signature()), prod(a.clone(), b.clone()))),
                _ => None,
            },
            (Rule::PermPerm, Node::Perm(sigma, c)) => match c.node() {
                Node::Perm(rho, inner) => Some(perm(sigma.after(rho).expect(TYPED), inner.clone())),
                _ => None,
            },
            (Rule::PermContrCongr, Node::Contr { i, j, child }) => match child.node() {
                Node::Perm(sigma, inner) => {
                    let k = succ_above(*i, *j);
                    let inv = sigma.inverse();
                    let (i0, k0) = (inv.apply(*i), inv.apply(k));
                    let j0 = succ_above_inv(i0, k0);
                    let sigma2 = induced(sigma, &[i0, k0], &[*i, k]);
                    Some(perm(sigma2, contr(i0, j0, inner.clone())))
                }
                _ => None,
            },
            (Rule::ContrContr, Node::Contr { i, j, child }) => match child.node() {
                Node::Contr { i: k, j: l, child: t0 } => {
                    let ((a, b), (p, q)) = contr_contr_pairs(*i, *j, *k, *l, t0.rank());
                    let first = contr(a, succ_above_inv(a, b), t0.clone());
                    let (p2, q2) = (compress(p, &[a, b]), compress(q, &[a, b]));
                    let second = contr(p2, succ_above_inv(p2, q2), first);
                    // Both orders leave the survivors in increasing order, so
                    // the induced permutation is the identity.
                    let id = Permutation::identity(second.signature().clone());
                    Some(perm(id, second))
                }
                _ => None,
            },
            (Rule::NegFstProd, Node::Prod(l, b)) => match l.node() {
                Node::Neg(a) => Some(TensorTree::neg(prod(a.clone(), b.clone()))),
                _ => None,
            },
            (Rule::NegSndProd, Node::Prod(a, r)) => match r.node() {
                Node::Neg(b) => Some(TensorTree::neg(prod(a.clone(), b.clone()))),
                _ => None,
            },
            (Rule::NegContr, Node::Contr { i, j, child }) => match child.node() {
                Node::Neg(t0) => Some(TensorTree::neg(contr(*i, *j, t0.clone()))),
                _ => None,
            },
            (Rule::SmulFstProd, Node::Prod(l, b)) => match l.node() {
                Node::Smul(s, a) => Some(smul_of(s, prod(a.clone(), b.clone()))),
                _ => None,
            },
            (Rule::SmulSndProd, Node::Prod(a, r)) => match r.node() {
                Node::Smul(s, b) => Some(smul_of(s, prod(a.clone(), b.clone()))),
                _ => None,
            },
            (Rule::SmulContr, Node::Contr { i, j, child }) => match child.node() {
                Node::Smul(s, t0) => Some(smul_of(s, contr(*i, *j, t0.clone()))),
                _ => None,
            },
            (Rule::NegPerm, Node::Neg(c)) => match c.node() {
                Node::Perm(sigma, t0) => Some(perm(sigma.clone(), TensorTree::neg(t0.clone()))),
                _ => None,
            },
            (Rule::SmulPerm, Node::Smul(s, c)) => match c.node() {
                Node::Perm(sigma, t0) => Some(perm(sigma.clone(), smul_of(s, t0.clone()))),
                _ => None,
            },
            (Rule::SmulNeg, Node::Smul(s, c)) => match c.node() {
                Node::Neg(t0) => Some(TensorTree::neg(smul_of(s, t0.clone()))),
                _ => None,
            },
            (Rule::NegNeg, Node::Neg(c)) => match c.node() {
                Node::Neg(t0) => Some(t0.clone()),
                _ => None,
            },
            (Rule::SmulSmul, Node::Smul(s, c)) => match c.node() {
                Node::Smul(s2, t0) => Some(TensorTree::smul_value(s.value * s2.value, t0.clone())),
                _ => None,
            },
            (Rule::PermEval, Node::Eval { i, x, child }) => match child.node() {
                Node::Perm(sigma, t0) => {
                    let i0 = sigma.inverse().apply(*i);
                    Some(perm(induced(sigma, &[i0], &[*i]), eval(i0, *x, t0.clone())))
                }
                _ => None,
            },
            (Rule::NegEval, Node::Eval { i, x, child }) => match child.node() {
                Node::Neg(t0) => Some(TensorTree::neg(eval(*i, *x, t0.clone()))),
                _ => None,
            },
            (Rule::SmulEval, Node::Eval { i, x, child }) => match child.node() {
                Node::Smul(s, t0) => Some(smul_of(s, eval(*i, *x, t0.clone()))),
                _ => None,
            },
            (Rule::PermAction, Node::Action(g, c)) => match c.node() {
                Node::Perm(sigma, t0) => Some(perm(
                    sigma.clone(),
                    TensorTree::action(g.clone(), t0.clone()).expect(TYPED),
                )),
                _ => None,
            },
            (Rule::NegAction, Node::Action(g, c)) => match c.node() {
                Node::Neg(t0) => Some(TensorTree::neg(TensorTree::action(g.clone(), t0.clone()).expect(TYPED))),
                _ => None,
            },
            (Rule::SmulAction, Node::Action(g, c)) => match c.node() {
                Node::Smul(s, t0) => Some(smul_of(s, TensorTree::action(g.clone(), t0.clone()).expect(TYPED))),
                _ => None,
            },
            (Rule::AddPerm, Node::Add(l, r)) => match l.node() {
                Node::Perm(sigma, a) => {
                    let inv = sigma.inverse();
                    let right = match r.node() {
                        Node::Perm(rho, c) => perm(inv.after(rho).expect(TYPED), c.clone()),
                        _ => perm(inv, r.clone()),
                    };
                    Some(perm(sigma.clone(), TensorTree::add(a.clone(), right).expect(TYPED)))
                }
                _ => None,
            },
            (Rule::PermAdd, Node::Perm(sigma, c)) => match c.node() {
                Node::Add(a, b) => Some(
                    TensorTree::add(perm(sigma.clone(), a.clone()), perm(sigma.clone(), b.clone())).expect(TYPED),
                ),
                _ => None,
            },
            (Rule::ContrSymm, Node::Contr { i, j, child }) => {
                let k = succ_above(*i, *j);
                (k < *i).then(|| contr(k, *i - 1, child.clone()))
            }
            (Rule::PermId, Node::Perm(sigma, c)) => sigma.is_identity().then(|| c.clone()),
            _ => None,
        }
    }

    pub fn matches(self, t: &TensorTree) -> bool {
        self.apply(t).is_some()
    }
}
