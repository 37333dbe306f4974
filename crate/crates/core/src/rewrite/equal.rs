use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::Rng;

use super::normalize;
use crate::linalg::Complex64;
use crate::tensor::{DenseTensor, MultiIndexIter, Signature};
use crate::tree::{Node, TensorTree};

/// Component of maximal discrepancy between two tensors.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub index: Vec<usize>,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub diff: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// Normal forms coincide: same body and same root permutation.
    EqualByNormalForm,
    /// Semantics agree within tolerance.
    EqualNumerically { max_diff: f64 },
    /// Unequal. `None` when the signatures already differ.
    NotEqual(Option<Witness>),
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        !matches!(self, Verdict::NotEqual(_))
    }
}

fn split_root_perm(t: &TensorTree) -> (Vec<usize>, &TensorTree) {
    match t.node() {
        Node::Perm(sigma, body) => (sigma.map().to_vec(), body),
        _ => ((0..t.rank()).collect(), t),
    }
}

fn same_normal_form(lhs: &TensorTree, rhs: &TensorTree) -> bool {
    let (nl, nr) = (normalize(lhs), normalize(rhs));
    let (ml, bl) = split_root_perm(&nl);
    let (mr, br) = split_root_perm(&nr);
    ml == mr && bl == br
}

/// Largest discrepancy, located.
pub fn witness(lhs: &DenseTensor, rhs: &DenseTensor) -> Witness {
    let shape = lhs.shape();
    let mut best = Witness {
        index: alloc::vec![0; shape.len()],
        lhs: lhs.data()[0],
        rhs: rhs.data()[0],
        diff: -1.0,
    };
    for (n, idx) in MultiIndexIter::new(&shape).enumerate() {
        let (a, b) = (lhs.data()[n], rhs.data()[n]);
        let d = (a - b).norm();
        if d > best.diff {
            best = Witness {
                index: idx,
                lhs: a,
                rhs: b,
                diff: d,
            };
        }
    }
    best
}

fn compare_numerically(lhs: &DenseTensor, rhs: &DenseTensor, tol: f64) -> Verdict {
    let w = witness(lhs, rhs);
    if w.diff <= tol {
        Verdict::EqualNumerically { max_diff: w.diff }
    } else {
        Verdict::NotEqual(Some(w))
    }
}

/// Compares two trees: first their normal forms, then their semantics on
/// the leaf tensors they carry.
pub fn check_equal(lhs: &TensorTree, rhs: &TensorTree, tol: f64) -> Verdict {
    if lhs.signature() != rhs.signature() {
        return Verdict::NotEqual(None);
    }
    if same_normal_form(lhs, rhs) {
        return Verdict::EqualByNormalForm;
    }
    compare_numerically(&lhs.semantics(), &rhs.semantics(), tol)
}

/// Like [`check_equal`], but treats named leaves as variables: the numeric
/// comparison is repeated on `samples` random instantiations, one random
/// tensor per leaf name and signature.
pub fn check_equal_sampled<R: Rng + ?Sized>(
    lhs: &TensorTree,
    rhs: &TensorTree,
    tol: f64,
    samples: usize,
    rng: &mut R,
) -> Verdict {
    if lhs.signature() != rhs.signature() {
        return Verdict::NotEqual(None);
    }
    if same_normal_form(lhs, rhs) {
        return Verdict::EqualByNormalForm;
    }
    let mut leaves = BTreeSet::new();
    collect_leaves(lhs, &mut leaves);
    collect_leaves(rhs, &mut leaves);
    let species = lhs.species().clone();
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let values: BTreeMap<(String, Signature), Arc<DenseTensor>> = leaves
            .iter()
            .map(|k| {
                let t = DenseTensor::random(species.clone(), k.1.clone(), rng).expect("leaf colors are valid");
                (k.clone(), Arc::new(t))
            })
            .collect();
        let lookup = |name: &str, sig: &Signature| values.get(&(String::from(name), sig.clone())).cloned();
        let l = lhs.substitute_leaves(&lookup).expect("signatures match by construction");
        let r = rhs.substitute_leaves(&lookup).expect("signatures match by construction");
        match compare_numerically(&l.semantics(), &r.semantics(), tol) {
            Verdict::EqualNumerically { max_diff } => worst = worst.max(max_diff),
            other => return other,
        }
    }
    Verdict::EqualNumerically { max_diff: worst }
}

fn collect_leaves(t: &TensorTree, out: &mut BTreeSet<(String, Signature)>) {
    if let Node::Tensor(leaf) = t.node() {
        if let Some(n) = &leaf.name {
            out.insert((n.clone(), t.signature().clone()));
        }
    }
    for c in t.children() {
        collect_leaves(c, out);
    }
}
