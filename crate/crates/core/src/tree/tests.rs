use alloc::string::ToString;
use alloc::vec;

use super::*;
use crate::linalg::{re, ONE};
use crate::species::{unit_species, Color};
use crate::tensor::DenseTensor;

fn s() -> Color {
    Color::new(0)
}

fn leaf(name: &str, rank: usize, value: f64) -> TensorTree {
    let sp = unit_species().into_ref();
    let t = DenseTensor::new(sp, vec![s(); rank].into(), vec![re(value)]).unwrap();
    TensorTree::tensor(name, t)
}

#[test]
fn signatures_follow_typing_rules() {
    let t = leaf("T", 3, 2.0);
    let c = TensorTree::contr(0, 0, t.clone()).unwrap();
    assert_eq!(c.rank(), 1);
    let p = TensorTree::prod(leaf("A", 1, 1.0), leaf("B", 2, 1.0)).unwrap();
    assert_eq!(p.rank(), 3);
    let e = TensorTree::eval(2, 5, t).unwrap();
    assert_eq!(e.rank(), 2);
}

#[test]
fn constructors_reject_ill_typed() {
    assert!(TensorTree::contr(0, 0, leaf("T", 1, 1.0)).is_err());
    assert!(TensorTree::contr(0, 2, leaf("T", 3, 1.0)).is_err());
    assert!(TensorTree::eval(2, 0, leaf("T", 2, 1.0)).is_err());
    assert!(matches!(
        TensorTree::add(leaf("A", 1, 1.0), leaf("B", 2, 1.0)),
        Err(TreeError::AddSignature(..))
    ));
    let sigma = Permutation::identity(vec![s(); 2].into());
    assert!(TensorTree::perm(sigma, leaf("A", 3, 1.0)).is_err());
}

#[test]
fn semantics_is_structural() {
    let a = leaf("A", 2, 3.0);
    let tree = TensorTree::neg(TensorTree::smul_value(re(2.0), TensorTree::contr(0, 0, a).unwrap()));
    assert_eq!(tree.semantics().data(), &[re(-6.0)]);
}

#[test]
fn dump_forms() {
    let t = leaf("T", 2, 1.0);
    let t2 = leaf("T2", 2, 1.0);
    let c = TensorTree::contr(1, 1, TensorTree::prod(t.clone(), t2).unwrap()).unwrap();
    assert_eq!(c.to_string(), "(contr 1 1 (prod (tensor \"T\") (tensor \"T2\")))");
    let e = TensorTree::eval(0, 1, t.clone()).unwrap();
    assert_eq!(e.to_string(), "(eval 0 1 (tensor \"T\"))");
    let sm = TensorTree::smul_value(Complex64::new(1.0, -2.0), t.clone());
    assert_eq!(sm.to_string(), "(smul [1-2i] (tensor \"T\"))");
    let swap = Permutation::from_map(vec![s(); 2].into(), vec![1, 0]).unwrap();
    assert_eq!(
        TensorTree::perm(swap, t).unwrap().to_string(),
        "(perm [1 0] (tensor \"T\"))"
    );
}

#[test]
fn replace_at_respects_signatures() {
    let a = leaf("A", 2, 3.0);
    let tree = TensorTree::contr(0, 0, TensorTree::neg(a)).unwrap();
    let path = Path(vec![Step::Only, Step::Only]);
    let replaced = tree.replace_at(&path, leaf("Z", 2, 0.0)).unwrap();
    assert_eq!(replaced.semantics().data(), &[re(0.0)]);
    assert_eq!(replaced.to_string(), "(contr 0 0 (neg (tensor \"Z\")))");
    assert!(tree.replace_at(&path, leaf("Z", 1, 0.0)).is_err());
    assert!(tree.replace_at(&Path(vec![Step::Left]), leaf("Z", 2, 0.0)).is_err());
    let same = tree.replace_at(&path, tree.subtree_at(&path).unwrap().clone()).unwrap();
    assert_eq!(same, tree);
}

#[test]
fn paths_cover_every_node() {
    let tree = TensorTree::add(
        TensorTree::prod(leaf("A", 1, 1.0), leaf("B", 1, 1.0)).unwrap(),
        TensorTree::neg(leaf("C", 2, ONE.re)),
    )
    .unwrap();
    let paths = tree.paths();
    assert_eq!(paths.len(), tree.size());
    for p in &paths {
        assert!(tree.subtree_at(p).is_some());
    }
    assert_eq!(tree.leaf_names(), vec!["A", "B", "C"]);
}
