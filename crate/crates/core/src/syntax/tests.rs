use alloc::string::{String, ToString};
use alloc::vec;

use super::*;
use crate::group::{GroupElement, GroupKind};
use crate::linalg::re;
use crate::species::{unit_species, Color};
use crate::tensor::DenseTensor;

fn env() -> Environment {
    let sp = unit_species().into_ref();
    let mut env = Environment::new(sp.clone());
    let s = Color::new(0);
    for (name, rank, v) in [("T", 2, 2.0), ("T2", 2, 3.0), ("V", 1, 5.0), ("W", 3, 7.0)] {
        env.insert_tensor(name, DenseTensor::new(sp.clone(), vec![s; rank].into(), vec![re(v)]).unwrap());
    }
    env.insert_tensor("δ_s", DenseTensor::new(sp, vec![s, s].into(), vec![re(1.0)]).unwrap());
    env.insert_scalar("a", re(0.5));
    env.insert_group("g", GroupElement::identity(GroupKind::Phase));
    env
}

fn dump(src: &str) -> String {
    match read(src, &env()).unwrap() {
        Elaborated::Tree(t) => t.to_string(),
        Elaborated::Equation(l, r) => crate::tree::EquationDump(&l, &r).to_string(),
    }
}

#[test]
fn golden_forms() {
    assert_eq!(dump("{T | μ ν}ᵀ"), "(tensor \"T\")");
    assert_eq!(dump("{T | 1 ν}ᵀ"), "(eval 0 1 (tensor \"T\"))");
    assert_eq!(dump("{- T | μ ν}ᵀ"), "(neg (tensor \"T\"))");
    assert_eq!(dump("{a •ₜ T | μ ν}ᵀ"), "(smul a (tensor \"T\"))");
    assert_eq!(dump("{g •ₐ T | μ ν}ᵀ"), "(action g (tensor \"T\"))");
    assert_eq!(dump("{T | μ ν ⊗ V | σ}ᵀ"), "(prod (tensor \"T\") (tensor \"V\"))");
    assert_eq!(
        dump("{T | μ ν ⊗ T2 | ν σ}ᵀ"),
        "(contr 1 1 (prod (tensor \"T\") (tensor \"T2\")))"
    );
    assert_eq!(
        dump("{T | μ ν ⊗ T2 | ν ν}ᵀ"),
        "(prod (tensor \"T\") (contr 0 0 (tensor \"T2\")))"
    );
    assert_eq!(
        dump("{T | μ ν + T2 | μ ν}ᵀ"),
        "(add (tensor \"T\") (perm [0 1] (tensor \"T2\")))"
    );
    assert_eq!(
        dump("{T | μ ν + T2 | ν μ}ᵀ"),
        "(add (tensor \"T\") (perm [1 0] (tensor \"T2\")))"
    );
    assert_eq!(
        dump("{T | μ ν = T2 | ν μ}ᵀ"),
        "(eq (tensor \"T\") (perm [1 0] (tensor \"T2\")))"
    );
}

#[test]
fn evals_shift_positions() {
    assert_eq!(dump("{W | 1 ν 0}ᵀ"), "(eval 1 0 (eval 0 1 (tensor \"W\")))");
}

#[test]
fn index_names_are_irrelevant() {
    assert_eq!(dump("{T | μ ν ⊗ T2 | ν σ}ᵀ"), dump("{T | a b ⊗ T2 | b c}ᵀ"));
}

#[test]
fn errors_and_categories() {
    let e = env();
    let cat = |s: &str| read(s, &e).unwrap_err().category();
    assert_eq!(cat("{T | μ}ᵀ"), "elaborate-arity");
    assert_eq!(cat("{W | μ μ μ}ᵀ"), "elaborate-multiplicity");
    assert_eq!(cat("{T | μ ν + T2 | μ σ}ᵀ"), "elaborate-free-index");
    assert_eq!(cat("{Q | μ}ᵀ"), "env-missing");
    assert_eq!(cat("{b •ₜ V | μ}ᵀ"), "env-missing");
    assert_eq!(cat("{h •ₐ V | μ}ᵀ"), "env-missing");
    assert_eq!(cat("{T | μ ν"), "parse");
    let mut e2 = e.clone();
    let lor = crate::lorentz::species().into_ref();
    e2.insert_tensor("Z", DenseTensor::zeros(lor, vec![crate::lorentz::UP].into()).unwrap());
    e2.insert_group("k", GroupElement::identity(GroupKind::Sl2c));
    assert_eq!(read("{Z | μ}ᵀ", &e2).unwrap_err().category(), "elaborate-type");
    assert_eq!(read("{k •ₐ V | μ}ᵀ", &e2).unwrap_err().category(), "elaborate-type");
    match read("{T | μ}ᵀ", &e).unwrap_err() {
        Error::Elab(ElabError::Arity { expected: 2, found: 1, span, .. }) => assert_eq!(span.start, 1),
        other => panic!("{other:?}"),
    }
}

#[test]
fn format_examples() {
    let e = env();
    let t = read("{T | μ ν ⊗ T2 | ν σ}ᵀ", &e).unwrap().into_tree().unwrap();
    assert_eq!(format(&t, &e).unwrap(), "{T | i0 i1 ⊗ T2 | i1 i2}ᵀ");
    let t = read("{T | 1 ν}ᵀ", &e).unwrap().into_tree().unwrap();
    assert_eq!(format(&t, &e).unwrap(), "{T | 1 i0}ᵀ");
    let t = read("{T | μ ν + T2 | ν μ}ᵀ", &e).unwrap().into_tree().unwrap();
    let text = format(&t, &e).unwrap();
    assert_eq!(text, "{T | i0 i1 + T2 | i1 i0}ᵀ");
    assert_eq!(read(&text, &e).unwrap().into_tree().unwrap(), t);
}

#[test]
fn format_rejects_anonymous_leaves() {
    let e = env();
    let anon = crate::tree::TensorTree::anonymous((*e.tensors["T"]).clone());
    assert_eq!(format(&anon, &e), Err(FormatError::AnonymousLeaf));
}

#[test]
fn bare_permutation_uses_units() {
    let e = env();
    let t = read("{T | μ ν + T2 | ν μ}ᵀ", &e).unwrap().into_tree().unwrap();
    let crate::tree::Node::Add(_, right) = t.node() else { panic!() };
    let text = format(right, &e).unwrap();
    assert_eq!(text, "{δ_s | i0 i1 ⊗ δ_s | i2 i3 ⊗ T2 | i3 i1}ᵀ");
    let back = read(&text, &e).unwrap().into_tree().unwrap();
    assert!(back.semantics().approx_eq(&right.semantics(), 1e-12));
}
