mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tensor_index_core::lorentz::{self, Lorentz};
use tensor_index_core::rewrite::normalize;
use tensor_index_core::species::{unit_species, SpeciesRef};
use tensor_index_core::syntax::{format, format_equation, read, Elaborated, Environment, FormatError};
use tensor_index_core::tree::{Action, Node, TensorTree};

use common::{random_tree, random_tensor};

/// Gives every leaf and group element a distinct name and records it in
/// `env`.
fn relabel(t: &TensorTree, env: &mut Environment, next: &mut usize) -> TensorTree {
    match t.node() {
        Node::Tensor(leaf) => {
            let name = format!("T{next}");
            *next += 1;
            env.tensors.insert(name.clone(), leaf.tensor.clone());
            TensorTree::leaf(Some(name), leaf.tensor.clone())
        }
        Node::Action(a, c) => {
            let name = format!("g{next}");
            *next += 1;
            env.groups.insert(name.clone(), a.element);
            let c = relabel(c, env, next);
            TensorTree::action(
                Action {
                    element: a.element,
                    name: Some(name),
                },
                c,
            )
            .unwrap()
        }
        _ => {
            let kids = t.children().into_iter().map(|c| relabel(c, env, next)).collect();
            t.with_children(kids).unwrap()
        }
    }
}

fn base_env(sp: &SpeciesRef) -> Environment {
    if sp.name() == lorentz::SPECIES_NAME {
        return Lorentz::new().environment();
    }
    let mut env = Environment::new(sp.clone());
    for c in sp.colors() {
        let d = sp.dual_color(c).unwrap();
        let unit = sp.unit_vec(c).unwrap();
        let t = tensor_index_core::DenseTensor::new(sp.clone(), vec![d, c].into(), unit.as_slice().to_vec()).unwrap();
        env.insert_tensor(&format!("δ_{}", sp.color_name(c)), t);
    }
    env
}

fn close(a: &TensorTree, b: &TensorTree) -> bool {
    let (x, y) = (a.semantics(), b.semantics());
    x.max_abs_diff(&y).unwrap() <= 1e-10 * x.max_abs().max(1.0)
}

#[test]
fn format_round_trips_random_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut checked = 0;
    for sp in [unit_species().into_ref(), lorentz::species().into_ref()] {
        for n in 0..300 {
            let raw = random_tree(&sp, 1 + n % 4, &mut rng);
            let mut env = base_env(&sp);
            let mut next = 0;
            let t = relabel(&raw, &mut env, &mut next);
            for candidate in [t.clone(), normalize(&t)] {
                let text = match format(&candidate, &env) {
                    Ok(text) => text,
                    Err(FormatError::EvalOfAction) => continue,
                    Err(e) => panic!("{e} for {candidate}"),
                };
                let back = read(&text, &env)
                    .unwrap_or_else(|e| panic!("{e} re-reading {text}"))
                    .into_tree()
                    .unwrap();
                assert_eq!(back.signature(), candidate.signature(), "{text}");
                assert!(close(&back, &candidate), "{text}\n{candidate}\n{back}");
                checked += 1;
            }
        }
    }
    assert!(checked > 900, "{checked}");
}

#[test]
fn elaborated_text_is_a_fixed_point_of_read_format() {
    let l = Lorentz::new();
    let mut env = l.environment();
    env.insert_tensor("p", random_tensor(l.species(), &vec![lorentz::DOWN].into(), &mut ChaCha8Rng::seed_from_u64(1)));
    for src in [
        "{pauliCo | ν α β ⊗ pauliContr | ν α' β'}ᵀ",
        "{εL' | α α' ⊗ εR' | β β' ⊗ pauliContr | μ α β}ᵀ",
        "{pauliContrDown | μ α β ⊗ p | μ}ᵀ",
        "{η | μ ν + η | ν μ}ᵀ",
    ] {
        let t = read(src, &env).unwrap().into_tree().unwrap();
        let text = format(&t, &env).unwrap();
        let back = read(&text, &env).unwrap().into_tree().unwrap();
        assert_eq!(back, t, "{src} -> {text}");
    }
}

#[test]
fn equations_format_with_both_sides() {
    let l = Lorentz::new();
    let env = l.environment();
    let src = "{pauliCo | ν α β ⊗ pauliContr | ν α' β' = 2 •ₜ εL | α α' ⊗ εR | β β'}ᵀ";
    let Elaborated::Equation(lhs, rhs) = read(src, &env).unwrap() else { panic!() };
    let text = format_equation(&lhs, &rhs, &env).unwrap();
    let Elaborated::Equation(l2, r2) = read(&text, &env).unwrap() else { panic!("{text}") };
    assert_eq!(l2, lhs);
    assert!(close(&r2, &rhs), "{text}");
}

#[test]
fn ascii_spellings_elaborate_identically() {
    let env = Lorentz::new().environment();
    let pairs = [
        ("{η' | μ ν ⊗ pauliContr | ν α β}ᵀ", "{eta' | m n (x) pauliContr | n a b}T"),
        ("{2 •ₜ εL | α α' ⊗ εR | β β'}ᵀ", "{2 *. epsL | a c @ epsR | b d}T"),
        ("{η | μ ν − η | ν μ}ᵀ", "{eta | m n - eta | n m}T"),
    ];
    for (uni, ascii) in pairs {
        let a = read(uni, &env).unwrap().into_tree().unwrap();
        let b = read(ascii, &env).unwrap().into_tree().unwrap();
        assert_eq!(a.semantics(), b.semantics(), "{ascii}");
    }
}

#[test]
fn lorentz_error_categories() {
    let env = Lorentz::new().environment();
    let cat = |s: &str| read(s, &env).unwrap_err().category();
    assert_eq!(cat("{pauliContr | μ α β ⊗ pauliContr | μ γ δ}ᵀ"), "elaborate-duality");
    assert_eq!(cat("{η | μ}ᵀ"), "elaborate-arity");
    assert_eq!(cat("{pauliContr | μ μ μ}ᵀ"), "elaborate-multiplicity");
    assert_eq!(cat("{η | μ ν = η' | μ ν}ᵀ"), "elaborate-free-index");
    assert_eq!(cat("{ξ | μ}ᵀ"), "env-missing");
    assert_eq!(cat("{η | μ ν"), "parse");
    assert_eq!(cat("{η | μ ν}ᵀ extra"), "parse");
}
