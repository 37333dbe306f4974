//! Built-in checks, one thread each.

use std::thread;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use tensor_index_core::group::GroupElement;
use tensor_index_core::lorentz::{self, BispinorKind, Lorentz};
use tensor_index_core::rewrite::{check_equal, Verdict};
use tensor_index_core::species::unit_species;
use tensor_index_core::syntax::{read, Elaborated, Environment};
use tensor_index_core::tree::{Path, Step, TensorTree};
use tensor_index_core::DenseTensor;

use crate::error::CliError;

const TOL: f64 = 1e-10;

type Check = fn(u64) -> (bool, String);

fn equation(src: &str, env: &Environment) -> (TensorTree, TensorTree) {
    match read(src, env).expect("built-in expression elaborates") {
        Elaborated::Equation(l, r) => (l, r),
        Elaborated::Tree(_) => unreachable!("built-in expression is an equation"),
    }
}

fn axioms(_: u64) -> (bool, String) {
    let lor = lorentz::species().check_axioms(1e-12).expect("positive tolerance");
    let unit = unit_species().check_axioms(1e-12).expect("positive tolerance");
    (
        lor.all_pass() && unit.all_pass(),
        format!("complex-lorentz {}, unit {}", lor.all_pass(), unit.all_pass()),
    )
}

fn pauli_contraction(_: u64) -> (bool, String) {
    let l = Lorentz::new();
    let (lhs, rhs) = equation(
        "{pauliCo | ν α β ⊗ pauliContr | ν α' β' = 2 •ₜ εL | α α' ⊗ εR | β β'}ᵀ",
        &l.environment(),
    );
    let d = lhs.semantics().max_abs_diff(&rhs.semantics()).expect("same signature");
    (d <= TOL, format!("max |Δ| = {d:.2e}"))
}

fn bispinor_lemma(seed: u64) -> (bool, String) {
    let l = Lorentz::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let p = DenseTensor::random(l.species().clone(), vec![lorentz::DOWN].into(), &mut rng).expect("valid color");
        let left = l.bispinor(BispinorKind::CoDown, &p).expect("signature matches");
        let mut env = l.environment();
        env.insert_tensor("p", p);
        let right = read("{pauliContrDown | μ α β ⊗ p | μ}ᵀ", &env)
            .expect("elaborates")
            .into_tree()
            .expect("not an equation")
            .semantics();
        worst = worst.max(left.max_abs_diff(&right).expect("same signature"));
    }
    (worst <= TOL, format!("20 samples, max |Δ| = {worst:.2e}"))
}

fn invariant_constants(seed: u64) -> (bool, String) {
    let l = Lorentz::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let g = GroupElement::sample_sl2c(&mut rng);
        for (_, _, t) in l.constants() {
            let d = t.act(&g).expect("same group").max_abs_diff(t).expect("same signature");
            worst = worst.max(d / t.max_abs().max(1.0));
        }
    }
    (worst <= TOL, format!("10 group elements, max relative |Δ| = {worst:.2e}"))
}

fn minkowski(seed: u64) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eta = lorentz::minkowski();
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let l = lorentz::sl2c_to_lorentz(&GroupElement::sample_sl2c(&mut rng)).expect("sampled in SL(2,C)");
        worst = worst.max(l.transpose().matmul(&eta).matmul(&l).max_abs_diff(&eta));
    }
    (worst <= TOL, format!("100 samples, max |ΛᵀηΛ - η| = {worst:.2e}"))
}

fn anti_symm(_: u64) -> (bool, String) {
    let l = Lorentz::new();
    let mut env = l.environment();
    let sp = l.species().clone();
    env.insert_tensor("A", DenseTensor::zeros(sp.clone(), vec![lorentz::UP, lorentz::UP].into()).expect("valid"));
    env.insert_tensor("S", DenseTensor::zeros(sp, vec![lorentz::DOWN, lorentz::DOWN].into()).expect("valid"));
    let (lhs, rhs) = equation("{A | μ ν ⊗ S | μ ν = - A | μ ν ⊗ S | μ ν}ᵀ", &env);
    let (_, ha) = equation("{A | μ ν = - (A | ν μ)}ᵀ", &env);
    let (_, hs) = equation("{S | μ ν = S | ν μ}ᵀ", &env);
    let at = |s: Step| Path(vec![Step::Only, Step::Only, s]);
    let rewritten = lhs
        .replace_at(&at(Step::Left), ha)
        .and_then(|t| t.replace_at(&at(Step::Right), hs))
        .expect("hypotheses keep signatures");
    let v = check_equal(&rewritten, &rhs, TOL);
    (v == Verdict::EqualByNormalForm, format!("{v:?}"))
}

fn epsilon_signs(_: u64) -> (bool, String) {
    let mut passing = 0;
    for mask in 0..16u8 {
        let signs: [f64; 4] = std::array::from_fn(|b| if mask >> b & 1 == 1 { -1.0 } else { 1.0 });
        let sp = lorentz::species_with_epsilon_signs(signs).into_ref();
        if !sp.check_axioms(1e-12).expect("positive tolerance").all_pass() {
            continue;
        }
        let (lhs, rhs) = equation(
            "{pauliCo | ν α β ⊗ pauliContr | ν α' β' = 2 •ₜ εL | α α' ⊗ εR | β β'}ᵀ",
            &Lorentz::from_species(sp).environment(),
        );
        if lhs.semantics().approx_eq(&rhs.semantics(), TOL) {
            passing += 1;
        }
    }
    (passing == 2, format!("{passing} of 16 sign choices pass (expected 2)"))
}

const CHECKS: [(&str, Check); 7] = [
    ("species axioms", axioms),
    ("pauli contraction", pauli_contraction),
    ("bispinor lemma", bispinor_lemma),
    ("invariant constants", invariant_constants),
    ("minkowski invariance", minkowski),
    ("antisymmetric-symmetric contraction", anti_symm),
    ("epsilon sign search", epsilon_signs),
];

pub fn run(seed: u64, json_out: bool) -> Result<(), CliError> {
    let results: Vec<(bool, String)> = thread::scope(|s| {
        let handles: Vec<_> = CHECKS.iter().map(|(_, f)| s.spawn(move || f(seed))).collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| (false, "panicked".to_string())))
            .collect()
    });
    let failed = results.iter().filter(|(ok, _)| !ok).count();
    if json_out {
        let items: Vec<_> = CHECKS
            .iter()
            .zip(&results)
            .map(|((name, _), (ok, detail))| json!({ "check": name, "pass": ok, "detail": detail }))
            .collect();
        println!("{}", json!({ "checks": items, "failed": failed }));
    } else {
        for ((name, _), (ok, detail)) in CHECKS.iter().zip(&results) {
            println!("{} {name}: {detail}", if *ok { "PASS" } else { "FAIL" });
        }
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(CliError::ChecksFailed(format!("{failed} self-test checks failed")))
    }
}
