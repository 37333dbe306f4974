mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tensor_index_core::group::{GroupElement, GroupKind};
use tensor_index_core::linalg::CMatrix;
use tensor_index_core::lorentz::{self, BispinorKind, Lorentz};
use tensor_index_core::species::Color;
use tensor_index_core::syntax::{read, Elaborated};
use tensor_index_core::tensor::{DenseTensor, Signature};

use common::random_tensor;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn lorentz_matrices_preserve_minkowski() {
    let mut r = rng(1);
    let eta = lorentz::minkowski();
    for _ in 0..100 {
        let l = lorentz::sl2c_to_lorentz(&GroupElement::sample_sl2c(&mut r)).unwrap();
        assert!(l.transpose().matmul(&eta).matmul(&l).max_abs_diff(&eta) < 1e-10);
        // Orthochronous.
        assert!(l.get(0, 0).re >= 1.0 - 1e-12);
    }
}

#[test]
fn lorentz_map_is_a_homomorphism() {
    let mut r = rng(2);
    for _ in 0..100 {
        let m = GroupElement::sample_sl2c(&mut r);
        let n = GroupElement::sample_sl2c(&mut r);
        let lm = lorentz::sl2c_to_lorentz(&m).unwrap();
        let ln = lorentz::sl2c_to_lorentz(&n).unwrap();
        let lmn = lorentz::sl2c_to_lorentz(&m.mul(&n).unwrap()).unwrap();
        let scale = lm.matmul(&ln).as_slice().iter().map(|z| z.norm()).fold(1.0, f64::max);
        assert!(lm.matmul(&ln).max_abs_diff(&lmn) < 1e-10 * scale);
    }
}

#[test]
fn rejects_non_unimodular_matrices() {
    let one = tensor_index_core::linalg::re(1.0);
    let two = tensor_index_core::linalg::re(2.0);
    let zero = tensor_index_core::linalg::re(0.0);
    let bad = GroupElement::Sl2c([[two, zero], [zero, one]]);
    assert!(matches!(
        lorentz::sl2c_to_lorentz(&bad),
        Err(lorentz::LorentzError::NotUnimodular(_))
    ));
    assert!(GroupElement::sl2c([[two, zero], [zero, one]]).is_err());
}

#[test]
fn dual_colors_and_dimensions() {
    let sp = lorentz::species();
    let expect = [
        ("upL", "downL", 2),
        ("downL", "upL", 2),
        ("upR", "downR", 2),
        ("downR", "upR", 2),
        ("up", "down", 4),
        ("down", "up", 4),
    ];
    for (name, dual, dim) in expect {
        let c = sp.color_by_name(name).unwrap();
        assert_eq!(sp.color_name(sp.dual_color(c).unwrap()), dual);
        assert_eq!(sp.rep_dim(c).unwrap(), dim);
    }
    let id = GroupElement::identity(GroupKind::Sl2c);
    assert_eq!(sp.rep_matrix(lorentz::UP_L, &id).unwrap(), CMatrix::identity(2));
}

/// The ε signs are not free: the metric axiom and the coefficient `+2` of
/// the Pauli contraction identity pick them out of the 16 candidates.
#[test]
fn epsilon_sign_search() {
    let mut passing = Vec::new();
    for mask in 0..16u8 {
        let signs: [f64; 4] = core::array::from_fn(|b| if mask >> b & 1 == 1 { -1.0 } else { 1.0 });
        let sp = lorentz::species_with_epsilon_signs(signs).into_ref();
        if !sp.check_axioms(1e-12).unwrap().all_pass() {
            continue;
        }
        let l = Lorentz::from_species(sp);
        let src = "{pauliCo | ν α β ⊗ pauliContr | ν α' β' = 2 •ₜ εL | α α' ⊗ εR | β β'}ᵀ";
        let Elaborated::Equation(lhs, rhs) = read(src, &l.environment()).unwrap() else {
            panic!()
        };
        if lhs.semantics().approx_eq(&rhs.semantics(), 1e-10) {
            passing.push(signs);
        }
    }
    assert_eq!(passing.len(), 2, "{passing:?}");
    assert!(passing.contains(&[1.0, -1.0, 1.0, -1.0]));
    assert!(passing.contains(&[-1.0, 1.0, -1.0, 1.0]));
}

#[test]
fn metric_symmetries() {
    let l = Lorentz::new();
    for (name, sign) in [("η", 1.0), ("η'", 1.0), ("εL", -1.0), ("εL'", -1.0), ("εR", -1.0), ("εR'", -1.0)] {
        let t = l.tensor(name).unwrap();
        for a in 0..t.shape()[0] {
            for b in 0..t.shape()[1] {
                assert_eq!(t.get(&[a, b]), t.get(&[b, a]) * sign, "{name}");
            }
        }
    }
}

#[test]
fn constants_are_invariant() {
    let l = Lorentz::new();
    let mut r = rng(3);
    for _ in 0..20 {
        let g = GroupElement::sample_sl2c(&mut r);
        for (name, _, t) in l.constants() {
            let acted = t.act(&g).unwrap();
            let scale = t.max_abs().max(1.0);
            assert!(acted.approx_eq(t, 1e-10 * scale), "{name}");
        }
    }
}

#[test]
fn metric_contractions_give_units() {
    let l = Lorentz::new();
    let env = l.environment();
    for (src, unit) in [
        ("{η' | μ ν ⊗ η | ν ρ}ᵀ", "δ_up"),
        ("{εL | α β ⊗ εL' | β γ}ᵀ", "δ_downL"),
        ("{εR | α β ⊗ εR' | β γ}ᵀ", "δ_downR"),
    ] {
        let t = read(src, &env).unwrap().into_tree().unwrap().semantics();
        let u = l.tensor(unit).unwrap();
        assert_eq!(t.data(), u.data(), "{src}");
    }
}

#[test]
fn derived_constants_match_their_definitions() {
    let l = Lorentz::new();
    let env = l.environment();
    for (name, src) in [
        ("pauliCo", lorentz::PAULI_CO),
        ("pauliCoDown", lorentz::PAULI_CO_DOWN),
        ("pauliContrDown", lorentz::PAULI_CONTR_DOWN),
    ] {
        let t = read(src, &env).unwrap().into_tree().unwrap().semantics();
        assert_eq!(&t, &**l.tensor(name).unwrap());
    }
    // pauliCo lowers the vector index: σ_μ = (σ⁰, -σ¹, -σ², -σ³).
    let co = l.tensor("pauliCo").unwrap();
    let contr = l.tensor("pauliContr").unwrap();
    for mu in 0..4 {
        let sign = if mu == 0 { 1.0 } else { -1.0 };
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(co.get(&[mu, a, b]), contr.get(&[mu, a, b]) * sign);
            }
        }
    }
}

#[test]
fn bispinors_follow_their_definitions() {
    let l = Lorentz::new();
    let sp = l.species().clone();
    let mut r = rng(4);
    for kind in BispinorKind::ALL {
        let color: Color = match kind {
            BispinorKind::ContrUp | BispinorKind::ContrDown => lorentz::UP,
            _ => lorentz::DOWN,
        };
        let p = random_tensor(&sp, &Signature::new(vec![color]), &mut r);
        let got = l.bispinor(kind, &p).unwrap();
        let mut env = l.environment();
        env.insert_tensor("p", p.clone());
        let inner = match kind {
            BispinorKind::ContrUp | BispinorKind::ContrDown => lorentz::CONTR_BISPINOR_UP,
            _ => lorentz::CO_BISPINOR_UP,
        };
        let up = read(inner, &env).unwrap().into_tree().unwrap().semantics();
        let want: DenseTensor = match kind {
            BispinorKind::ContrUp | BispinorKind::CoUp => up,
            _ => {
                let name = if kind == BispinorKind::ContrDown { "contrBispinorUp" } else { "coBispinorUp" };
                env.insert_tensor(name, up);
                let src = if kind == BispinorKind::ContrDown {
                    lorentz::CONTR_BISPINOR_DOWN
                } else {
                    lorentz::CO_BISPINOR_DOWN
                };
                read(src, &env).unwrap().into_tree().unwrap().semantics()
            }
        };
        assert_eq!(got, want, "{kind:?}");
    }
}

#[test]
fn bispinor_is_equivariant() {
    let l = Lorentz::new();
    let sp = l.species().clone();
    let mut r = rng(5);
    for _ in 0..20 {
        let g = GroupElement::sample_sl2c(&mut r);
        let p = random_tensor(&sp, &Signature::new(vec![lorentz::UP]), &mut r);
        let lhs = l.bispinor(BispinorKind::ContrUp, &p.act(&g).unwrap()).unwrap();
        let rhs = l.bispinor(BispinorKind::ContrUp, &p).unwrap().act(&g).unwrap();
        assert!(lhs.approx_eq(&rhs, 1e-9 * rhs.max_abs().max(1.0)));
    }
}
