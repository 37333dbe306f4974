//! The complex Lorentz species and its constants.
//!
//! Colors, in index order: `upL`, `downL`, `upR`, `downR` (Weyl fermions,
//! dimension 2) and `up`, `down` (complex Lorentz vectors, dimension 4).
//! An element `M` of SL(2,ℂ) acts by `M`, `M^{-T}`, `M*`, `M^{-†}`, `Λ(M)`
//! and `Λ(M)^{-T}` respectively.
//!
//! Contraction forms and units are identity matrices. The metrics are
//! `η = η' = diag(1, -1, -1, -1)` and `εL = εR = [[0, 1], [-1, 0]]`,
//! `εL' = εR' = -εL`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::group::{det2, GroupElement, GroupKind, GROUP_TOLERANCE};
use crate::linalg::{re, CMatrix, Complex64, I, ONE, ZERO};
use crate::species::{Color, SpeciesDef, SpeciesRef, TensorSpecies};
use crate::syntax::{self, Elaborated, Environment};
use crate::tensor::{DenseTensor, Signature};
use crate::tree::TensorTree;

pub const UP_L: Color = Color::new(0);
pub const DOWN_L: Color = Color::new(1);
pub const UP_R: Color = Color::new(2);
pub const DOWN_R: Color = Color::new(3);
pub const UP: Color = Color::new(4);
pub const DOWN: Color = Color::new(5);

pub const SPECIES_NAME: &str = "complex-lorentz";

#[derive(Clone, Debug, PartialEq, Error)]
pub enum LorentzError {
    #[error("expected an SL(2,C) element, got a {0} element")]
    WrongGroup(GroupKind),
    #[error("determinant {0} is not 1")]
    NotUnimodular(Complex64),
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("bispinor {kind} needs a vector of signature {expected}, got {found}")]
    BispinorSignature {
        kind: &'static str,
        expected: &'static str,
        found: String,
    },
}

/// The Pauli matrices `σ⁰ = I, σ¹, σ², σ³`.
pub fn pauli() -> [CMatrix; 4] {
    [
        CMatrix::identity(2),
        CMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]),
        CMatrix::from_row_major(2, 2, vec![ZERO, -I, I, ZERO]),
        CMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]),
    ]
}

/// `diag(1, -1, -1, -1)`.
pub fn minkowski() -> CMatrix {
    CMatrix::from_fn(4, 4, |a, b| match (a, b) {
        (0, 0) => ONE,
        _ if a == b => re(-1.0),
        _ => ZERO,
    })
}

/// `[[0, 1], [-1, 0]]`.
pub fn epsilon() -> CMatrix {
    CMatrix::from_real(2, 2, &[0.0, 1.0, -1.0, 0.0])
}

fn lambda_of(m: &CMatrix) -> CMatrix {
    let p = pauli();
    let bar: Vec<CMatrix> = p
        .iter()
        .enumerate()
        .map(|(k, s)| if k == 0 { s.clone() } else { s.scale(re(-1.0)) })
        .collect();
    let m_dag = m.adjoint();
    CMatrix::from_fn(4, 4, |mu, nu| {
        let prod = bar[mu].matmul(m).matmul(&bar[nu]).matmul(&m_dag);
        re(0.5 * prod.trace().re)
    })
}

/// `Λ(M)^μ_ν = ½ Re tr(σ̄^μ M σ̄^ν M†)` with `σ̄ = (σ⁰, -σ¹, -σ², -σ³)`.
pub fn sl2c_to_lorentz(g: &GroupElement) -> Result<CMatrix, LorentzError> {
    let GroupElement::Sl2c(m) = g else {
        return Err(LorentzError::WrongGroup(g.kind()));
    };
    let det = det2(m);
    if (det - ONE).norm() > GROUP_TOLERANCE {
        return Err(LorentzError::NotUnimodular(det));
    }
    Ok(lambda_of(&g.matrix()))
}

fn rep(c: Color, g: &GroupElement) -> CMatrix {
    let m = g.matrix();
    let inv = g.inverse().matrix();
    match c.index() {
        0 => m,
        1 => inv.transpose(),
        2 => m.conj(),
        3 => inv.adjoint(),
        4 => lambda_of(&m),
        _ => lambda_of(&inv).transpose(),
    }
}

/// Species definition with the ε metrics scaled by the given signs
/// `(εL, εL', εR, εR')`. The shipped species uses `(1, -1, 1, -1)`.
pub fn species_with_epsilon_signs(signs: [f64; 4]) -> TensorSpecies {
    let e = epsilon();
    let names = ["upL", "downL", "upR", "downR", "up", "down"];
    let duals = [1u8, 0, 3, 2, 5, 4];
    let dims = [2usize, 2, 2, 2, 4, 4];
    let colors = (0..6).map(|k| (names[k].to_string(), duals[k], dims[k])).collect();
    let metric = vec![
        e.scale(re(signs[0])),
        e.scale(re(signs[1])),
        e.scale(re(signs[2])),
        e.scale(re(signs[3])),
        minkowski(),
        minkowski(),
    ];
    TensorSpecies::new(SpeciesDef {
        name: SPECIES_NAME.to_string(),
        group: GroupKind::Sl2c,
        colors,
        rep,
        contr: dims.iter().map(|&d| CMatrix::identity(d)).collect(),
        unit: dims.iter().map(|&d| CMatrix::identity(d)).collect(),
        metric,
    })
    .expect("Lorentz species is well formed")
}

pub fn species() -> TensorSpecies {
    species_with_epsilon_signs([1.0, -1.0, 1.0, -1.0])
}

/// `pauliContr` with signature `[up, upL, upR]`: component `(μ, α, β)` is
/// `(σ^μ)_{αβ}`.
pub fn pauli_contr(sp: &SpeciesRef) -> DenseTensor {
    let p = pauli();
    DenseTensor::from_fn(sp.clone(), Signature::new(vec![UP, UP_L, UP_R]), |ix| {
        p[ix[0]].get(ix[1], ix[2])
    })
    .expect("colors are valid")
}

pub const PAULI_CO: &str = "{η' | μ ν ⊗ pauliContr | ν α β}ᵀ";
pub const PAULI_CO_DOWN: &str = "{pauliCo | μ α β ⊗ εL' | α α' ⊗ εR' | β β'}ᵀ";
pub const PAULI_CONTR_DOWN: &str = "{pauliContr | μ α β ⊗ εL' | α α' ⊗ εR' | β β'}ᵀ";
pub const CONTR_BISPINOR_UP: &str = "{pauliCo | μ α β ⊗ p | μ}ᵀ";
pub const CONTR_BISPINOR_DOWN: &str = "{εL' | α α' ⊗ εR' | β β' ⊗ contrBispinorUp | α β}ᵀ";
pub const CO_BISPINOR_UP: &str = "{pauliContr | μ α β ⊗ p | μ}ᵀ";
pub const CO_BISPINOR_DOWN: &str = "{εL' | α α' ⊗ εR' | β β' ⊗ coBispinorUp | α β}ᵀ";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BispinorKind {
    ContrUp,
    ContrDown,
    CoUp,
    CoDown,
}

impl BispinorKind {
    pub const ALL: [BispinorKind; 4] = [
        BispinorKind::ContrUp,
        BispinorKind::ContrDown,
        BispinorKind::CoUp,
        BispinorKind::CoDown,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BispinorKind::ContrUp => "contrBispinorUp",
            BispinorKind::ContrDown => "contrBispinorDown",
            BispinorKind::CoUp => "coBispinorUp",
            BispinorKind::CoDown => "coBispinorDown",
        }
    }

    fn vector_color(self) -> Color {
        match self {
            BispinorKind::ContrUp | BispinorKind::ContrDown => UP,
            BispinorKind::CoUp | BispinorKind::CoDown => DOWN,
        }
    }
}

/// Unicode and ASCII names of the metric constants, with their colors.
const METRICS: [(&str, &str, Color); 6] = [
    ("η", "eta", UP),
    ("η'", "eta'", DOWN),
    ("εL", "epsL", UP_L),
    ("εL'", "epsL'", DOWN_L),
    ("εR", "epsR", UP_R),
    ("εR'", "epsR'", DOWN_R),
];

/// The species together with every named constant.
#[derive(Clone, Debug)]
pub struct Lorentz {
    species: SpeciesRef,
    /// `(unicode name, ascii name)` to tensor, in a fixed order.
    constants: Vec<(String, String, Arc<DenseTensor>)>,
}

fn eval_text(src: &str, env: &Environment) -> DenseTensor {
    match syntax::read(src, env) {
        Ok(Elaborated::Tree(t)) => t.semantics(),
        other => panic!("built-in definition `{src}` failed to elaborate: {other:?}"),
    }
}

impl Default for Lorentz {
    fn default() -> Self {
        Self::new()
    }
}

impl Lorentz {
    pub fn new() -> Self {
        Self::from_species(species().into_ref())
    }

    /// Builds the constants over a given Lorentz-shaped species.
    pub fn from_species(sp: SpeciesRef) -> Self {
        let mut out = Lorentz {
            species: sp.clone(),
            constants: Vec::new(),
        };
        for (u, a, c) in METRICS {
            let m = sp.metric_vec(c).expect("valid color");
            let t = DenseTensor::new(sp.clone(), Signature::new(vec![c, c]), m.as_slice().to_vec())
                .expect("metric shape matches");
            out.push(u, a, t);
        }
        for c in sp.colors().collect::<Vec<_>>() {
            let name = sp.color_name(c).to_string();
            let d = sp.dual(c);
            let u = sp.unit_vec(c).expect("valid color");
            let t = DenseTensor::new(sp.clone(), Signature::new(vec![d, c]), u.as_slice().to_vec())
                .expect("unit shape matches");
            out.push(&format!("δ_{name}"), &format!("delta_{name}"), t);
        }
        out.push("pauliContr", "pauliContr", pauli_contr(&sp));
        let co = eval_text(PAULI_CO, &out.environment());
        out.push("pauliCo", "pauliCo", co);
        let co_down = eval_text(PAULI_CO_DOWN, &out.environment());
        out.push("pauliCoDown", "pauliCoDown", co_down);
        let contr_down = eval_text(PAULI_CONTR_DOWN, &out.environment());
        out.push("pauliContrDown", "pauliContrDown", contr_down);
        out
    }

    fn push(&mut self, unicode: &str, ascii: &str, t: DenseTensor) {
        self.constants.push((unicode.to_string(), ascii.to_string(), Arc::new(t)));
    }

    pub fn species(&self) -> &SpeciesRef {
        &self.species
    }

    /// `(unicode name, ascii name, tensor)` for every constant.
    pub fn constants(&self) -> impl Iterator<Item = (&str, &str, &Arc<DenseTensor>)> {
        self.constants.iter().map(|(u, a, t)| (u.as_str(), a.as_str(), t))
    }

    /// Looks a constant up by either spelling.
    pub fn tensor(&self, name: &str) -> Result<&Arc<DenseTensor>, LorentzError> {
        self.constants
            .iter()
            .find(|(u, a, _)| u == name || a == name)
            .map(|(_, _, t)| t)
            .ok_or_else(|| LorentzError::UnknownConstant(name.to_string()))
    }

    /// A leaf over the named constant.
    pub fn constant(&self, name: &str) -> Result<TensorTree, LorentzError> {
        let t = self.tensor(name)?.clone();
        Ok(TensorTree::leaf(Some(name.to_string()), t))
    }

    /// An environment holding every constant under both spellings.
    pub fn environment(&self) -> Environment {
        let mut tensors = BTreeMap::new();
        for (u, a, t) in &self.constants {
            tensors.insert(u.clone(), t.clone());
            tensors.insert(a.clone(), t.clone());
        }
        Environment {
            species: self.species.clone(),
            tensors,
            scalars: BTreeMap::new(),
            groups: BTreeMap::new(),
        }
    }

    /// The bispinor of the given kind built from `p`, which must have
    /// signature `[up]` for the `contr` kinds and `[down]` for the `co`
    /// kinds.
    pub fn bispinor(&self, kind: BispinorKind, p: &DenseTensor) -> Result<DenseTensor, LorentzError> {
        let want = kind.vector_color();
        if p.signature().colors() != [want] {
            return Err(LorentzError::BispinorSignature {
                kind: kind.name(),
                expected: if want == UP { "[up]" } else { "[down]" },
                found: p.signature().display(&self.species),
            });
        }
        let mut env = self.environment();
        env.insert_tensor("p", p.clone());
        let (up_src, up_name, down_src) = match kind {
            BispinorKind::ContrUp | BispinorKind::ContrDown => (CONTR_BISPINOR_UP, "contrBispinorUp", CONTR_BISPINOR_DOWN),
            BispinorKind::CoUp | BispinorKind::CoDown => (CO_BISPINOR_UP, "coBispinorUp", CO_BISPINOR_DOWN),
        };
        let up = eval_text(up_src, &env);
        if matches!(kind, BispinorKind::ContrUp | BispinorKind::CoUp) {
            return Ok(up);
        }
        env.insert_tensor(up_name, up);
        Ok(eval_text(down_src, &env))
    }
}
