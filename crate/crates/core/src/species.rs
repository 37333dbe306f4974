//! Tensor species: the algebraic data behind a family of tensors.
//!
//! A species fixes a finite set of index colors, the dual involution `τ`, the
//! dimension and representation attached to each color, and three pieces of
//! invariant data per color, all stored in the standard basis:
//!
//! * the contraction form `K_c`, a `dim(c) × dim(τc)` matrix pairing a vector
//!   of color `c` with one of color `τc`;
//! * the unit, an element of `τc ⊗ c` stored as a `dim(τc) × dim(c)` array;
//! * the metric, an element of `c ⊗ c`.
//!
//! [`TensorSpecies::check_axioms`] verifies the four compatibility axioms by
//! explicit index sums.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::group::{GroupElement, GroupKind};
use crate::linalg::{CMatrix, ONE, ZERO};

/// An index color, identified by its position in the owning species.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Color(u8);

impl Color {
    pub const fn new(index: u8) -> Self {
        Color(index)
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

/// Representation matrix of a color evaluated at a group element. The
/// element's kind has already been checked against the species.
pub type RepFn = fn(Color, &GroupElement) -> CMatrix;

pub type SpeciesRef = Arc<TensorSpecies>;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum SpeciesError {
    #[error("species has no colors")]
    NoColors,
    #[error("color index {0} is not part of species `{1}`")]
    UnknownColor(usize, String),
    #[error("dual map is not an involution at color `{0}`")]
    NotInvolution(String),
    #[error("color `{0}` has dimension zero")]
    ZeroDimension(String),
    #[error("{what} for color `{color}` has shape {found:?}, expected {expected:?}")]
    BadShape {
        what: &'static str,
        color: String,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("species `{species}` acts by {expected}, got a {found} element")]
    WrongGroup {
        species: String,
        expected: GroupKind,
        found: GroupKind,
    },
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
}

#[derive(Clone, Debug)]
struct ColorInfo {
    name: String,
    dual: Color,
    dim: usize,
}

/// Everything needed to build a [`TensorSpecies`].
#[derive(Clone, Debug)]
pub struct SpeciesDef {
    pub name: String,
    pub group: GroupKind,
    /// `(name, index of the dual color, dimension)` per color.
    pub colors: Vec<(String, u8, usize)>,
    pub rep: RepFn,
    pub contr: Vec<CMatrix>,
    pub unit: Vec<CMatrix>,
    pub metric: Vec<CMatrix>,
}

#[derive(Clone, Debug)]
pub struct TensorSpecies {
    name: String,
    group: GroupKind,
    colors: Vec<ColorInfo>,
    rep: RepFn,
    contr: Vec<CMatrix>,
    unit: Vec<CMatrix>,
    metric: Vec<CMatrix>,
}

impl TensorSpecies {
    pub fn new(def: SpeciesDef) -> Result<Self, SpeciesError> {
        if def.colors.is_empty() {
            return Err(SpeciesError::NoColors);
        }
        let n = def.colors.len();
        let colors: Vec<ColorInfo> = def
            .colors
            .into_iter()
            .map(|(name, dual, dim)| ColorInfo {
                name,
                dual: Color(dual),
                dim,
            })
            .collect();
        for info in &colors {
            if info.dual.index() >= n {
                return Err(SpeciesError::UnknownColor(info.dual.index(), def.name.clone()));
            }
            if info.dim == 0 {
                return Err(SpeciesError::ZeroDimension(info.name.clone()));
            }
        }
        for (idx, info) in colors.iter().enumerate() {
            if colors[info.dual.index()].dual.index() != idx {
                return Err(SpeciesError::NotInvolution(info.name.clone()));
            }
        }
        let species = TensorSpecies {
            name: def.name,
            group: def.group,
            colors,
            rep: def.rep,
            contr: def.contr,
            unit: def.unit,
            metric: def.metric,
        };
        species.check_shapes()?;
        Ok(species)
    }

    fn check_shapes(&self) -> Result<(), SpeciesError> {
        let n = self.colors.len();
        for (what, list) in [("contraction form", &self.contr), ("unit", &self.unit), ("metric", &self.metric)] {
            if list.len() != n {
                return Err(SpeciesError::BadShape {
                    what,
                    color: String::from("*"),
                    expected: (n, 1),
                    found: (list.len(), 1),
                });
            }
        }
        for c in self.colors() {
            let d = self.dim(c);
            let dd = self.dim(self.dual(c));
            let checks = [
                ("contraction form", &self.contr[c.index()], (d, dd)),
                ("unit", &self.unit[c.index()], (dd, d)),
                ("metric", &self.metric[c.index()], (d, d)),
            ];
            for (what, m, expected) in checks {
                if (m.rows(), m.cols()) != expected {
                    return Err(SpeciesError::BadShape {
                        what,
                        color: self.color_name(c).to_string(),
                        expected,
                        found: (m.rows(), m.cols()),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn into_ref(self) -> SpeciesRef {
        Arc::new(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group_kind(&self) -> GroupKind {
        self.group
    }

    pub fn color_count(&self) -> usize {
        self.colors.len()
    }

    pub fn colors(&self) -> impl Iterator<Item = Color> + '_ {
        (0..self.colors.len()).map(|i| Color(i as u8))
    }

    pub fn contains(&self, c: Color) -> bool {
        c.index() < self.colors.len()
    }

    pub fn check_color(&self, c: Color) -> Result<(), SpeciesError> {
        if self.contains(c) {
            Ok(())
        } else {
            Err(SpeciesError::UnknownColor(c.index(), self.name.clone()))
        }
    }

    pub fn color_by_name(&self, name: &str) -> Option<Color> {
        self.colors.iter().position(|c| c.name == name).map(|i| Color(i as u8))
    }

    /// Name of a color. Panics if the color is foreign to this species.
    pub fn color_name(&self, c: Color) -> &str {
        &self.colors[c.index()].name
    }

    /// `τ(c)`.
    pub fn dual_color(&self, c: Color) -> Result<Color, SpeciesError> {
        self.check_color(c)?;
        Ok(self.dual(c))
    }

    pub fn rep_dim(&self, c: Color) -> Result<usize, SpeciesError> {
        self.check_color(c)?;
        Ok(self.dim(c))
    }

    pub fn contraction_form(&self, c: Color) -> Result<&CMatrix, SpeciesError> {
        self.check_color(c)?;
        Ok(&self.contr[c.index()])
    }

    pub fn unit_vec(&self, c: Color) -> Result<&CMatrix, SpeciesError> {
        self.check_color(c)?;
        Ok(&self.unit[c.index()])
    }

    pub fn metric_vec(&self, c: Color) -> Result<&CMatrix, SpeciesError> {
        self.check_color(c)?;
        Ok(&self.metric[c.index()])
    }

    pub fn rep_matrix(&self, c: Color, g: &GroupElement) -> Result<CMatrix, SpeciesError> {
        self.check_color(c)?;
        self.check_group(g)?;
        Ok((self.rep)(c, g))
    }

    pub fn check_group(&self, g: &GroupElement) -> Result<(), SpeciesError> {
        if g.kind() != self.group {
            return Err(SpeciesError::WrongGroup {
                species: self.name.clone(),
                expected: self.group,
                found: g.kind(),
            });
        }
        Ok(())
    }

    /// A copy of this species with one metric replaced. Used to probe the
    /// axiom checker with broken data.
    pub fn with_metric(&self, c: Color, metric: CMatrix) -> Result<Self, SpeciesError> {
        self.check_color(c)?;
        let mut out = self.clone();
        out.metric[c.index()] = metric;
        out.check_shapes()?;
        Ok(out)
    }

    // Unchecked accessors for colors already validated (e.g. via a tensor
    // signature).
    #[inline]
    pub(crate) fn dual(&self, c: Color) -> Color {
        self.colors[c.index()].dual
    }

    #[inline]
    pub(crate) fn dim(&self, c: Color) -> usize {
        self.colors[c.index()].dim
    }

    #[inline]
    pub(crate) fn contr_unchecked(&self, c: Color) -> &CMatrix {
        &self.contr[c.index()]
    }

    #[inline]
    pub(crate) fn rep_unchecked(&self, c: Color, g: &GroupElement) -> CMatrix {
        (self.rep)(c, g)
    }

    pub fn check_axioms(&self, tol: f64) -> Result<AxiomReport, SpeciesError> {
        if !(tol > 0.0) {
            return Err(SpeciesError::BadTolerance(tol));
        }
        let per_color = self
            .colors()
            .map(|c| {
                let deviation = self.axiom_deviations(c);
                AxiomCheck {
                    color: c,
                    color_name: self.color_name(c).to_string(),
                    passed: deviation.map(|d| d <= tol),
                    deviation,
                }
            })
            .collect();
        Ok(AxiomReport {
            species: self.name.clone(),
            tol,
            per_color,
        })
    }

    /// Max-abs deviations for the four axioms, in [`Axiom::ALL`] order.
    fn axiom_deviations(&self, c: Color) -> [f64; 4] {
        let tc = self.dual(c);
        let d = self.dim(c);
        let dd = self.dim(tc);
        let k = &self.contr[c.index()];
        let k_dual = &self.contr[tc.index()];
        let u = &self.unit[c.index()];
        let u_dual = &self.unit[tc.index()];
        let m = &self.metric[c.index()];
        let m_dual = &self.metric[tc.index()];

        // K_c[x][y] = K_{τc}[y][x]
        let mut tmul_symm: f64 = 0.0;
        for x in 0..d {
            for y in 0..dd {
                tmul_symm = tmul_symm.max((k.get(x, y) - k_dual.get(y, x)).norm());
            }
        }

        // unit(c)[a][b] = unit(τc)[b][a]
        let mut unit_symm: f64 = 0.0;
        for a in 0..dd {
            for b in 0..d {
                unit_symm = unit_symm.max((u.get(a, b) - u_dual.get(b, a)).norm());
            }
        }

        // Σ_y K_c[x][y] unit(c)[y][z] = δ_xz
        let mut contr_unit: f64 = 0.0;
        for x in 0..d {
            for z in 0..d {
                let mut sum = ZERO;
                for y in 0..dd {
                    sum += k.get(x, y) * u.get(y, z);
                }
                let expected = if x == z { ONE } else { ZERO };
                contr_unit = contr_unit.max((sum - expected).norm());
            }
        }

        // metric(c)[a][b] K_c[b][p] metric(τc)[p][q], braided, equals unit(c)[q][a]
        let mut contr_metric: f64 = 0.0;
        for a in 0..d {
            for q in 0..dd {
                let mut sum = ZERO;
                for b in 0..d {
                    for p in 0..dd {
                        sum += m.get(a, b) * k.get(b, p) * m_dual.get(p, q);
                    }
                }
                contr_metric = contr_metric.max((sum - u.get(q, a)).norm());
            }
        }

        [tmul_symm, unit_symm, contr_unit, contr_metric]
    }

    /// Invariance of contraction, unit and metric of color `c` under `g`, as
    /// max-abs deviations `[contraction, unit, metric]`.
    pub fn invariance_deviations(&self, c: Color, g: &GroupElement) -> Result<[f64; 3], SpeciesError> {
        self.check_color(c)?;
        self.check_group(g)?;
        let tc = self.dual(c);
        let r = self.rep_unchecked(c, g);
        let r_dual = self.rep_unchecked(tc, g);
        let k = &self.contr[c.index()];
        let u = &self.unit[c.index()];
        let m = &self.metric[c.index()];
        // Rᵀ K R_τ, R_τ U Rᵀ, R M Rᵀ
        let k_moved = r.transpose().matmul(k).matmul(&r_dual);
        let u_moved = r_dual.matmul(u).matmul(&r.transpose());
        let m_moved = r.matmul(m).matmul(&r.transpose());
        Ok([k_moved.max_abs_diff(k), u_moved.max_abs_diff(u), m_moved.max_abs_diff(m)])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    ContrTmulSymm,
    UnitSymm,
    ContrUnit,
    ContrMetric,
}

impl Axiom {
    pub const ALL: [Axiom; 4] = [Axiom::ContrTmulSymm, Axiom::UnitSymm, Axiom::ContrUnit, Axiom::ContrMetric];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::ContrTmulSymm => "contr_tmul_symm",
            Axiom::UnitSymm => "unit_symm",
            Axiom::ContrUnit => "contr_unit",
            Axiom::ContrMetric => "contr_metric",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomCheck {
    pub color: Color,
    pub color_name: String,
    /// Pass flags in [`Axiom::ALL`] order.
    pub passed: [bool; 4],
    pub deviation: [f64; 4],
}

impl AxiomCheck {
    pub fn passes(&self, axiom: Axiom) -> bool {
        self.passed[axiom as usize]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport {
    pub species: String,
    pub tol: f64,
    pub per_color: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.per_color.iter().all(|c| c.passed.iter().all(|&p| p))
    }

    pub fn failures(&self) -> impl Iterator<Item = (&str, Axiom)> + '_ {
        self.per_color.iter().flat_map(|c| {
            Axiom::ALL
                .into_iter()
                .filter(move |&a| !c.passes(a))
                .map(move |a| (c.color_name.as_str(), a))
        })
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "species {} (tol {:e})", self.species, self.tol)?;
        for check in &self.per_color {
            write!(f, "  {:<8}", check.color_name)?;
            for (axiom, (ok, dev)) in Axiom::ALL.iter().zip(check.passed.iter().zip(&check.deviation)) {
                write!(f, " {}={}({:.1e})", axiom.name(), if *ok { "pass" } else { "FAIL" }, dev)?;
            }
            writeln!(f)?;
        }
        write!(f, "{}", if self.all_pass() { "all axioms pass" } else { "axiom check FAILED" })
    }
}

/// The synthetic species: one self-dual color of dimension 1 with every piece
/// of data equal to 1. The group is U(1) acting trivially, which is the only
/// action that keeps `K = [[1]]` invariant.
pub fn unit_species() -> TensorSpecies {
    fn trivial(_: Color, _: &GroupElement) -> CMatrix {
        CMatrix::identity(1)
    }
    TensorSpecies::new(SpeciesDef {
        name: String::from("unit"),
        group: GroupKind::Phase,
        colors: alloc::vec![(String::from("s"), 0, 1)],
        rep: trivial,
        contr: alloc::vec![CMatrix::identity(1)],
        unit: alloc::vec![CMatrix::identity(1)],
        metric: alloc::vec![CMatrix::identity(1)],
    })
    .expect("unit species is well formed")
}
