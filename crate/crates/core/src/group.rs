//! Group elements acting on tensors.
//!
//! Two groups are used: SL(2,ℂ) for the Lorentz species and the unit circle
//! for the synthetic unit species.

use core::fmt;

use num_traits::Float;
use rand::Rng;
use thiserror::Error;

use crate::linalg::{CMatrix, Complex64, ONE, ZERO};

/// Allowed deviation of `det` (or modulus) from 1 at construction time.
pub const GROUP_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// 2×2 complex matrices with unit determinant.
    Sl2c,
    /// Unit-modulus complex numbers.
    Phase,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Sl2c => f.write_str("SL(2,C)"),
            GroupKind::Phase => f.write_str("U(1)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum GroupError {
    #[error("determinant {det} is not 1")]
    NotUnimodular { det: Complex64 },
    #[error("phase {value} does not have unit modulus")]
    NotUnitModulus { value: Complex64 },
    #[error("cannot combine a {left} element with a {right} element")]
    KindMismatch { left: GroupKind, right: GroupKind },
}

pub type Mat2 = [[Complex64; 2]; 2];

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GroupElement {
    Sl2c(Mat2),
    Phase(Complex64),
}

impl GroupElement {
    pub fn sl2c(m: Mat2) -> Result<Self, GroupError> {
        let det = det2(&m);
        if (det - ONE).norm() > GROUP_TOLERANCE {
            return Err(GroupError::NotUnimodular { det });
        }
        Ok(GroupElement::Sl2c(m))
    }

    pub fn phase(value: Complex64) -> Result<Self, GroupError> {
        if (value.norm() - 1.0).abs() > GROUP_TOLERANCE {
            return Err(GroupError::NotUnitModulus { value });
        }
        Ok(GroupElement::Phase(value))
    }

    pub fn identity(kind: GroupKind) -> Self {
        match kind {
            GroupKind::Sl2c => GroupElement::Sl2c([[ONE, ZERO], [ZERO, ONE]]),
            GroupKind::Phase => GroupElement::Phase(ONE),
        }
    }

    pub fn kind(&self) -> GroupKind {
        match self {
            GroupElement::Sl2c(_) => GroupKind::Sl2c,
            GroupElement::Phase(_) => GroupKind::Phase,
        }
    }

    /// Group product `self · other`.
    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement, GroupError> {
        match (self, other) {
            (GroupElement::Sl2c(a), GroupElement::Sl2c(b)) => Ok(GroupElement::Sl2c(mul2(a, b))),
            (GroupElement::Phase(a), GroupElement::Phase(b)) => Ok(GroupElement::Phase(a * b)),
            _ => Err(GroupError::KindMismatch {
                left: self.kind(),
                right: other.kind(),
            }),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        match self {
            // det = 1, so the adjugate is the inverse.
            GroupElement::Sl2c(m) => GroupElement::Sl2c([[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]]),
            GroupElement::Phase(z) => GroupElement::Phase(z.conj()),
        }
    }

    /// The defining matrix: 2×2 for SL(2,ℂ), 1×1 for a phase.
    pub fn matrix(&self) -> CMatrix {
        match self {
            GroupElement::Sl2c(m) => CMatrix::from_fn(2, 2, |r, c| m[r][c]),
            GroupElement::Phase(z) => CMatrix::scalar(*z),
        }
    }

    /// Samples an SL(2,ℂ) element: entries uniform in the unit disc,
    /// resampled until `|det| > 0.1`, then rescaled by `det^{-1/2}`.
    pub fn sample_sl2c<R: Rng + ?Sized>(rng: &mut R) -> GroupElement {
        loop {
            let m = [
                [sample_disc(rng), sample_disc(rng)],
                [sample_disc(rng), sample_disc(rng)],
            ];
            let det = det2(&m);
            if det.norm() <= 0.1 {
                continue;
            }
            let s = det.sqrt().inv();
            let scaled = [[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]];
            return GroupElement::Sl2c(scaled);
        }
    }

    pub fn sample_phase<R: Rng + ?Sized>(rng: &mut R) -> GroupElement {
        let theta: f64 = rng.gen_range(0.0..core::f64::consts::TAU);
        GroupElement::Phase(Complex64::new(Float::cos(theta), Float::sin(theta)))
    }

    pub fn sample<R: Rng + ?Sized>(kind: GroupKind, rng: &mut R) -> GroupElement {
        match kind {
            GroupKind::Sl2c => Self::sample_sl2c(rng),
            GroupKind::Phase => Self::sample_phase(rng),
        }
    }
}

fn sample_disc<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    loop {
        let x: f64 = rng.gen_range(-1.0..1.0);
        let y: f64 = rng.gen_range(-1.0..1.0);
        if x * x + y * y < 1.0 {
            return Complex64::new(x, y);
        }
    }
}

pub fn det2(m: &Mat2) -> Complex64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

pub fn mul2(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, entry) in row.iter_mut().enumerate() {
            *entry = a[r][0] * b[0][c] + a[r][1] * b[1][c];
        }
    }
    out
}
