//! Index notation for tensors, from strings to dense numbers.
//!
//! The crate is organised as a short pipeline:
//!
//! * [`species`] describes a family of tensors: index colors, their duals,
//!   representation matrices, and the contraction, unit and metric data.
//! * [`tensor`] holds dense row-major tensors and the multilinear kernels
//!   (product, contraction, permutation, evaluation, group action).
//! * [`tree`] is the typed tensor-tree IR and its semantics.
//! * [`rewrite`] provides semantics-preserving rewrite rules, a normaliser and
//!   an equality checker.
//! * [`syntax`] parses `{T | μ ν ⊗ S | ν ρ}ᵀ` style strings and elaborates
//!   them into trees.
//! * [`lorentz`] builds the complex Lorentz species together with metrics,
//!   Pauli matrices and bispinors.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod group;
pub mod linalg;
pub mod lorentz;
pub mod rewrite;
pub mod species;
pub mod syntax;
pub mod tensor;
pub mod tree;

pub use group::{GroupElement, GroupKind};
pub use linalg::{CMatrix, Complex64};
pub use species::{Color, SpeciesRef, TensorSpecies};
pub use tensor::{DenseTensor, Permutation, Signature};
pub use tree::{Path, Step, TensorTree};
