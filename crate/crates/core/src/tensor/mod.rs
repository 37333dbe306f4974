//! Dense tensors, signatures, permutations and the multilinear kernels.
//!
//! Storage is row-major with the last index fastest. All of the coherence
//! isomorphisms of the underlying monoidal category (associators, unitors,
//! braiding) reduce to index arithmetic on this layout.

mod dense;
mod permutation;
mod signature;

pub use dense::{DenseTensor, MultiIndexIter};
pub(crate) use dense::same_species;
pub use permutation::{Permutation, PermutationError};
pub use signature::Signature;

use alloc::string::String;
use thiserror::Error;

use crate::group::GroupKind;
use crate::species::SpeciesError;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum TensorError {
    #[error("tensors belong to different species (`{0}` vs `{1}`)")]
    SpeciesMismatch(String, String),
    #[error("data has {found} components, signature needs {expected}")]
    DataLength { expected: usize, found: usize },
    #[error("signatures differ: {0} vs {1}")]
    SignatureMismatch(String, String),
    #[error("position {position} out of range for rank {rank}")]
    PositionOutOfRange { position: usize, rank: usize },
    #[error("hole position {i} / offset {j} out of range for size {size}")]
    SuccAboveRange { size: usize, i: usize, j: usize },
    #[error("cannot contract rank-{0} tensor")]
    RankTooSmall(usize),
    #[error("positions {i} and {k} are not dual: `{left}` vs `{right}`")]
    Duality {
        i: usize,
        k: usize,
        left: String,
        right: String,
    },
    #[error("group element of kind {found} does not act on species with group {expected}")]
    WrongGroup { expected: GroupKind, found: GroupKind },
    #[error(transparent)]
    Species(#[from] SpeciesError),
    #[error(transparent)]
    Permutation(#[from] PermutationError),
}

/// `Fin.succAbove`: the order-preserving injection `[0, size-1) → [0, size)`
/// missing `i`. Returns `j` if `j < i`, else `j + 1`.
#[inline]
pub const fn succ_above(i: usize, j: usize) -> usize {
    if j < i {
        j
    } else {
        j + 1
    }
}

/// Checked [`succ_above`]; `size` is the size of the codomain, so
/// `i < size` and `j < size - 1` are required.
pub fn checked_succ_above(size: usize, i: usize, j: usize) -> Result<usize, TensorError> {
    if i >= size || j + 1 >= size {
        return Err(TensorError::SuccAboveRange { size, i, j });
    }
    Ok(succ_above(i, j))
}

/// Left inverse of [`succ_above`]: the `j` with `succ_above(i, j) == k`.
/// Requires `k != i`.
#[inline]
pub const fn succ_above_inv(i: usize, k: usize) -> usize {
    debug_assert!(i != k);
    if k < i {
        k
    } else {
        k - 1
    }
}
