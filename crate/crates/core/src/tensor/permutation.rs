use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use super::Signature;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PermutationError {
    #[error("map has length {map}, signatures have lengths {source_len} and {target_len}")]
    Length {
        map: usize,
        source_len: usize,
        target_len: usize,
    },
    #[error("map is not a bijection")]
    NotBijection,
    #[error("color of source position {0} differs from its image")]
    ColorMismatch(usize),
    #[error("cannot compose: intermediate signatures differ")]
    Compose,
}

/// A color-compatible bijection of index positions.
///
/// Source position `i` is sent to target position `map[i]`, and
/// `source[i] == target[map[i]]` for every `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    source: Signature,
    target: Signature,
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(source: Signature, target: Signature, map: Vec<usize>) -> Result<Self, PermutationError> {
        if map.len() != source.len() || map.len() != target.len() {
            return Err(PermutationError::Length {
                map: map.len(),
                source_len: source.len(),
                target_len: target.len(),
            });
        }
        check_bijection(&map)?;
        for (i, &p) in map.iter().enumerate() {
            if source[i] != target[p] {
                return Err(PermutationError::ColorMismatch(i));
            }
        }
        Ok(Permutation { source, target, map })
    }

    /// Builds the permutation that sends source position `i` to `map[i]`; the
    /// target signature follows from the source.
    pub fn from_map(source: Signature, map: Vec<usize>) -> Result<Self, PermutationError> {
        if map.len() != source.len() {
            return Err(PermutationError::Length {
                map: map.len(),
                source_len: source.len(),
                target_len: source.len(),
            });
        }
        check_bijection(&map)?;
        let mut target = source.to_vec();
        for (i, &p) in map.iter().enumerate() {
            target[p] = source[i];
        }
        Ok(Permutation {
            source,
            target: Signature::new(target),
            map,
        })
    }

    pub fn identity(sig: Signature) -> Self {
        let map = (0..sig.len()).collect();
        Permutation {
            source: sig.clone(),
            target: sig,
            map,
        }
    }

    pub fn source(&self) -> &Signature {
        &self.source
    }

    pub fn target(&self) -> &Signature {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.map.len()];
        for (i, &p) in self.map.iter().enumerate() {
            inv[p] = i;
        }
        Permutation {
            source: self.target.clone(),
            target: self.source.clone(),
            map: inv,
        }
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Permutation) -> Result<Permutation, PermutationError> {
        if first.target != self.source {
            return Err(PermutationError::Compose);
        }
        Ok(Permutation {
            source: first.source.clone(),
            target: self.target.clone(),
            map: first.map.iter().map(|&p| self.map[p]).collect(),
        })
    }

    /// `self ⊕ id`: acts as `self` on the first positions and fixes the
    /// trailing `extra` positions.
    pub fn pad_right(&self, extra: &Signature) -> Permutation {
        let n = self.map.len();
        let mut map = self.map.clone();
        map.extend(n..n + extra.len());
        Permutation {
            source: self.source.concat(extra),
            target: self.target.concat(extra),
            map,
        }
    }

    /// `id ⊕ self`: fixes the leading `extra` positions.
    pub fn pad_left(&self, extra: &Signature) -> Permutation {
        let n = extra.len();
        let mut map: Vec<usize> = (0..n).collect();
        map.extend(self.map.iter().map(|&p| p + n));
        Permutation {
            source: extra.concat(&self.source),
            target: extra.concat(&self.target),
            map,
        }
    }
}

fn check_bijection(map: &[usize]) -> Result<(), PermutationError> {
    let mut seen = vec![false; map.len()];
    for &p in map {
        if p >= map.len() || seen[p] {
            return Err(PermutationError::NotBijection);
        }
        seen[p] = true;
    }
    Ok(())
}
