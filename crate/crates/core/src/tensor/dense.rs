use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use super::{checked_succ_above, Permutation, Signature, TensorError};
use crate::group::GroupElement;
use crate::linalg::{CMatrix, Complex64, ZERO};
use crate::species::{SpeciesRef, TensorSpecies};

/// A tensor of a species: a signature and its row-major components.
#[derive(Clone, Debug)]
pub struct DenseTensor {
    species: SpeciesRef,
    signature: Signature,
    data: Vec<Complex64>,
}

fn shape_of(species: &TensorSpecies, signature: &Signature) -> Vec<usize> {
    signature.iter().map(|&c| species.dim(c)).collect()
}

fn strides_of(shape: &[usize]) -> Vec<usize> {
    let mut strides = vec![1; shape.len()];
    for p in (0..shape.len().saturating_sub(1)).rev() {
        strides[p] = strides[p + 1] * shape[p + 1];
    }
    strides
}

pub(crate) fn same_species(a: &SpeciesRef, b: &SpeciesRef) -> bool {
    Arc::ptr_eq(a, b) || a.name() == b.name()
}

/// Exact equality of species, signature and every component.
impl PartialEq for DenseTensor {
    fn eq(&self, other: &Self) -> bool {
        same_species(&self.species, &other.species) && self.signature == other.signature && self.data == other.data
    }
}

impl DenseTensor {
    pub fn new(species: SpeciesRef, signature: Signature, data: Vec<Complex64>) -> Result<Self, TensorError> {
        for &c in signature.iter() {
            species.check_color(c)?;
        }
        let expected: usize = shape_of(&species, &signature).iter().product();
        if data.len() != expected {
            return Err(TensorError::DataLength {
                expected,
                found: data.len(),
            });
        }
        Ok(DenseTensor {
            species,
            signature,
            data,
        })
    }

    pub fn zeros(species: SpeciesRef, signature: Signature) -> Result<Self, TensorError> {
        Self::from_fn(species, signature, |_| ZERO)
    }

    pub fn scalar(species: SpeciesRef, value: Complex64) -> Self {
        DenseTensor {
            species,
            signature: Signature::empty(),
            data: vec![value],
        }
    }

    /// Fills components from a function of the multi-index.
    pub fn from_fn(
        species: SpeciesRef,
        signature: Signature,
        mut f: impl FnMut(&[usize]) -> Complex64,
    ) -> Result<Self, TensorError> {
        for &c in signature.iter() {
            species.check_color(c)?;
        }
        let shape = shape_of(&species, &signature);
        let data = MultiIndexIter::new(&shape).map(|idx| f(&idx)).collect();
        Ok(DenseTensor {
            species,
            signature,
            data,
        })
    }

    /// Components with real and imaginary parts uniform in `[-1, 1)`.
    pub fn random<R: Rng + ?Sized>(species: SpeciesRef, signature: Signature, rng: &mut R) -> Result<Self, TensorError> {
        Self::from_fn(species, signature, |_| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
    }

    /// A two-index tensor from a matrix, for signatures of rank 2.
    pub fn from_matrix(species: SpeciesRef, signature: Signature, m: &CMatrix) -> Result<Self, TensorError> {
        Self::new(species, signature, m.as_slice().to_vec())
    }

    pub fn species(&self) -> &SpeciesRef {
        &self.species
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Complex64> {
        self.data
    }

    pub fn rank(&self) -> usize {
        self.signature.len()
    }

    pub fn shape(&self) -> Vec<usize> {
        shape_of(&self.species, &self.signature)
    }

    pub fn strides(&self) -> Vec<usize> {
        strides_of(&self.shape())
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn offset(&self, index: &[usize]) -> usize {
        assert_eq!(index.len(), self.rank(), "multi-index rank");
        let shape = self.shape();
        let mut off = 0;
        for (p, (&i, &d)) in index.iter().zip(&shape).enumerate() {
            assert!(i < d, "index {i} out of range at position {p}");
            off = off * d + i;
        }
        off
    }

    pub fn get(&self, index: &[usize]) -> Complex64 {
        self.data[self.offset(index)]
    }

    pub fn set(&mut self, index: &[usize], value: Complex64) {
        let off = self.offset(index);
        self.data[off] = value;
    }

    /// Largest componentwise modulus of the difference, or `None` when the
    /// signatures differ.
    pub fn max_abs_diff(&self, other: &DenseTensor) -> Option<f64> {
        if self.signature != other.signature {
            return None;
        }
        Some(
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max),
        )
    }

    pub fn approx_eq(&self, other: &DenseTensor, tol: f64) -> bool {
        self.max_abs_diff(other).is_some_and(|d| d <= tol)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn check_species(&self, other: &DenseTensor) -> Result<(), TensorError> {
        if !same_species(&self.species, &other.species) {
            return Err(TensorError::SpeciesMismatch(
                self.species.name().to_string(),
                other.species.name().to_string(),
            ));
        }
        Ok(())
    }

    fn check_position(&self, position: usize) -> Result<(), TensorError> {
        if position >= self.rank() {
            return Err(TensorError::PositionOutOfRange {
                position,
                rank: self.rank(),
            });
        }
        Ok(())
    }

    /// Tensor product with the concatenated signature; component
    /// `(m, m')` is `self[m] · other[m']`.
    pub fn product(&self, other: &DenseTensor) -> Result<DenseTensor, TensorError> {
        self.check_species(other)?;
        let mut data = Vec::with_capacity(self.data.len() * other.data.len());
        for a in &self.data {
            for b in &other.data {
                data.push(a * b);
            }
        }
        Ok(DenseTensor {
            species: self.species.clone(),
            signature: self.signature.concat(&other.signature),
            data,
        })
    }

    /// Contracts position `i` with position `succ_above(i, j)` using the
    /// contraction form of the color at `i`.
    pub fn contract(&self, i: usize, j: usize) -> Result<DenseTensor, TensorError> {
        let rank = self.rank();
        if rank < 2 {
            return Err(TensorError::RankTooSmall(rank));
        }
        let k = checked_succ_above(rank, i, j)?;
        let ci = self.signature[i];
        let ck = self.signature[k];
        if ck != self.species.dual(ci) {
            return Err(TensorError::Duality {
                i,
                k,
                left: self.species.color_name(ci).to_string(),
                right: self.species.color_name(ck).to_string(),
            });
        }
        let form = self.species.contr_unchecked(ci);
        let shape = self.shape();
        let strides = strides_of(&shape);
        let rest: Vec<usize> = (0..rank).filter(|&p| p != i && p != k).collect();
        let rest_shape: Vec<usize> = rest.iter().map(|&p| shape[p]).collect();
        let (di, dk) = (shape[i], shape[k]);
        let data = MultiIndexIter::new(&rest_shape)
            .map(|m| {
                let base: usize = m.iter().zip(&rest).map(|(&v, &p)| v * strides[p]).sum();
                let mut sum = ZERO;
                for x in 0..di {
                    for y in 0..dk {
                        let kxy = form.get(x, y);
                        if kxy != ZERO {
                            sum += kxy * self.data[base + x * strides[i] + y * strides[k]];
                        }
                    }
                }
                sum
            })
            .collect();
        Ok(DenseTensor {
            species: self.species.clone(),
            signature: self.signature.without_pair(i, k),
            data,
        })
    }

    /// Applies `σ`: `result[b] = self[a]` with `a[i] = b[σ(i)]`.
    pub fn permute(&self, sigma: &Permutation) -> Result<DenseTensor, TensorError> {
        if sigma.source() != &self.signature {
            return Err(TensorError::SignatureMismatch(
                sigma.source().display(&self.species),
                self.signature.display(&self.species),
            ));
        }
        let shape = self.shape();
        let target_shape = shape_of(&self.species, sigma.target());
        let target_strides = strides_of(&target_shape);
        let mut data = vec![ZERO; self.data.len()];
        for (value, a) in self.data.iter().zip(MultiIndexIter::new(&shape)) {
            let off: usize = a.iter().enumerate().map(|(i, &v)| v * target_strides[sigma.apply(i)]).sum();
            data[off] = *value;
        }
        Ok(DenseTensor {
            species: self.species.clone(),
            signature: sigma.target().clone(),
            data,
        })
    }

    /// Fixes position `i` to basis index `x`; an `x` beyond the dimension
    /// falls back to 0.
    pub fn eval_index(&self, i: usize, x: usize) -> Result<DenseTensor, TensorError> {
        self.check_position(i)?;
        let shape = self.shape();
        let strides = strides_of(&shape);
        let x = if x < shape[i] { x } else { 0 };
        let rest: Vec<usize> = (0..self.rank()).filter(|&p| p != i).collect();
        let rest_shape: Vec<usize> = rest.iter().map(|&p| shape[p]).collect();
        let data = MultiIndexIter::new(&rest_shape)
            .map(|m| {
                let base: usize = m.iter().zip(&rest).map(|(&v, &p)| v * strides[p]).sum();
                self.data[base + x * strides[i]]
            })
            .collect();
        Ok(DenseTensor {
            species: self.species.clone(),
            signature: self.signature.without(i),
            data,
        })
    }

    /// Acts by `g` with one representation matrix per index position.
    pub fn act(&self, g: &GroupElement) -> Result<DenseTensor, TensorError> {
        if g.kind() != self.species.group_kind() {
            return Err(TensorError::WrongGroup {
                expected: self.species.group_kind(),
                found: g.kind(),
            });
        }
        let shape = self.shape();
        let strides = strides_of(&shape);
        let mut data = self.data.clone();
        for (p, &c) in self.signature.iter().enumerate() {
            let r = self.species.rep_unchecked(c, g);
            apply_on_axis(&mut data, &shape, &strides, p, &r);
        }
        Ok(DenseTensor {
            species: self.species.clone(),
            signature: self.signature.clone(),
            data,
        })
    }

    pub fn add(&self, other: &DenseTensor) -> Result<DenseTensor, TensorError> {
        self.check_species(other)?;
        if self.signature != other.signature {
            return Err(TensorError::SignatureMismatch(
                self.signature.display(&self.species),
                other.signature.display(&other.species),
            ));
        }
        Ok(DenseTensor {
            species: self.species.clone(),
            signature: self.signature.clone(),
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, a: Complex64) -> DenseTensor {
        DenseTensor {
            species: self.species.clone(),
            signature: self.signature.clone(),
            data: self.data.iter().map(|z| z * a).collect(),
        }
    }

    pub fn neg(&self) -> DenseTensor {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

/// `data[.., b, ..] ← Σ_a m[b][a] · data[.., a, ..]` along `axis`.
fn apply_on_axis(data: &mut [Complex64], shape: &[usize], strides: &[usize], axis: usize, m: &CMatrix) {
    let d = shape[axis];
    let stride = strides[axis];
    let outer: usize = shape[..axis].iter().product();
    let inner = stride;
    let mut column = vec![ZERO; d];
    for o in 0..outer {
        for inn in 0..inner {
            let base = o * d * stride + inn;
            for (a, slot) in column.iter_mut().enumerate() {
                *slot = data[base + a * stride];
            }
            for b in 0..d {
                let mut sum = ZERO;
                for (a, v) in column.iter().enumerate() {
                    sum += m.get(b, a) * v;
                }
                data[base + b * stride] = sum;
            }
        }
    }
}

/// Row-major enumeration of all multi-indices of a shape. A rank-0 shape
/// yields one empty index.
pub struct MultiIndexIter {
    shape: Vec<usize>,
    current: Option<Vec<usize>>,
}

impl MultiIndexIter {
    pub fn new(shape: &[usize]) -> Self {
        let current = if shape.iter().any(|&d| d == 0) {
            None
        } else {
            Some(vec![0; shape.len()])
        };
        MultiIndexIter {
            shape: shape.to_vec(),
            current,
        }
    }
}

impl Iterator for MultiIndexIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().expect("checked above");
        let mut p = self.shape.len();
        loop {
            if p == 0 {
                self.current = None;
                break;
            }
            p -= 1;
            cur[p] += 1;
            if cur[p] < self.shape[p] {
                break;
            }
            cur[p] = 0;
        }
        Some(out)
    }
}
