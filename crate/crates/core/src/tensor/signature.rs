use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Deref;

use crate::species::{Color, TensorSpecies};

/// Ordered colors of a tensor's index positions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(Vec<Color>);

impl Signature {
    pub fn new(colors: Vec<Color>) -> Self {
        Signature(colors)
    }

    pub fn empty() -> Self {
        Signature(Vec::new())
    }

    pub fn colors(&self) -> &[Color] {
        &self.0
    }

    pub fn concat(&self, other: &Signature) -> Signature {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Signature(v)
    }

    /// Signature with position `i` deleted.
    pub fn without(&self, i: usize) -> Signature {
        let mut v = self.0.clone();
        v.remove(i);
        Signature(v)
    }

    /// Signature with two distinct positions deleted, the rest in order.
    pub fn without_pair(&self, a: usize, b: usize) -> Signature {
        Signature(
            self.0
                .iter()
                .enumerate()
                .filter(|&(p, _)| p != a && p != b)
                .map(|(_, &c)| c)
                .collect(),
        )
    }

    pub fn inserted(&self, i: usize, c: Color) -> Signature {
        let mut v = self.0.clone();
        v.insert(i, c);
        Signature(v)
    }

    /// Renders as `[up, down]` using the species' color names.
    pub fn display(&self, species: &TensorSpecies) -> String {
        let mut out = String::from("[");
        for (n, &c) in self.0.iter().enumerate() {
            if n > 0 {
                out.push_str(", ");
            }
            if species.contains(c) {
                out.push_str(species.color_name(c));
            } else {
                out.push('?');
            }
        }
        out.push(']');
        out
    }
}

impl Deref for Signature {
    type Target = [Color];
    fn deref(&self) -> &[Color] {
        &self.0
    }
}

impl From<Vec<Color>> for Signature {
    fn from(v: Vec<Color>) -> Self {
        Signature(v)
    }
}

impl<const N: usize> From<[Color; N]> for Signature {
    fn from(v: [Color; N]) -> Self {
        Signature(v.to_vec())
    }
}

impl FromIterator<Color> for Signature {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        Signature(iter.into_iter().collect())
    }
}
