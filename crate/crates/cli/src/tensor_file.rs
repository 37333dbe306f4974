//! The tensor file format: `{"signature": ["up", "down"], "data": [[re, im], ...]}`
//! with `data` in row-major order.

use std::path::Path;

use serde::{Deserialize, Serialize};
use tensor_index_core::species::SpeciesRef;
use tensor_index_core::{Complex64, DenseTensor, Signature};

use crate::error::CliError;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorFile {
    pub signature: Vec<String>,
    pub data: Vec<[f64; 2]>,
}

impl TensorFile {
    pub fn from_tensor(t: &DenseTensor) -> Self {
        let sp = t.species();
        TensorFile {
            signature: t.signature().iter().map(|&c| sp.color_name(c).to_string()).collect(),
            data: t.data().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn into_tensor(self, species: &SpeciesRef) -> Result<DenseTensor, String> {
        let colors = self
            .signature
            .iter()
            .map(|n| {
                species
                    .color_by_name(n)
                    .ok_or_else(|| format!("species `{}` has no color `{n}`", species.name()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let data = self.data.into_iter().map(|[re, im]| Complex64::new(re, im)).collect();
        DenseTensor::new(species.clone(), Signature::new(colors), data).map_err(|e| e.to_string())
    }
}

pub fn to_json_pretty(t: &DenseTensor) -> String {
    serde_json::to_string_pretty(&TensorFile::from_tensor(t)).expect("tensor files always serialize")
}

pub fn parse(text: &str, species: &SpeciesRef) -> Result<DenseTensor, String> {
    let file: TensorFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
    file.into_tensor(species)
}

pub fn read(path: &Path, species: &SpeciesRef) -> Result<DenseTensor, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse(&text, species).map_err(|message| CliError::TensorFile {
        path: path.to_path_buf(),
        message,
    })
}

pub fn write(path: &Path, t: &DenseTensor) -> Result<(), CliError> {
    std::fs::write(path, to_json_pretty(t) + "\n").map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}
