//! Building the elaboration environment from command-line options.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tensor_index_core::group::{GroupElement, GroupKind};
use tensor_index_core::lorentz::{self, Lorentz};
use tensor_index_core::species::{unit_species, SpeciesRef};
use tensor_index_core::syntax::Environment;
use tensor_index_core::{Complex64, DenseTensor, Signature};

use crate::error::CliError;
use crate::tensor_file;

pub const SPECIES: [&str; 2] = [lorentz::SPECIES_NAME, "unit"];

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn species(name: &str) -> Result<SpeciesRef, CliError> {
    match name {
        lorentz::SPECIES_NAME => Ok(lorentz::species().into_ref()),
        "unit" => Ok(unit_species().into_ref()),
        other => Err(usage(format!(
            "unknown species `{other}` (known: {})",
            SPECIES.join(", ")
        ))),
    }
}

/// The species' built-in names: every Lorentz constant, or the units `δ_c`.
pub fn base_environment(name: &str) -> Result<Environment, CliError> {
    if name == lorentz::SPECIES_NAME {
        return Ok(Lorentz::new().environment());
    }
    let sp = species(name)?;
    let mut env = Environment::new(sp.clone());
    for c in sp.colors() {
        let unit = sp.unit_vec(c).expect("species colors are valid");
        let sig = Signature::new(vec![sp.dual_color(c).expect("valid color"), c]);
        let t = DenseTensor::new(sp.clone(), sig, unit.as_slice().to_vec()).expect("unit shape matches");
        env.insert_tensor(&format!("δ_{}", sp.color_name(c)), t.clone());
        env.insert_tensor(&format!("delta_{}", sp.color_name(c)), t);
    }
    Ok(env)
}

/// `NAME=PATH`, or a bare path named after its file stem.
pub fn env_file(spec: &str) -> Result<(String, PathBuf), CliError> {
    if let Some((name, path)) = spec.split_once('=') {
        if name.is_empty() {
            return Err(usage(format!("`--env {spec}`: empty tensor name")));
        }
        return Ok((name.to_string(), PathBuf::from(path)));
    }
    let path = PathBuf::from(spec);
    let name = Path::new(spec)
        .file_stem()
        .and_then(|s| s.to_str())
        .ok_or_else(|| usage(format!("`--env {spec}`: cannot derive a tensor name")))?
        .to_string();
    Ok((name, path))
}

/// `NAME=c1,c2,...` (colors by name) or `NAME:RANK` (the first color
/// repeated); the tensor is zero.
pub fn stub(spec: &str, sp: &SpeciesRef) -> Result<(String, DenseTensor), CliError> {
    let (name, colors) = if let Some((name, list)) = spec.split_once('=') {
        let colors = list
            .split(',')
            .filter(|s| !s.is_empty())
            .map(|c| {
                sp.color_by_name(c.trim())
                    .ok_or_else(|| usage(format!("`--stub {spec}`: species `{}` has no color `{c}`", sp.name())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        (name, colors)
    } else if let Some((name, rank)) = spec.split_once(':') {
        let rank: usize = rank
            .parse()
            .map_err(|_| usage(format!("`--stub {spec}`: rank must be a natural number")))?;
        let first = sp.colors().next().expect("species has colors");
        (name, vec![first; rank])
    } else {
        return Err(usage(format!("`--stub {spec}`: expected NAME=COLORS or NAME:RANK")));
    };
    let t = DenseTensor::zeros(sp.clone(), Signature::new(colors)).expect("colors were checked");
    Ok((name.to_string(), t))
}

pub fn complex(text: &str) -> Option<Complex64> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .unwrap_or(text.trim());
    Complex64::from_str(inner).ok()
}

/// `NAME=VALUE`, the value as `2`, `-1.5`, `3i` or `1+2i`.
pub fn scalar(spec: &str) -> Result<(String, Complex64), CliError> {
    let (name, value) = spec
        .split_once('=')
        .ok_or_else(|| usage(format!("`--scalar {spec}`: expected NAME=VALUE")))?;
    let z = complex(value).ok_or_else(|| usage(format!("`--scalar {spec}`: `{value}` is not a complex number")))?;
    Ok((name.to_string(), z))
}

fn real(spec: &str, text: &str) -> Result<f64, CliError> {
    text.parse()
        .map_err(|_| usage(format!("`--group {spec}`: `{text}` is not a number")))
}

fn axis(spec: &str, a: &str) -> Result<usize, CliError> {
    match a {
        "x" => Ok(1),
        "y" => Ok(2),
        "z" => Ok(3),
        _ => Err(usage(format!("`--group {spec}`: axis must be x, y or z"))),
    }
}

/// `cosh(s/2) I + sinh(s/2) σ_k` for a boost, `cos(θ/2) I - i sin(θ/2) σ_k`
/// for a rotation.
fn exp_pauli(k: usize, a: Complex64, b: Complex64) -> [[Complex64; 2]; 2] {
    let p = &lorentz::pauli()[k];
    let e = |r: usize, c: usize| {
        let id = if r == c { a } else { Complex64::new(0.0, 0.0) };
        id + b * p.get(r, c)
    };
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// `NAME=ELEMENT` where `ELEMENT` is `identity`, `random:SEED`,
/// `boost-x:RAPIDITY` (or `-y`, `-z`), `rot-x:ANGLE` (or `-y`, `-z`),
/// `sl2c:A,B,C,D` for the SL(2,ℂ) species, or `phase:ANGLE` for U(1).
pub fn group(spec: &str, kind: GroupKind) -> Result<(String, GroupElement), CliError> {
    let (name, element) = spec
        .split_once('=')
        .ok_or_else(|| usage(format!("`--group {spec}`: expected NAME=ELEMENT")))?;
    let (head, arg) = element.split_once(':').unwrap_or((element, ""));
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let g = match (head, kind) {
        ("identity", _) => GroupElement::identity(kind),
        ("random", _) => {
            let seed: u64 = arg
                .parse()
                .map_err(|_| usage(format!("`--group {spec}`: seed must be an integer")))?;
            GroupElement::sample(kind, &mut ChaCha8Rng::seed_from_u64(seed))
        }
        ("phase", GroupKind::Phase) => {
            let t = real(spec, arg)?;
            GroupElement::Phase(c(t.cos(), t.sin()))
        }
        (h, GroupKind::Sl2c) if h.starts_with("boost-") => {
            let s = real(spec, arg)? / 2.0;
            GroupElement::Sl2c(exp_pauli(axis(spec, &h[6..])?, c(s.cosh(), 0.0), c(s.sinh(), 0.0)))
        }
        (h, GroupKind::Sl2c) if h.starts_with("rot-") => {
            let t = real(spec, arg)? / 2.0;
            GroupElement::Sl2c(exp_pauli(axis(spec, &h[4..])?, c(t.cos(), 0.0), c(0.0, -t.sin())))
        }
        ("sl2c", GroupKind::Sl2c) => {
            let entries = arg
                .split(',')
                .map(|s| complex(s).ok_or_else(|| usage(format!("`--group {spec}`: bad entry `{s}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            let [a, b, cc, d] = entries[..] else {
                return Err(usage(format!("`--group {spec}`: sl2c needs four entries")));
            };
            GroupElement::sl2c([[a, b], [cc, d]]).map_err(|e| usage(format!("`--group {spec}`: {e}")))?
        }
        _ => {
            return Err(usage(format!(
                "`--group {spec}`: unknown element `{head}` for a {kind} species"
            )))
        }
    };
    Ok((name.to_string(), g))
}

#[derive(Clone, Debug, Default)]
pub struct EnvOptions {
    pub species: String,
    pub env: Vec<String>,
    pub stub: Vec<String>,
    pub scalar: Vec<String>,
    pub group: Vec<String>,
}

pub fn build(opts: &EnvOptions) -> Result<Environment, CliError> {
    let mut env = base_environment(&opts.species)?;
    let sp = env.species.clone();
    for s in &opts.stub {
        let (name, t) = stub(s, &sp)?;
        env.insert_tensor(&name, t);
    }
    for s in &opts.env {
        let (name, path) = env_file(s)?;
        let t = tensor_file::read(&path, &sp)?;
        env.insert_tensor(&name, t);
    }
    for s in &opts.scalar {
        let (name, z) = scalar(s)?;
        env.insert_scalar(&name, z);
    }
    for s in &opts.group {
        let (name, g) = group(s, sp.group_kind())?;
        env.insert_group(&name, g);
    }
    Ok(env)
}
