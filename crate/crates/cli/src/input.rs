//! Loading algebras and bimodules from files or `builtin:` specs.

use anyhow::{Context, Result};
use enh::algdata::{
    algebra_to_document, bimodule_to_document, builtin_from_spec, load_and_validate_algebra,
    load_and_validate_bimodule, AlgebraPresentation, BimodulePresentation, Presentation,
};
use enh::coeff::CoefficientRing;
use enh::Error;
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::path::Path;

/// Where an input came from and the digest of its content.
#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub role: String,
    pub source: String,
    /// sha256 of the file bytes, or of the canonical document of a builtin.
    pub sha256: String,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(Path::new(path)).with_context(|| format!("cannot read `{path}`"))
}

pub fn load_algebra(source: &str, ring: CoefficientRing) -> Result<(AlgebraPresentation, InputDigest)> {
    let (alg, sha256) = match source.strip_prefix("builtin:") {
        Some(spec) => {
            let Presentation::Algebra(a) = builtin_from_spec(spec, None)? else {
                return Err(Error::Invalid(format!("`{spec}` is not an algebra")).into());
            };
            let a = a.reduced(ring)?;
            a.validate(ring)?;
            let digest = sha256_hex(algebra_to_document(&a).as_bytes());
            (a, digest)
        }
        None => {
            let text = read(source)?;
            (load_and_validate_algebra(&text, ring)?, sha256_hex(text.as_bytes()))
        }
    };
    Ok((alg, InputDigest { role: "algebra".into(), source: source.into(), sha256 }))
}

pub fn load_module(
    source: &str,
    alg: &AlgebraPresentation,
    ring: CoefficientRing,
) -> Result<(BimodulePresentation, InputDigest)> {
    let (m, sha256) = match source.strip_prefix("builtin:") {
        Some(spec) => {
            let Presentation::Bimodule(m) = builtin_from_spec(spec, Some(alg))? else {
                return Err(Error::Invalid(format!("`{spec}` is not a bimodule")).into());
            };
            let m = m.reduced(ring)?;
            m.validate(alg, ring)?;
            let digest = sha256_hex(bimodule_to_document(&m, alg).as_bytes());
            (m, digest)
        }
        None => {
            let text = read(source)?;
            (load_and_validate_bimodule(&text, alg, ring)?, sha256_hex(text.as_bytes()))
        }
    };
    Ok((m, InputDigest { role: "module".into(), source: source.into(), sha256 }))
}
