//! On-disk result cache keyed by a SHA-256 of the command and its inputs.
//! The directory is `$QPCOX_CACHE_DIR`, else `qpcox-cache` under the system
//! temporary directory.

use std::fs;
use std::path::PathBuf;

use sha2::{Digest, Sha256};

use crate::{Common, Outcome, Suite};

fn dir() -> PathBuf {
    std::env::var_os("QPCOX_CACHE_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("qpcox-cache"))
}

pub fn key(command: &str, c: &Common, suite: Option<Suite>) -> anyhow::Result<String> {
    // A type given as a file path is keyed by its contents.
    let ty = match fs::read_to_string(&c.ty) {
        Ok(text) => text,
        Err(_) => c.ty.clone(),
    };
    let material = serde_json::json!({
        "version": env!("CARGO_PKG_VERSION"),
        "schema": qpcox_core::SCHEMA_VERSION,
        "command": command,
        "suite": suite,
        "type": ty,
        "theta": c.theta,
        "seed": c.seed,
        "class": c.class,
        "coset": c.coset,
        "regular": c.regular,
        "kind": c.kind,
        "cutoff": c.cutoff,
        "format": c.format,
    });
    Ok(hex::encode(Sha256::digest(serde_json::to_vec(&material)?)))
}

pub fn load(key: &str) -> Option<Outcome> {
    let text = fs::read_to_string(dir().join(format!("{key}.json"))).ok()?;
    serde_json::from_str(&text).ok()
}

/// Best effort: a cache that cannot be written is silently skipped.
pub fn store(key: &str, outcome: &Outcome) {
    let d = dir();
    if fs::create_dir_all(&d).is_err() {
        return;
    }
    if let Ok(text) = serde_json::to_string(outcome) {
        let tmp = d.join(format!("{key}.tmp{}", std::process::id()));
        if fs::write(&tmp, text).is_ok() {
            let _ = fs::rename(&tmp, d.join(format!("{key}.json")));
        }
    }
}
