//! Rule loading and rule identity for records and resume.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use ca_core::rule::{parse_rule, CellularAutomaton};

/// A loaded rule plus the identity string records are keyed by:
/// `eca:N` for elementary codes, `file:<stem>:<fnv64>` for rule files.
pub struct LoadedRule {
    pub ca: CellularAutomaton,
    pub id: String,
}

pub fn load_eca(code: u16) -> Result<LoadedRule> {
    if code > 255 {
        bail!("elementary code {code} outside 0..=255");
    }
    Ok(LoadedRule {
        ca: CellularAutomaton::elementary(code as u8),
        id: format!("eca:{code}"),
    })
}

pub fn load_file(path: &Path) -> Result<LoadedRule> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading rule file {}", path.display()))?;
    let ca = parse_rule(&text).with_context(|| format!("parsing {}", path.display()))?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "rule".into());
    Ok(LoadedRule {
        ca,
        id: format!("file:{stem}:{:016x}", fnv64(text.as_bytes())),
    })
}

/// FNV-1a, 64-bit; content hashing for rule identity only.
pub fn fnv64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}
