//! Instance files.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use maso_core::InstanceSpec;

pub fn to_json(spec: &InstanceSpec) -> Result<String> {
    let mut text = serde_json::to_string_pretty(spec)?;
    text.push('\n');
    Ok(text)
}

pub fn from_json(text: &str) -> Result<InstanceSpec> {
    Ok(serde_json::from_str(text)?)
}

pub fn read_instance(path: &Path) -> Result<InstanceSpec> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_instance(path: &Path, spec: &InstanceSpec) -> Result<()> {
    fs::write(path, to_json(spec)?).with_context(|| format!("writing {}", path.display()))
}

/// File stem used as the instance id in reports.
pub fn instance_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}
