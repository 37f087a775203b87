//! CSV emission with a reproducibility manifest per output file.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use sha2::{Digest, Sha256};

/// Fixed float formatting: 17 significant digits, so re-runs are
/// byte-identical and values round-trip exactly.
pub fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Serialize)]
struct ManifestOutput {
    path: String,
    sha256: String,
}

/// Provenance record written next to every output file.
#[derive(Serialize)]
pub struct RunManifest {
    command: String,
    seed: Option<u64>,
    version: String,
    timestamp_unix: u64,
    outputs: Vec<ManifestOutput>,
}

impl RunManifest {
    pub fn new(seed: Option<u64>) -> Self {
        Self {
            command: std::env::args().collect::<Vec<_>>().join(" "),
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            outputs: Vec::new(),
        }
    }

    fn record(&mut self, path: &Path, bytes: &[u8]) {
        let digest = Sha256::digest(bytes);
        self.outputs.push(ManifestOutput {
            path: path.display().to_string(),
            sha256: format!("{digest:x}"),
        });
    }

    /// Writes the manifest as `<first-output>.manifest.json`.
    pub fn write(&self) -> std::io::Result<()> {
        if let Some(first) = self.outputs.first() {
            let path = PathBuf::from(format!("{}.manifest.json", first.path));
            std::fs::write(path, serde_json::to_string_pretty(self).unwrap())?;
        }
        Ok(())
    }
}

/// Writes a CSV with a header row; records it in the manifest.
pub fn write_csv(
    manifest: &mut RunManifest,
    path: &Path,
    header: &[&str],
    rows: &[Vec<String>],
) -> std::io::Result<()> {
    let mut buf = Vec::new();
    writeln!(buf, "{}", header.join(","))?;
    for row in rows {
        writeln!(buf, "{}", row.join(","))?;
    }
    std::fs::write(path, &buf)?;
    manifest.record(path, &buf);
    Ok(())
}
