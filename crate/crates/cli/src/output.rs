use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use offload_core::SimConfig;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::{exit, CmdResult, Failure};

/// Loads a config document, or the defaults when no path is given.
pub fn load_config(path: Option<&Path>) -> CmdResult<SimConfig> {
    match path {
        None => Ok(SimConfig::default()),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| Failure::new(exit::IO, format!("{}: {e}", p.display())))?;
            SimConfig::from_json(&text).map_err(|e| {
                let mut f = Failure::from(e);
                f.message = format!("{}: {}", p.display(), f.message);
                f
            })
        }
    }
}

/// SHA-256 of the canonical serialization, hex encoded.
pub fn config_hash(config: &SimConfig) -> String {
    hex::encode(Sha256::digest(config.canonical_json().as_bytes()))
}

/// Writes files atomically into one directory and remembers their names.
pub struct OutDir {
    dir: PathBuf,
    artifacts: Vec<String>,
}

impl OutDir {
    pub fn create(dir: &Path) -> CmdResult<Self> {
        fs::create_dir_all(dir)
            .map_err(|e| Failure::new(exit::IO, format!("{}: {e}", dir.display())))?;
        Ok(Self {
            dir: dir.to_path_buf(),
            artifacts: Vec::new(),
        })
    }

    pub fn write(&mut self, name: &str, contents: &str) -> CmdResult {
        let path = self.dir.join(name);
        let tmp = self.dir.join(format!(".{name}.tmp"));
        fs::write(&tmp, contents)
            .and_then(|_| fs::rename(&tmp, &path))
            .map_err(|e| Failure::new(exit::IO, format!("{}: {e}", path.display())))?;
        self.artifacts.push(name.to_string());
        Ok(())
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> CmdResult {
        let mut text = serde_json::to_string_pretty(value).expect("serializable output");
        text.push('\n');
        self.write(name, &text)
    }

    /// Writes `manifest.json` last; it is the only file with wall-clock content.
    pub fn finish(mut self, mut manifest: RunManifest, started: Instant) -> CmdResult {
        manifest.output_dir = self.dir.display().to_string();
        manifest.artifacts = self.artifacts.clone();
        manifest.wall_clock_s = started.elapsed().as_secs_f64();
        self.write_json("manifest.json", &manifest)
    }
}

#[derive(Debug, Default, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config_path: Option<String>,
    pub config_hash: Option<String>,
    pub seeds: Vec<u64>,
    pub output_dir: String,
    pub artifacts: Vec<String>,
    pub wall_clock_s: f64,
}

impl RunManifest {
    pub fn new(
        command: &str,
        config_path: Option<&Path>,
        config: Option<&SimConfig>,
        seeds: Vec<u64>,
    ) -> Self {
        Self {
            command: command.to_string(),
            config_path: config_path.map(|p| p.display().to_string()),
            config_hash: config.map(config_hash),
            seeds,
            ..Default::default()
        }
    }
}
