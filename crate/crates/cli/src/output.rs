use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

/// Relative output paths are resolved against this directory when it is set.
pub const OUTPUT_DIR_VAR: &str = "CAPGRAPH_OUTPUT_DIR";

pub struct Output {
    base: Option<PathBuf>,
}

impl Output {
    pub fn from_env() -> Self {
        Output {
            base: std::env::var_os(OUTPUT_DIR_VAR).filter(|v| !v.is_empty()).map(PathBuf::from),
        }
    }

    pub fn resolve(&self, path: &Path) -> PathBuf {
        match &self.base {
            Some(base) if path.is_relative() => base.join(path),
            _ => path.to_path_buf(),
        }
    }

    /// Writes to the resolved path, creating parent directories, or to stdout.
    pub fn write(&self, path: Option<&Path>, text: &str) -> Result<()> {
        let Some(path) = path else {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            return Ok(stdout.flush()?);
        };
        let path = self.resolve(path);
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
        }
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
    }
}
