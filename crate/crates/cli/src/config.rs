//! TOML configuration. Every key mirrors a command-line flag; flags win.
//!
//! ```toml
//! format = "json"
//! cache_dir = "/tmp/springer"
//! no_cache = false
//! timings = false
//! order = 3
//! ```

use std::path::{Path, PathBuf};

use serde::Deserialize;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("reading {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("parsing {path}: {source}")]
    Parse { path: PathBuf, source: toml::de::Error },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub format: Option<Format>,
    pub cache_dir: Option<PathBuf>,
    pub no_cache: Option<bool>,
    pub timings: Option<bool>,
    pub order: Option<i64>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.into(), source })?;
        toml::from_str(&text).map_err(|source| ConfigError::Parse { path: path.into(), source })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_keys() {
        let c: Config = toml::from_str("format = \"json\"\nno_cache = true\norder = 2\n").unwrap();
        assert_eq!(c.format, Some(Format::Json));
        assert_eq!(c.no_cache, Some(true));
        assert_eq!(c.order, Some(2));
        assert!(toml::from_str::<Config>("colour = 1").is_err());
    }
}
