//! `key = value` configuration files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use modrep_core::{Caps, Error, Result};

use crate::output::Format;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub dim_cap: Option<usize>,
    pub word_cap: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub format: Option<Format>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Blank lines and lines starting with `#` are skipped; unknown keys are errors.
    pub fn parse(text: &str) -> Result<Self> {
        let mut seen = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("config line {}: expected key = value", i + 1)))?;
            seen.insert(k.trim().to_string(), (i + 1, v.trim().to_string()));
        }
        let mut cfg = FileConfig::default();
        for (key, (line, value)) in seen {
            let bad = |what: &str| Error::Parse(format!("config line {line}: {key} must be {what}, got {value:?}"));
            match key.as_str() {
                "seed" => cfg.seed = Some(value.parse().map_err(|_| bad("an integer"))?),
                "dim_cap" => cfg.dim_cap = Some(value.parse().map_err(|_| bad("an integer"))?),
                "word_cap" => cfg.word_cap = Some(value.parse().map_err(|_| bad("an integer"))?),
                "cache_dir" => cfg.cache_dir = Some(PathBuf::from(value)),
                "format" => cfg.format = Some(value.parse().map_err(|_| bad("json, csv or text"))?),
                _ => return Err(Error::Parse(format!("config line {line}: unknown key {key:?}"))),
            }
        }
        Ok(cfg)
    }
}

/// Settings after combining flags, the environment and the config file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Settings {
    pub caps: Caps,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
}

#[derive(Clone, Debug, Default)]
pub struct FlagOverrides {
    pub seed: Option<u64>,
    pub dim_cap: Option<usize>,
    pub word_cap: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub format: Option<Format>,
}

/// Flags win over `CACHE_DIR`, which wins over the file.
pub fn resolve(flags: &FlagOverrides, env_cache: Option<PathBuf>, file: &FileConfig) -> Result<Settings> {
    let d = Caps::default();
    let caps = Caps {
        dim_cap: flags.dim_cap.or(file.dim_cap).unwrap_or(d.dim_cap),
        word_cap: flags.word_cap.or(file.word_cap).unwrap_or(d.word_cap),
        seed: flags.seed.or(file.seed).unwrap_or(d.seed),
    };
    if caps.dim_cap == 0 || caps.word_cap == 0 {
        return Err(Error::Precondition("caps must be positive".into()));
    }
    Ok(Settings {
        caps,
        cache_dir: flags.cache_dir.clone().or(env_cache).or_else(|| file.cache_dir.clone()),
        format: flags.format.or(file.format).unwrap_or(Format::Text),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_rejects() {
        let cfg = FileConfig::parse("# caps\nseed = 7\ndim_cap=100\nformat = json\ncache_dir = /tmp/x\n").unwrap();
        assert_eq!(cfg.seed, Some(7));
        assert_eq!(cfg.dim_cap, Some(100));
        assert_eq!(cfg.format, Some(Format::Json));
        assert!(FileConfig::parse("colour = red").is_err());
        assert!(FileConfig::parse("seed = x").is_err());
        assert!(FileConfig::parse("seed").is_err());
    }

    #[test]
    fn precedence() {
        let file = FileConfig { seed: Some(1), dim_cap: Some(10), cache_dir: Some("/file".into()), ..Default::default() };
        let flags = FlagOverrides { seed: Some(2), ..Default::default() };
        let s = resolve(&flags, Some("/env".into()), &file).unwrap();
        assert_eq!(s.caps.seed, 2);
        assert_eq!(s.caps.dim_cap, 10);
        assert_eq!(s.caps.word_cap, Caps::default().word_cap);
        assert_eq!(s.cache_dir, Some(PathBuf::from("/env")));
        assert_eq!(s.format, Format::Text);
        let s = resolve(&FlagOverrides::default(), None, &file).unwrap();
        assert_eq!(s.cache_dir, Some(PathBuf::from("/file")));
        let zero = FlagOverrides { word_cap: Some(0), ..Default::default() };
        assert!(resolve(&zero, None, &file).is_err());
    }
}
