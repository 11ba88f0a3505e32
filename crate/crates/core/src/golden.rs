//! Golden-value store: a flat text file of records `key... value`, one
//! per line, where the key is an operation name plus its parameters. The
//! verify suite refuses to overwrite a stored value unless explicitly
//! told to.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct GoldenStore {
    path: PathBuf,
    entries: BTreeMap<String, String>,
}

impl GoldenStore {
    /// Load a store; a missing file is an empty store.
    pub fn load(path: &Path) -> Result<Self> {
        let mut entries = BTreeMap::new();
        match std::fs::read_to_string(path) {
            Ok(text) => {
                for line in text.lines() {
                    let line = line.trim();
                    if line.is_empty() || line.starts_with('#') {
                        continue;
                    }
                    let Some((key, value)) = line.rsplit_once(' ') else {
                        return Err(Error::Parse(format!("bad golden record `{line}`")));
                    };
                    entries.insert(key.to_string(), value.to_string());
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(e.into()),
        }
        Ok(Self {
            path: path.to_path_buf(),
            entries,
        })
    }

    /// The store shipped with the crate sources.
    pub fn bundled() -> Result<Self> {
        let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("goldens.txt");
        Self::load(&path)
    }

    /// The bundled store, unless `SCCOUNT_GOLDEN_STORE` points elsewhere.
    pub fn default_store() -> Result<Self> {
        match std::env::var_os("SCCOUNT_GOLDEN_STORE") {
            Some(p) => Self::load(Path::new(&p)),
            None => Self::bundled(),
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// Compare `computed` against the stored value. An absent key is
    /// recorded; a differing value is an error unless `overwrite`.
    pub fn check(&mut self, key: &str, computed: &str, overwrite: bool) -> Result<()> {
        match self.entries.get(key) {
            None => {
                self.entries.insert(key.to_string(), computed.to_string());
                Ok(())
            }
            Some(stored) if stored == computed => Ok(()),
            Some(stored) => {
                if overwrite {
                    let msg = format!("overwriting `{key}`: {stored} -> {computed}");
                    self.entries.insert(key.to_string(), computed.to_string());
                    eprintln!("{msg}");
                    Ok(())
                } else {
                    Err(Error::GoldenMismatch {
                        key: key.to_string(),
                        stored: stored.clone(),
                        computed: computed.to_string(),
                    })
                }
            }
        }
    }

    pub fn save(&self) -> Result<()> {
        let mut text = String::new();
        for (k, v) in &self.entries {
            text.push_str(&format!("{k} {v}\n"));
        }
        std::fs::write(&self.path, text)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_refusal() {
        let dir = std::env::temp_dir().join(format!("golden-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("g.txt");
        let mut store = GoldenStore::load(&path).unwrap();
        store.check("op n=3 m=4", "1/3", false).unwrap();
        store.save().unwrap();
        let mut again = GoldenStore::load(&path).unwrap();
        assert_eq!(again.get("op n=3 m=4"), Some("1/3"));
        assert!(again.check("op n=3 m=4", "2/9", false).is_err());
        again.check("op n=3 m=4", "2/9", true).unwrap();
        assert_eq!(again.get("op n=3 m=4"), Some("2/9"));
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn bundled_store_has_the_4_6_oracle() {
        let store = GoldenStore::bundled().unwrap();
        assert_eq!(store.get("mg_oracle_p n=4 m=6"), Some("517/1690"));
    }
}
