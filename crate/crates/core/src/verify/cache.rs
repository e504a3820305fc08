use std::io::Write;
use std::path::{Path, PathBuf};

use log::{debug, warn};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;
use crate::sym::{Basis, Partition, SymExpansion};

/// What was expanded, for which partition, block sizes and `λ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CacheKey {
    pub kind: String,
    pub kappa: Partition,
    pub n: Vec<usize>,
    pub lam: usize,
}

impl CacheKey {
    pub fn new(kind: &str, kappa: &Partition, n: &[usize], lam: usize) -> Self {
        CacheKey {
            kind: kind.to_string(),
            kappa: kappa.clone(),
            n: n.to_vec(),
            lam,
        }
    }

    fn file_name(&self) -> String {
        let json = serde_json::to_string(self).expect("keys serialize");
        let digest = Sha256::digest(json.as_bytes());
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        format!("{hex}.json")
    }
}

#[derive(Serialize, Deserialize)]
struct Entry {
    key: CacheKey,
    value: Vec<(Partition, String)>,
}

/// One JSON file per key under a directory. Writes go to a temporary file
/// that is renamed into place; unreadable entries count as missing.
#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        std::fs::create_dir_all(&dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_of(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(key.file_name())
    }

    pub fn load(&self, key: &CacheKey) -> Option<Vec<(Partition, ExactScalar)>> {
        let path = self.path_of(key);
        let text = std::fs::read_to_string(&path).ok()?;
        let parsed = serde_json::from_str::<Entry>(&text)
            .map_err(|e| e.to_string())
            .and_then(|entry| {
                if entry.key != *key {
                    return Err("key does not match".to_string());
                }
                entry
                    .value
                    .into_iter()
                    .map(|(p, c)| c.parse::<ExactScalar>().map(|c| (p, c)).map_err(|e| e.to_string()))
                    .collect::<std::result::Result<Vec<_>, _>>()
            });
        match parsed {
            Ok(v) => {
                debug!("cache hit {}", path.display());
                Some(v)
            }
            Err(e) => {
                warn!("ignoring corrupt cache entry {}: {e}", path.display());
                None
            }
        }
    }

    pub fn store(&self, key: &CacheKey, value: &[(Partition, ExactScalar)]) -> Result<()> {
        let entry = Entry {
            key: key.clone(),
            value: value.iter().map(|(p, c)| (p.clone(), c.to_string())).collect(),
        };
        let io = |e: std::io::Error| Error::Cache(e.to_string());
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io)?;
        tmp.write_all(serde_json::to_string(&entry).expect("entries serialize").as_bytes())
            .map_err(io)?;
        tmp.persist(self.path_of(key)).map_err(|e| io(e.error))?;
        Ok(())
    }

    pub fn load_expansion(&self, key: &CacheKey, basis: Basis, n: usize) -> Option<SymExpansion> {
        SymExpansion::from_pairs(basis, n, self.load(key)?).ok()
    }

    pub fn store_expansion(&self, key: &CacheKey, f: &SymExpansion) -> Result<()> {
        let pairs: Vec<(Partition, ExactScalar)> = f.iter().map(|(p, c)| (p.clone(), c.clone())).collect();
        self.store(key, &pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::macdonald::macdonald_poly;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let kappa: Partition = "2".parse().unwrap();
        let key = CacheKey::new("macdonald", &kappa, &[2], 0);
        assert!(cache.load(&key).is_none());
        let p = macdonald_poly(&kappa, 2).unwrap().expansion;
        cache.store_expansion(&key, &p).unwrap();
        assert_eq!(cache.load_expansion(&key, Basis::Monomial, 2).unwrap(), p);
        std::fs::write(cache.path_of(&key), "{not json").unwrap();
        assert!(cache.load(&key).is_none());
    }

    #[test]
    fn names_are_stable() {
        let k = CacheKey::new("gram", &"2,1".parse().unwrap(), &[3, 2], 1);
        assert_eq!(k.file_name(), k.clone().file_name());
        assert_ne!(
            k.file_name(),
            CacheKey::new("gram", &"2,1".parse().unwrap(), &[3, 2], 2).file_name()
        );
    }
}
