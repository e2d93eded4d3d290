//! On-disk cache of automorphism groups keyed by a hash of the Cayley table.
//!
//! Layout of `<sha256 of table>.aut`, all integers little-endian:
//!
//! ```text
//! magic  b"AUTLCACH" (8 bytes)
//! key    sha256 of the table bytes (32 bytes)
//! n      u32, group order
//! count  u32, number of automorphisms
//! images count * n u16 values, sorted
//! digest sha256 of everything above (32 bytes)
//! ```
//!
//! Loaded entries are re-checked element by element and for closure before
//! use; anything that fails is discarded and recomputed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use autl_core::theorems::{AutomorphismSource, Backtracking};
use autl_core::{AutConfig, Automorphism, AutomorphismSet, Error, Group, Result};
use sha2::{Digest, Sha256};

const MAGIC: &[u8; 8] = b"AUTLCACH";
const HEADER: usize = 8 + 32 + 4 + 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
    Corrupt,
}

#[derive(Debug, Default)]
pub struct CacheStats {
    pub hits: AtomicUsize,
    pub misses: AtomicUsize,
    pub corrupt: AtomicUsize,
}

impl CacheStats {
    fn record(&self, s: CacheStatus) {
        let c = match s {
            CacheStatus::Hit => &self.hits,
            CacheStatus::Miss => &self.misses,
            CacheStatus::Corrupt => &self.corrupt,
        };
        c.fetch_add(1, Ordering::Relaxed);
    }

    pub fn snapshot(&self) -> (usize, usize, usize) {
        (
            self.hits.load(Ordering::Relaxed),
            self.misses.load(Ordering::Relaxed),
            self.corrupt.load(Ordering::Relaxed),
        )
    }
}

/// Canonical key: hex sha256 of the normalised table.
pub fn group_key(g: &Group) -> String {
    hex::encode(Sha256::digest(g.table_bytes()))
}

pub struct AutCache {
    dir: PathBuf,
    pub stats: CacheStats,
}

impl AutCache {
    pub fn new(dir: impl Into<PathBuf>) -> std::io::Result<AutCache> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(AutCache { dir, stats: CacheStats::default() })
    }

    pub fn path_for(&self, g: &Group) -> PathBuf {
        self.dir.join(format!("{}.aut", group_key(g)))
    }

    /// Reads the cached set for `g`, reporting how the lookup went.
    pub fn load<'g>(&self, g: &'g Group) -> (CacheStatus, Option<AutomorphismSet<'g>>) {
        let path = self.path_for(g);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(_) => return (CacheStatus::Miss, None),
        };
        match decode(g, &bytes) {
            Ok(set) => (CacheStatus::Hit, Some(set)),
            Err(reason) => {
                log::warn!("discarding corrupt cache entry {}: {reason}", path.display());
                let _ = fs::remove_file(&path);
                (CacheStatus::Corrupt, None)
            }
        }
    }

    pub fn store(&self, set: &AutomorphismSet<'_>) -> std::io::Result<()> {
        let path = self.path_for(set.parent());
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&encode(set))?;
        f.sync_all()?;
        fs::rename(&tmp, &path)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }
}

impl AutomorphismSource for AutCache {
    fn automorphisms<'g>(&self, g: &'g Group, config: &AutConfig) -> Result<AutomorphismSet<'g>> {
        let (status, cached) = self.load(g);
        self.stats.record(status);
        if let Some(set) = cached {
            if set.order() > config.cap {
                return Err(Error::EnumerationCapExceeded { cap: config.cap, attained: config.cap });
            }
            return Ok(set);
        }
        let set = Backtracking.automorphisms(g, config)?;
        if let Err(e) = self.store(&set) {
            log::warn!("could not write cache entry for {}: {e}", g.label());
        }
        Ok(set)
    }
}

fn encode(set: &AutomorphismSet<'_>) -> Vec<u8> {
    let g = set.parent();
    let n = g.order();
    let mut out = Vec::with_capacity(HEADER + set.order() * n * 2 + 32);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&Sha256::digest(g.table_bytes()));
    out.extend_from_slice(&(n as u32).to_le_bytes());
    out.extend_from_slice(&(set.order() as u32).to_le_bytes());
    for a in set.elements() {
        for &x in a.images() {
            out.extend_from_slice(&x.to_le_bytes());
        }
    }
    let digest = Sha256::digest(&out);
    out.extend_from_slice(&digest);
    out
}

fn decode<'g>(g: &'g Group, bytes: &[u8]) -> std::result::Result<AutomorphismSet<'g>, String> {
    if bytes.len() < HEADER + 32 {
        return Err("truncated header".into());
    }
    let (body, digest) = bytes.split_at(bytes.len() - 32);
    if Sha256::digest(body).as_slice() != digest {
        return Err("checksum mismatch".into());
    }
    if &body[..8] != MAGIC {
        return Err("bad magic".into());
    }
    if body[8..40] != Sha256::digest(g.table_bytes())[..] {
        return Err("entry belongs to a different table".into());
    }
    let word = |at: usize| u32::from_le_bytes(body[at..at + 4].try_into().expect("4 bytes")) as usize;
    let (n, count) = (word(40), word(44));
    if n != g.order() {
        return Err(format!("order {n} does not match group order {}", g.order()));
    }
    if body.len() != HEADER + count * n * 2 {
        return Err("length does not match the recorded count".into());
    }
    let images: Vec<usize> = body[HEADER..]
        .chunks_exact(2)
        .map(|c| u16::from_le_bytes([c[0], c[1]]) as usize)
        .collect();
    let elements = images
        .chunks_exact(n.max(1))
        .take(count)
        .map(|img| Automorphism::from_images(g, img))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    AutomorphismSet::from_elements(g, elements).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use autl_core::constructions::generalized_quaternion;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = AutCache::new(dir.path()).unwrap();
        let g = generalized_quaternion(8).unwrap();
        let cfg = AutConfig::default();
        let first = cache.automorphisms(&g, &cfg).unwrap();
        let second = cache.automorphisms(&g, &cfg).unwrap();
        assert_eq!(first, second);
        assert_eq!(cache.stats.snapshot(), (1, 1, 0));
    }

    #[test]
    fn flipped_byte_is_detected() {
        let dir = tempfile::tempdir().unwrap();
        let cache = AutCache::new(dir.path()).unwrap();
        let g = generalized_quaternion(8).unwrap();
        let cfg = AutConfig::default();
        let fresh = cache.automorphisms(&g, &cfg).unwrap();
        let path = cache.path_for(&g);
        let mut bytes = fs::read(&path).unwrap();
        bytes[HEADER + 3] ^= 1;
        fs::write(&path, bytes).unwrap();
        assert_eq!(cache.load(&g).0, CacheStatus::Corrupt);
        assert_eq!(cache.automorphisms(&g, &cfg).unwrap(), fresh);
    }

    #[test]
    fn consistent_but_wrong_entry_is_rejected() {
        let g = generalized_quaternion(8).unwrap();
        let aut = Backtracking.automorphisms(&g, &AutConfig::default()).unwrap();
        let mut bytes = encode(&aut);
        // Swap two images of the first non-identity element and re-seal.
        let at = HEADER + 2 * 8 * 2;
        bytes.swap(at, at + 2);
        let body_len = bytes.len() - 32;
        let digest = Sha256::digest(&bytes[..body_len]);
        bytes[body_len..].copy_from_slice(&digest);
        assert!(decode(&g, &bytes).is_err());
    }
}
