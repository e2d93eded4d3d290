//! Group files: JSON documents describing a group by permutation generators
//! or by a full Cayley table.
//!
//! A file holds either one JSON document or one document per line (JSONL).
//! Every group is rebuilt and re-validated on ingest.

use std::fs;
use std::path::{Path, PathBuf};

use autl_core::group::{group_from_permutations, DEFAULT_CLOSURE_CAP};
use autl_core::Group;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Representation {
    Permutation { degree: usize, generators: Vec<Vec<usize>> },
    Cayley { order: usize, table: Vec<Vec<usize>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    #[serde(flatten)]
    pub representation: Representation,
}

#[derive(Debug, Error)]
pub enum GroupFileError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{origin}: malformed group file: {message}")]
    Parse { origin: String, message: String },

    #[error("{origin}: {source}")]
    Invalid { origin: String, source: autl_core::Error },
}

/// A group file entry together with where it came from.
#[derive(Debug)]
pub struct Entry {
    pub origin: String,
    pub group: Result<Group, GroupFileError>,
}

impl GroupFile {
    pub fn to_group(&self) -> autl_core::Result<Group> {
        match &self.representation {
            Representation::Permutation { degree, generators } => {
                if *degree == 0 {
                    return Err(autl_core::Error::InvalidPermutation("degree must be positive".into()));
                }
                group_from_permutations(&self.name, *degree, generators, DEFAULT_CLOSURE_CAP)
            }
            Representation::Cayley { order, table } => cayley_group(&self.name, *order, table),
        }
    }
}

/// Moves the identity to index 0 by swapping it with whatever sits there,
/// then builds and validates the group.
fn cayley_group(name: &str, order: usize, table: &[Vec<usize>]) -> autl_core::Result<Group> {
    use autl_core::Error::InvalidTable;

    if table.len() != order {
        return Err(InvalidTable(format!("table has {} rows, expected {order}", table.len())));
    }
    if let Some((i, r)) = table.iter().enumerate().find(|(_, r)| r.len() != order) {
        return Err(InvalidTable(format!("row {i} has {} entries, expected {order}", r.len())));
    }
    if let Some((i, j)) = (0..order)
        .flat_map(|i| (0..order).map(move |j| (i, j)))
        .find(|&(i, j)| table[i][j] >= order)
    {
        return Err(InvalidTable(format!("entry ({i}, {j}) = {} is out of range", table[i][j])));
    }
    let identity = (0..order)
        .find(|&e| (0..order).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or_else(|| InvalidTable("identity: no two-sided identity element".into()))?;
    let swap = |x: usize| match x {
        0 => identity,
        x if x == identity => 0,
        x => x,
    };
    let mut flat = Vec::with_capacity(order * order);
    for a in 0..order {
        for b in 0..order {
            flat.push(swap(table[swap(a)][swap(b)]));
        }
    }
    Group::from_table(name, order, flat)
}

/// Parses file contents as a single document, falling back to JSONL.
pub fn parse_str(text: &str, origin: &str) -> Vec<Result<GroupFile, GroupFileError>> {
    match serde_json::from_str::<GroupFile>(text) {
        Ok(doc) => return vec![Ok(doc)],
        Err(e) if text.trim().lines().filter(|l| !l.trim().is_empty()).count() <= 1 => {
            return vec![Err(GroupFileError::Parse { origin: origin.into(), message: e.to_string() })];
        }
        Err(_) => {}
    }
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str::<GroupFile>(l).map_err(|e| GroupFileError::Parse {
                origin: format!("{origin}:{}", i + 1),
                message: e.to_string(),
            })
        })
        .collect()
}

pub fn load_file(path: &Path) -> Result<Vec<Entry>, GroupFileError> {
    let text = fs::read_to_string(path).map_err(|source| GroupFileError::Io { path: path.into(), source })?;
    let origin = path.display().to_string();
    let docs = parse_str(&text, &origin);
    let many = docs.len() > 1;
    Ok(docs
        .into_iter()
        .enumerate()
        .map(|(i, doc)| {
            let origin = if many { format!("{origin}#{}", i + 1) } else { origin.clone() };
            let group = doc.and_then(|d| {
                d.to_group().map_err(|source| GroupFileError::Invalid { origin: origin.clone(), source })
            });
            Entry { origin, group }
        })
        .collect())
}

/// Every `.json` and `.jsonl` file directly inside `dir`, in file-name order.
pub fn load_dir(dir: &Path) -> Result<Vec<Entry>, GroupFileError> {
    let io = |source| GroupFileError::Io { path: dir.into(), source };
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io)?
        .collect::<Result<Vec<_>, _>>()
        .map_err(io)?
        .into_iter()
        .map(|e| e.path())
        .filter(|p| p.is_file() && matches!(p.extension().and_then(|e| e.to_str()), Some("json" | "jsonl")))
        .collect();
    paths.sort();
    let mut out = Vec::new();
    for p in paths {
        out.extend(load_file(&p)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_moved_to_zero() {
        // C3 with the identity stored at index 2.
        let doc = r#"{"name":"C3","kind":"cayley","order":3,"table":[[1,2,0],[2,0,1],[0,1,2]]}"#;
        let g = parse_str(doc, "t").remove(0).unwrap().to_group().unwrap();
        assert_eq!(g.order(), 3);
        assert!(g.is_cyclic());
    }

    #[test]
    fn permutation_documents() {
        let doc = r#"{"name":"S3","kind":"permutation","degree":3,"generators":[[1,0,2],[1,2,0]]}"#;
        let g = parse_str(doc, "t").remove(0).unwrap().to_group().unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
    }

    #[test]
    fn jsonl_lines_are_independent() {
        let text = "{\"name\":\"C2\",\"kind\":\"cayley\",\"order\":2,\"table\":[[0,1],[1,0]]}\n{oops}\n";
        let docs = parse_str(text, "t");
        assert_eq!(docs.len(), 2);
        assert!(docs[0].is_ok());
        assert!(matches!(&docs[1], Err(GroupFileError::Parse { origin, .. }) if origin == "t:2"));
    }

    #[test]
    fn missing_identity_is_reported() {
        let doc = r#"{"name":"bad","kind":"cayley","order":2,"table":[[1,0],[0,0]]}"#;
        let err = parse_str(doc, "t").remove(0).unwrap().to_group().unwrap_err();
        assert!(err.to_string().contains("identity"));
    }
}
