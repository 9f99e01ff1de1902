//! Edge-list text ingestion and the binary CSR cache format.
//!
//! Binary layout, all little-endian:
//! `b"CPGR"`, version `u32`, n `u64`, m `u64`, `n + 1` offsets as `u64`,
//! `2m` neighbor ids as `u32`.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

const CSR_MAGIC: &[u8; 4] = b"CPGR";
const CSR_VERSION: u32 = 1;

#[derive(Debug, Clone)]
pub struct LoadOptions {
    /// Accept lines with more than two tokens and use the first two
    /// (SNAP temporal and weighted dumps carry extra columns).
    pub allow_extra_columns: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            allow_extra_columns: true,
        }
    }
}

/// Parses a whitespace-separated edge list.
///
/// Lines starting with `#` and blank lines are skipped. Node labels are
/// compacted to `0..n` in first-seen order; labels that only occur on
/// self-loops are dropped along with the loops.
pub fn load_edge_list<R: BufRead>(reader: R, options: &LoadOptions) -> Result<Graph> {
    let mut ids: HashMap<u64, u32> = HashMap::new();
    let mut original_ids: Vec<u64> = Vec::new();
    let mut edges: Vec<(u32, u32)> = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let mut next_id = |what: &str| -> Result<u64> {
            let tok = tokens.next().ok_or_else(|| Error::Parse {
                line: lineno,
                message: format!("missing {what} node"),
            })?;
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("token {tok:?} is not a non-negative integer"),
            })
        };
        let a = next_id("source")?;
        let b = next_id("target")?;
        if !options.allow_extra_columns && tokens.next().is_some() {
            return Err(Error::Parse {
                line: lineno,
                message: "more than two columns".into(),
            });
        }
        if a == b {
            continue;
        }
        let mut intern = |label: u64| -> Result<u32> {
            if let Some(&id) = ids.get(&label) {
                return Ok(id);
            }
            let id = u32::try_from(original_ids.len())
                .map_err(|_| Error::Structure("more than 2^32 distinct nodes".into()))?;
            ids.insert(label, id);
            original_ids.push(label);
            Ok(id)
        };
        let u = intern(a)?;
        let v = intern(b)?;
        edges.push((u, v));
    }

    if edges.is_empty() {
        return Err(Error::Structure("no edges remain after removing self-loops".into()));
    }
    Graph::build(original_ids.len(), edges, original_ids)
}

pub fn load_edge_list_path(path: impl AsRef<Path>, options: &LoadOptions) -> Result<Graph> {
    let file = File::open(path)?;
    load_edge_list(BufReader::new(file), options)
}

/// Loads either a binary CSR cache (detected by its magic bytes) or an edge list.
pub fn load_graph_path(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let mut file = BufReader::new(File::open(path)?);
    let head = file.fill_buf()?;
    if head.starts_with(CSR_MAGIC) {
        read_csr(file)
    } else {
        load_edge_list(file, &LoadOptions::default())
    }
}

impl Graph {
    /// Writes one `u v` line per undirected edge using compacted ids.
    ///
    /// Lines are ordered so that reading them back with first-seen id
    /// compaction reproduces the same ids; this holds for every graph that
    /// was itself produced by [`load_edge_list`].
    pub fn write_edge_list<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = BufWriter::new(writer);
        let n = self.n();
        let mut seen = vec![false; n];
        for v in 0..n as u32 {
            if seen[v as usize] {
                continue;
            }
            let adj = self.neighbors(v);
            // adjacency is sorted, so a smaller neighbor (if any) comes first
            let first = adj[0];
            if first < v {
                writeln!(w, "{first} {v}")?;
            } else {
                writeln!(w, "{v} {first}")?;
                seen[first as usize] = true;
            }
            seen[v as usize] = true;
        }
        for u in 0..n as u32 {
            for &v in self.neighbors(u) {
                if u < v {
                    writeln!(w, "{u} {v}")?;
                }
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_csr<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = BufWriter::new(writer);
        w.write_all(CSR_MAGIC)?;
        w.write_all(&CSR_VERSION.to_le_bytes())?;
        w.write_all(&(self.n() as u64).to_le_bytes())?;
        w.write_all(&(self.m() as u64).to_le_bytes())?;
        for &o in self.offsets() {
            w.write_all(&(o as u64).to_le_bytes())?;
        }
        for &v in self.neighbor_array() {
            w.write_all(&v.to_le_bytes())?;
        }
        w.flush()?;
        Ok(())
    }
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

pub fn read_csr<R: Read>(reader: R) -> Result<Graph> {
    let mut r = BufReader::new(reader);
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != CSR_MAGIC {
        return Err(Error::Format("missing CPGR magic".into()));
    }
    let version = read_u32(&mut r)?;
    if version != CSR_VERSION {
        return Err(Error::Format(format!("unsupported CSR version {version}")));
    }
    let n = read_u64(&mut r)? as usize;
    let m = read_u64(&mut r)? as usize;
    let mut offsets = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        offsets.push(read_u64(&mut r)? as usize);
    }
    let mut neighbors = Vec::with_capacity(2 * m);
    for _ in 0..2 * m {
        neighbors.push(read_u32(&mut r)?);
    }
    Graph::from_csr(offsets, neighbors)
}
