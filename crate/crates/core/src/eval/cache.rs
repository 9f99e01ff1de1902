//! On-disk ground-truth cache.
//!
//! File layout, little-endian: `b"CPGT"`, version `u32`, descriptor length
//! `u32` followed by the kernel descriptor in UTF-8, source `u64`, n `u64`,
//! then `n` values as `f64`. File names combine the graph content hash, the
//! kernel descriptor and the source, so different graphs never collide.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use super::{ground_truth, ground_truth_steps, GroundTruth};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kernels::Kernel;

const MAGIC: &[u8; 4] = b"CPGT";
const VERSION: u32 = 1;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "CHEBYPROP_CACHE_DIR";

/// `$CHEBYPROP_CACHE_DIR`, or `./truth-cache` when unset.
pub fn cache_dir_from_env() -> PathBuf {
    std::env::var_os(CACHE_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("truth-cache"))
}

pub fn cache_path(dir: &Path, g: &Graph, kernel: &Kernel, s: u32) -> PathBuf {
    let label: String = kernel
        .descriptor()
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '.' || c == '-' { c } else { '_' })
        .collect();
    dir.join(format!("{:016x}-{label}-{s}.cpgt", g.content_hash()))
}

pub fn write_truth(path: &Path, truth: &GroundTruth) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    // write to a sibling and rename so readers never see a partial file
    let tmp = path.with_extension("cpgt.tmp");
    {
        let mut w = BufWriter::new(File::create(&tmp)?);
        let descriptor = truth.kernel.descriptor();
        w.write_all(MAGIC)?;
        w.write_all(&VERSION.to_le_bytes())?;
        w.write_all(&(descriptor.len() as u32).to_le_bytes())?;
        w.write_all(descriptor.as_bytes())?;
        w.write_all(&(truth.source as u64).to_le_bytes())?;
        w.write_all(&(truth.vector.len() as u64).to_le_bytes())?;
        for v in &truth.vector {
            w.write_all(&v.to_le_bytes())?;
        }
        w.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Reads a cached truth and checks that it belongs to `(kernel, s)` on a
/// graph with `n` nodes.
pub fn read_truth(path: &Path, kernel: &Kernel, s: u32, n: usize) -> Result<GroundTruth> {
    let mut r = BufReader::new(File::open(path)?);
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Format("missing CPGT magic".into()));
    }
    let mut b4 = [0u8; 4];
    let mut b8 = [0u8; 8];
    r.read_exact(&mut b4)?;
    if u32::from_le_bytes(b4) != VERSION {
        return Err(Error::Format("unsupported truth cache version".into()));
    }
    r.read_exact(&mut b4)?;
    let mut descriptor = vec![0u8; u32::from_le_bytes(b4) as usize];
    r.read_exact(&mut descriptor)?;
    if descriptor != kernel.descriptor().as_bytes() {
        return Err(Error::Format("cached truth was computed for another kernel".into()));
    }
    r.read_exact(&mut b8)?;
    if u64::from_le_bytes(b8) != s as u64 {
        return Err(Error::Format("cached truth was computed for another source".into()));
    }
    r.read_exact(&mut b8)?;
    if u64::from_le_bytes(b8) != n as u64 {
        return Err(Error::Format("cached truth has the wrong length".into()));
    }
    let mut vector = Vec::with_capacity(n);
    for _ in 0..n {
        r.read_exact(&mut b8)?;
        vector.push(f64::from_le_bytes(b8));
    }
    if r.read(&mut b8)? != 0 {
        return Err(Error::Format("trailing bytes in truth cache".into()));
    }
    Ok(GroundTruth {
        vector,
        kernel: kernel.clone(),
        source: s,
        truncation: ground_truth_steps(kernel)?,
    })
}

/// Returns the cached truth if a valid one exists, otherwise computes and
/// stores it. The flag is `true` when the truth was (re)computed.
pub fn load_or_compute(dir: &Path, g: &Graph, kernel: &Kernel, s: u32) -> Result<(GroundTruth, bool)> {
    let path = cache_path(dir, g, kernel, s);
    if path.exists() {
        if let Ok(truth) = read_truth(&path, kernel, s, g.n()) {
            return Ok((truth, false));
        }
    }
    let truth = ground_truth(g, kernel, s)?;
    write_truth(&path, &truth)?;
    Ok((truth, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;

    #[test]
    fn round_trip_and_reuse() {
        let dir = tempfile::tempdir().unwrap();
        let g = generators::random_connected(40, 50, 2);
        let k = Kernel::hkpr(5.0).unwrap();
        let (a, fresh) = load_or_compute(dir.path(), &g, &k, 3).unwrap();
        assert!(fresh);
        let (b, fresh) = load_or_compute(dir.path(), &g, &k, 3).unwrap();
        assert!(!fresh);
        assert_eq!(a.vector, b.vector);
        let bytes = fs::read(cache_path(dir.path(), &g, &k, 3)).unwrap();
        let desc = k.descriptor();
        assert_eq!(bytes.len(), 4 + 4 + 4 + desc.len() + 8 + 8 + 8 * 40);
    }

    #[test]
    fn corrupt_file_is_regenerated() {
        let dir = tempfile::tempdir().unwrap();
        let g = generators::path(5);
        let k = Kernel::ppr(0.2).unwrap();
        let path = cache_path(dir.path(), &g, &k, 0);
        load_or_compute(dir.path(), &g, &k, 0).unwrap();
        let mut bytes = fs::read(&path).unwrap();
        bytes[0] = b'X';
        fs::write(&path, &bytes).unwrap();
        assert!(matches!(read_truth(&path, &k, 0, 5), Err(Error::Format(_))));
        let (_, fresh) = load_or_compute(dir.path(), &g, &k, 0).unwrap();
        assert!(fresh);
        assert!(read_truth(&path, &k, 0, 5).is_ok());
    }

    #[test]
    fn mismatched_kernel_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let g = generators::path(5);
        let k = Kernel::ppr(0.2).unwrap();
        load_or_compute(dir.path(), &g, &k, 0).unwrap();
        let path = cache_path(dir.path(), &g, &k, 0);
        assert!(read_truth(&path, &Kernel::ppr(0.3).unwrap(), 0, 5).is_err());
    }
}
