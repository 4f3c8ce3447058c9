//! The AMSF1 on-disk format for sampled functions.
//!
//! A file is a single-line JSON header followed by a newline and the raw
//! samples: `2 N^n` little-endian f64 values, re/im interleaved, row-major,
//! spatial grids in natural order and frequency grids DC-centered. The
//! header may instead name a sibling binary file in its `bin` field.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Grid, SampledFunction, Side};

const MAGIC: &str = "AMSF1";
const DTYPE: &str = "f64-interleaved";

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    magic: String,
    n: usize,
    #[serde(rename = "N")]
    samples: usize,
    #[serde(rename = "L")]
    period: f64,
    side: Side,
    dtype: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bin: Option<String>,
}

/// Writes a sampled function as a self-contained AMSF1 file.
pub fn write_amsf1(path: &Path, f: &SampledFunction) -> Result<()> {
    let grid = f.grid();
    let header = Header {
        magic: MAGIC.into(),
        n: grid.dim(),
        samples: grid.samples_per_axis(),
        period: grid.period(),
        side: grid.side(),
        dtype: DTYPE.into(),
        bin: None,
    };
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer(&mut w, &header).map_err(|e| Error::Format(e.to_string()))?;
    w.write_all(b"\n")?;
    for v in f.values() {
        w.write_all(&v.re.to_le_bytes())?;
        w.write_all(&v.im.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

/// Reads an AMSF1 file, following a `bin` reference if present.
pub fn read_amsf1(path: &Path) -> Result<SampledFunction> {
    let mut r = BufReader::new(File::open(path)?);
    let mut header_line = Vec::new();
    // Read up to the first newline.
    let mut byte = [0u8; 1];
    loop {
        let got = r.read(&mut byte)?;
        if got == 0 {
            return Err(Error::Format("missing AMSF1 header terminator".into()));
        }
        if byte[0] == b'\n' {
            break;
        }
        header_line.push(byte[0]);
        if header_line.len() > 4096 {
            return Err(Error::Format("AMSF1 header too long".into()));
        }
    }
    let header: Header =
        serde_json::from_slice(&header_line).map_err(|e| Error::Format(e.to_string()))?;
    if header.magic != MAGIC {
        return Err(Error::Format(format!("bad magic {:?}", header.magic)));
    }
    if header.dtype != DTYPE {
        return Err(Error::Format(format!("unsupported dtype {:?}", header.dtype)));
    }
    let grid = Grid::new(header.n, header.samples, header.period, header.side)?;
    let expected = grid.len() * 16;
    let mut raw = Vec::with_capacity(expected);
    match &header.bin {
        Some(rel) => {
            let sibling = path
                .parent()
                .map(|p| p.join(rel))
                .ok_or_else(|| Error::Format("cannot resolve bin reference".into()))?;
            File::open(sibling)?.read_to_end(&mut raw)?;
        }
        None => {
            r.read_to_end(&mut raw)?;
        }
    }
    if raw.len() != expected {
        return Err(Error::Format(format!(
            "expected {expected} payload bytes, found {}",
            raw.len()
        )));
    }
    let values: Vec<Complex64> = raw
        .chunks_exact(16)
        .map(|c| {
            let re = f64::from_le_bytes(c[0..8].try_into().unwrap());
            let im = f64::from_le_bytes(c[8..16].try_into().unwrap());
            Complex64::new(re, im)
        })
        .collect();
    SampledFunction::new(grid, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    #[test]
    fn round_trip() {
        let dir = std::env::temp_dir().join("amsf1_round_trip_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("f.amsf1");
        let grid = Grid::new(1, 64, 8.0, Side::Spatial).unwrap();
        let mut rng = SplitMix64::new(3);
        let f = SampledFunction::from_fn(grid, |_| {
            Complex64::new(rng.uniform() - 0.5, rng.uniform() - 0.5)
        })
        .unwrap();
        write_amsf1(&path, &f).unwrap();
        let back = read_amsf1(&path).unwrap();
        assert_eq!(f.grid(), back.grid());
        assert_eq!(f.values(), back.values());
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn rejects_corrupt_magic() {
        let dir = std::env::temp_dir().join("amsf1_magic_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.amsf1");
        std::fs::write(
            &path,
            b"{\"magic\":\"NOPE\",\"n\":1,\"N\":4,\"L\":1.0,\"side\":\"spatial\",\"dtype\":\"f64-interleaved\"}\n",
        )
        .unwrap();
        assert!(read_amsf1(&path).is_err());
        std::fs::remove_dir_all(&dir).ok();
    }
}
