//! Binary snapshot: `MLIO`, a `u16` version, the dimensions, year and clamp
//! count, length-prefixed UTF-8 strings (source, currency unit, node and
//! layer labels) and the row-major weights. All integers and floats are
//! little-endian.

use std::fs;
use std::path::Path;

use nalgebra::DMatrix;

use super::write_atomic;
use crate::error::{Error, Result};
use crate::net::{Meta, MultilayerNetwork};

pub const SNAPSHOT_MAGIC: &[u8; 4] = b"MLIO";
pub const SNAPSHOT_VERSION: u16 = 1;

fn put_str(out: &mut Vec<u8>, s: &str) {
    out.extend_from_slice(&(s.len() as u32).to_le_bytes());
    out.extend_from_slice(s.as_bytes());
}

pub fn snapshot_to_bytes(net: &MultilayerNetwork) -> Vec<u8> {
    let nl = net.n_cells();
    let mut out = Vec::with_capacity(64 + nl * nl * 8);
    out.extend_from_slice(SNAPSHOT_MAGIC);
    out.extend_from_slice(&SNAPSHOT_VERSION.to_le_bytes());
    out.extend_from_slice(&(net.n_nodes() as u32).to_le_bytes());
    out.extend_from_slice(&(net.n_layers() as u32).to_le_bytes());
    out.extend_from_slice(&net.meta().year.to_le_bytes());
    out.extend_from_slice(&net.meta().clamped.to_le_bytes());
    put_str(&mut out, &net.meta().source);
    put_str(&mut out, &net.meta().currency_unit);
    for s in net.node_labels().iter().chain(net.layer_labels()) {
        put_str(&mut out, s);
    }
    for i in 0..nl {
        for j in 0..nl {
            out.extend_from_slice(&net.supra()[(i, j)].to_le_bytes());
        }
    }
    out
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
    path: &'a Path,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.bytes.len() - self.pos < n {
            return Err(Error::Format {
                path: self.path.to_path_buf(),
                message: format!("snapshot truncated at byte {}", self.pos),
            });
        }
        let s = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn array<const K: usize>(&mut self) -> Result<[u8; K]> {
        Ok(self.take(K)?.try_into().expect("length checked"))
    }

    fn string(&mut self) -> Result<String> {
        let len = u32::from_le_bytes(self.array()?) as usize;
        let raw = self.take(len)?;
        String::from_utf8(raw.to_vec()).map_err(|_| Error::Format {
            path: self.path.to_path_buf(),
            message: "snapshot label is not UTF-8".into(),
        })
    }
}

/// Decodes a snapshot; `path` is only used in error messages.
pub fn snapshot_from_bytes(bytes: &[u8], path: &Path) -> Result<MultilayerNetwork> {
    let bad = |message: String| Error::Format {
        path: path.to_path_buf(),
        message,
    };
    let mut cur = Cursor { bytes, pos: 0, path };
    if cur.take(4)? != SNAPSHOT_MAGIC {
        return Err(bad("not a snapshot (bad magic bytes)".into()));
    }
    let version = u16::from_le_bytes(cur.array()?);
    if version != SNAPSHOT_VERSION {
        return Err(bad(format!("unsupported snapshot version {version}")));
    }
    let n = u32::from_le_bytes(cur.array()?) as usize;
    let l = u32::from_le_bytes(cur.array()?) as usize;
    let year = i32::from_le_bytes(cur.array()?);
    let clamped = u64::from_le_bytes(cur.array()?);
    let source = cur.string()?;
    let currency_unit = cur.string()?;
    let nodes = (0..n).map(|_| cur.string()).collect::<Result<Vec<_>>>()?;
    let layers = (0..l).map(|_| cur.string()).collect::<Result<Vec<_>>>()?;
    let nl = n
        .checked_mul(l)
        .filter(|nl| nl.checked_mul(*nl).and_then(|c| c.checked_mul(8)).is_some())
        .ok_or_else(|| bad("snapshot dimensions overflow".into()))?;
    let block = cur.take(nl * nl * 8)?;
    if cur.pos != bytes.len() {
        return Err(bad(format!("{} trailing bytes", bytes.len() - cur.pos)));
    }
    let supra = DMatrix::from_fn(nl, nl, |i, j| {
        let k = (i * nl + j) * 8;
        f64::from_le_bytes(block[k..k + 8].try_into().expect("8 bytes"))
    });
    let meta = Meta {
        year,
        source,
        currency_unit,
        clamped,
    };
    MultilayerNetwork::new(nodes, layers, supra, meta)
}

pub fn write_snapshot(net: &MultilayerNetwork, path: &Path) -> Result<()> {
    write_atomic(path, &snapshot_to_bytes(net))
}

pub fn read_snapshot(path: &Path) -> Result<MultilayerNetwork> {
    snapshot_from_bytes(&fs::read(path)?, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::fixtures::t1;

    #[test]
    fn round_trip() {
        let mut net = t1();
        let bytes = snapshot_to_bytes(&net);
        assert_eq!(&bytes[..4], b"MLIO");
        assert_eq!(snapshot_from_bytes(&bytes, Path::new("s")).unwrap(), net);
        net = MultilayerNetwork::new(
            vec!["é".into()],
            vec!["a b".into()],
            DMatrix::from_element(1, 1, 0.1),
            Meta {
                year: 2000,
                clamped: 3,
                ..Meta::default()
            },
        )
        .unwrap();
        assert_eq!(snapshot_from_bytes(&snapshot_to_bytes(&net), Path::new("s")).unwrap(), net);
    }

    #[test]
    fn deterministic_bytes() {
        assert_eq!(snapshot_to_bytes(&t1()), snapshot_to_bytes(&t1()));
    }

    #[test]
    fn rejects_corruption() {
        let bytes = snapshot_to_bytes(&t1());
        let p = Path::new("s");
        assert!(snapshot_from_bytes(&bytes[..bytes.len() - 1], p).is_err());
        let mut extra = bytes.clone();
        extra.push(0);
        assert!(snapshot_from_bytes(&extra, p).is_err());
        let mut magic = bytes.clone();
        magic[0] = b'X';
        assert!(snapshot_from_bytes(&magic, p).is_err());
        let mut version = bytes.clone();
        version[4] = 9;
        assert!(snapshot_from_bytes(&version, p).is_err());
        let mut negative = bytes;
        let last = negative.len() - 8;
        negative[last..].copy_from_slice(&(-1.0f64).to_le_bytes());
        assert!(snapshot_from_bytes(&negative, p).is_err());
    }
}
