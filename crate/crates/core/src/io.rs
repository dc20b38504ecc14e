//! Graph file formats.
//!
//! `.bin` (little-endian):
//!
//! | field     | type            | notes                                  |
//! |-----------|-----------------|----------------------------------------|
//! | `n`       | `u64`           | vertex count                           |
//! | `m`       | `u64`           | edge slots (each undirected edge twice)|
//! | `size`    | `u64`           | file length: `24 + 8(n+1) + 4m`        |
//! | `offsets` | `u64 × (n + 1)` | neighbor range of `i` is `[o[i], o[i+1])` |
//! | `edges`   | `u32 × m`       | neighbor ids                           |
//!
//! Files whose `size` field follows the older `24 + 8(n-1) + 4m` formula are
//! accepted with a warning; the layout itself is the same.
//!
//! `.adj`: ASCII, one value per line: `AdjacencyGraph`, `n`, `m`, the `n`
//! offsets, then the `m` neighbor ids.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::graph::{Graph, Vertex};
use crate::{Error, Result};

const HEADER: usize = 24;
const ADJ_MAGIC: &str = "AdjacencyGraph";

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Byte length of the `.bin` encoding of a graph with `n` vertices and `m`
/// edge slots.
pub fn bin_size(n: u64, m: u64) -> u64 {
    HEADER as u64 + (n + 1) * 8 + m * 4
}

fn legacy_bin_size(n: u64, m: u64) -> Option<u64> {
    (HEADER as u64 + m * 4).checked_add(n.checked_sub(1)? * 8)
}

pub fn load_bin(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(io_err(path))?;
    decode_bin(&bytes)
}

pub fn decode_bin(bytes: &[u8]) -> Result<Graph> {
    let actual = bytes.len() as u64;
    if bytes.len() < HEADER {
        return Err(Error::Truncated {
            expected: HEADER as u64,
            actual,
        });
    }
    let word = |i: usize| u64::from_le_bytes(bytes[i * 8..i * 8 + 8].try_into().unwrap());
    let (n, m, size) = (word(0), word(1), word(2));
    if n >= u32::MAX as u64 {
        return Err(Error::TooManyVertices(n));
    }
    let expected = bin_size(n, m);
    if actual < expected {
        return Err(Error::Truncated { expected, actual });
    }
    if size != expected {
        if Some(size) == legacy_bin_size(n, m) {
            log::warn!("size header uses the legacy (n-1) offsets formula; accepting");
        } else {
            return Err(Error::SizeMismatch {
                header: size,
                actual,
            });
        }
    }
    if actual != expected {
        return Err(Error::SizeMismatch {
            header: size,
            actual,
        });
    }
    let n = n as usize;
    let m = m as usize;
    let off_bytes = &bytes[HEADER..HEADER + (n + 1) * 8];
    let offsets: Vec<usize> = off_bytes
        .chunks_exact(8)
        .map(|c| u64::from_le_bytes(c.try_into().unwrap()) as usize)
        .collect();
    let edges: Vec<Vertex> = bytes[HEADER + (n + 1) * 8..]
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
        .collect();
    debug_assert_eq!(edges.len(), m);
    Graph::from_csr(offsets, edges)
}

pub fn encode_bin(g: &Graph) -> Vec<u8> {
    let (n, m) = (g.n() as u64, g.m() as u64);
    let size = bin_size(n, m);
    let mut out = Vec::with_capacity(size as usize);
    for w in [n, m, size] {
        out.extend_from_slice(&w.to_le_bytes());
    }
    for &o in g.offsets() {
        out.extend_from_slice(&(o as u64).to_le_bytes());
    }
    for &e in g.edges() {
        out.extend_from_slice(&e.to_le_bytes());
    }
    out
}

pub fn write_bin(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode_bin(g)).map_err(io_err(path))
}

pub fn load_adj(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    parse_adj(&text)
}

pub fn parse_adj(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, ADJ_MAGIC)) => {}
        Some((line, other)) => {
            return Err(Error::Parse {
                line,
                msg: format!("expected header {ADJ_MAGIC:?}, found {other:?}"),
            })
        }
        None => {
            return Err(Error::Parse {
                line: 1,
                msg: "empty file".into(),
            })
        }
    }
    let mut next_num = |what: &str| -> Result<u64> {
        let (line, s) = lines.next().ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("unexpected end of file reading {what}"),
        })?;
        s.parse::<u64>().map_err(|e| Error::Parse {
            line,
            msg: format!("{what}: {e}"),
        })
    };
    let n = next_num("n")?;
    let m = next_num("m")?;
    if n >= u32::MAX as u64 {
        return Err(Error::TooManyVertices(n));
    }
    let mut offsets = Vec::with_capacity(n as usize + 1);
    for _ in 0..n {
        offsets.push(next_num("offset")? as usize);
    }
    offsets.push(m as usize);
    let mut edges = Vec::with_capacity(m as usize);
    for _ in 0..m {
        let v = next_num("edge")?;
        if v >= n {
            return Err(Error::VertexOutOfRange { id: v, n });
        }
        edges.push(v as Vertex);
    }
    if let Some((line, extra)) = lines.next() {
        return Err(Error::Parse {
            line,
            msg: format!("count mismatch: trailing value {extra:?} after {m} edges"),
        });
    }
    Graph::from_csr(offsets, edges)
}

pub fn write_adj(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = fs::File::create(path).map_err(io_err(path))?;
    let mut w = BufWriter::new(file);
    let mut emit = || -> std::io::Result<()> {
        writeln!(w, "{ADJ_MAGIC}")?;
        writeln!(w, "{}", g.n())?;
        writeln!(w, "{}", g.m())?;
        for &o in &g.offsets()[..g.n()] {
            writeln!(w, "{o}")?;
        }
        for &e in g.edges() {
            writeln!(w, "{e}")?;
        }
        w.flush()
    };
    emit().map_err(io_err(path))
}

/// Loads `.bin` or `.adj` by file extension.
pub fn load(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    match path.extension().and_then(|e| e.to_str()) {
        Some("bin") => load_bin(path),
        Some("adj") => load_adj(path),
        other => Err(Error::UnknownFormat(
            other.unwrap_or("<no extension>").to_string(),
        )),
    }
}

/// Writes `.bin` or `.adj` by file extension.
pub fn save(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    match path.extension().and_then(|e| e.to_str()) {
        Some("bin") => write_bin(g, path),
        Some("adj") => write_adj(g, path),
        other => Err(Error::UnknownFormat(
            other.unwrap_or("<no extension>").to_string(),
        )),
    }
}
