//! Raw field dumps.
//!
//! A dump starts with a 64-byte ASCII header
//! `WTLS dim=<d> n=<n> tiles=<t> field=<name>`, padded with spaces and
//! terminated by `\n` in byte 63. The body holds `t * n^d` little-endian
//! `f64` values: tile after tile, each tile row-major with x fastest.

use std::path::Path;

use super::{parse_error, read_bytes, write_bytes};
use crate::error::{Error, Result};
use crate::levelset::GridSpec;
use crate::scalar::Real;

pub const HEADER_LEN: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct FieldDump {
    pub grid: GridSpec,
    pub field: String,
    pub tiles: Vec<Vec<f64>>,
}

pub fn encode_field_dump<T: Real>(grid: &GridSpec, field: &str, tiles: &[Vec<T>]) -> Result<Vec<u8>> {
    let header = format!("WTLS dim={} n={} tiles={} field={}", grid.dim(), grid.n(), tiles.len(), field);
    if header.len() >= HEADER_LEN || field.contains(char::is_whitespace) {
        return Err(Error::InvalidParameter(format!("field name `{field}` does not fit the dump header")));
    }
    let mut out = Vec::with_capacity(HEADER_LEN + tiles.len() * grid.nodes() * 8);
    out.extend_from_slice(header.as_bytes());
    out.resize(HEADER_LEN - 1, b' ');
    out.push(b'\n');
    for t in tiles {
        if t.len() != grid.nodes() {
            return Err(Error::InvalidParameter(format!(
                "tile field has {} values, grid has {} nodes",
                t.len(),
                grid.nodes()
            )));
        }
        for v in t {
            out.extend_from_slice(&v.to_f64_lossy().to_le_bytes());
        }
    }
    Ok(out)
}

pub fn decode_field_dump(bytes: &[u8], path: &Path) -> Result<FieldDump> {
    let bad = |m: &str| parse_error(path, 1, m.to_string());
    if bytes.len() < HEADER_LEN || bytes[HEADER_LEN - 1] != b'\n' {
        return Err(bad("missing 64-byte dump header"));
    }
    let header = std::str::from_utf8(&bytes[..HEADER_LEN]).map_err(|_| bad("header is not text"))?;
    let mut words = header.split_whitespace();
    if words.next() != Some("WTLS") {
        return Err(bad("not a field dump"));
    }
    let (mut dim, mut n, mut count, mut field) = (None, None, None, None);
    for w in words {
        match w.split_once('=') {
            Some(("dim", v)) => dim = v.parse::<usize>().ok(),
            Some(("n", v)) => n = v.parse::<usize>().ok(),
            Some(("tiles", v)) => count = v.parse::<usize>().ok(),
            Some(("field", v)) => field = Some(v.to_string()),
            _ => return Err(bad("malformed header entry")),
        }
    }
    let (Some(dim), Some(n), Some(count), Some(field)) = (dim, n, count, field) else {
        return Err(bad("incomplete header"));
    };
    let grid = GridSpec::new(dim, n).map_err(|e| bad(&e.to_string()))?;
    let body = &bytes[HEADER_LEN..];
    if body.len() != count * grid.nodes() * 8 {
        return Err(bad("body length does not match the header"));
    }
    let values: Vec<f64> = body
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of eight bytes")))
        .collect();
    let tiles = values.chunks(grid.nodes()).map(<[f64]>::to_vec).collect();
    Ok(FieldDump { grid, field, tiles })
}

pub fn write_field_dump<T: Real>(path: &Path, grid: &GridSpec, field: &str, tiles: &[Vec<T>]) -> Result<()> {
    write_bytes(path, &encode_field_dump(grid, field, tiles)?)
}

pub fn read_field_dump(path: &Path) -> Result<FieldDump> {
    decode_field_dump(&read_bytes(path)?, path)
}
