//! Tiling files: a header `tiling <nx> <ny> <nz> seed=<s>` followed by one
//! line of tile indices per row (x ascending), rows y-major, layers z-major.

use std::fmt::Write as _;
use std::path::Path;

use super::{parse_error, read_text, write_text};
use crate::error::Result;
use crate::tileset::Tiling;

pub fn format_tiling(tiling: &Tiling) -> String {
    let [nx, ny, nz] = tiling.dims();
    let mut s = format!("tiling {nx} {ny} {nz} seed={}\n", tiling.seed());
    for row in tiling.cells().chunks(nx) {
        let words: Vec<String> = row.iter().map(usize::to_string).collect();
        let _ = writeln!(s, "{}", words.join(" "));
    }
    s
}

pub fn parse_tiling(text: &str, path: &Path) -> Result<Tiling> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let header = lines.next().map(|l| l.1).unwrap_or("");
    let words: Vec<&str> = header.split_whitespace().collect();
    let bad_header = || parse_error(path, 1, "expected `tiling <nx> <ny> <nz> seed=<s>`".into());
    if words.len() != 5 || words[0] != "tiling" {
        return Err(bad_header());
    }
    let mut dims = [0usize; 3];
    for (d, w) in dims.iter_mut().zip(&words[1..4]) {
        *d = w.parse().map_err(|_| bad_header())?;
    }
    let seed: u64 = words[4]
        .strip_prefix("seed=")
        .and_then(|v| v.parse().ok())
        .ok_or_else(bad_header)?;
    let mut cells = Vec::with_capacity(dims.iter().product());
    for (i, line) in lines {
        let row: Vec<usize> = line
            .split_whitespace()
            .map(|w| w.parse().map_err(|_| parse_error(path, i + 1, format!("bad tile index `{w}`"))))
            .collect::<Result<_>>()?;
        if row.len() != dims[0] {
            return Err(parse_error(path, i + 1, format!("row has {} cells, expected {}", row.len(), dims[0])));
        }
        cells.extend(row);
    }
    Tiling::from_cells(dims, cells, seed).map_err(|e| parse_error(path, 1, e.to_string()))
}

pub fn write_tiling(path: &Path, tiling: &Tiling) -> Result<()> {
    write_text(path, &format_tiling(tiling))
}

pub fn read_tiling(path: &Path) -> Result<Tiling> {
    parse_tiling(&read_text(path)?, path)
}
