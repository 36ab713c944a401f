//! Tile-set files.
//!
//! ```text
//! # comment
//! dimension = 2
//! codes_x = 2
//! codes_y = 2
//! 0: 0 0 0 0      # index: N E S W   (3D: N E S W T B)
//! ```

use std::fmt::Write as _;
use std::path::Path;

use super::{parse_error, read_text, write_text};
use crate::error::{Error, Result};
use crate::tileset::{Codes, TileSet};

pub fn parse_tileset(text: &str, path: &Path) -> Result<TileSet> {
    let mut dim: Option<usize> = None;
    let mut counts: [Option<u32>; 3] = [None; 3];
    let mut rows: Vec<(usize, Codes)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |m: String| parse_error(path, line_no, m);
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some((key, value)) = line.split_once('=') {
            if !rows.is_empty() {
                return Err(err("header lines must precede the tiles".into()));
            }
            let value: u32 = value
                .trim()
                .parse()
                .map_err(|_| err(format!("expected an integer after `{}=`", key.trim())))?;
            match key.trim() {
                "dimension" if value == 2 || value == 3 => dim = Some(value as usize),
                "dimension" => return Err(err(format!("dimension {value} is not 2 or 3"))),
                "codes_x" => counts[0] = Some(value),
                "codes_y" => counts[1] = Some(value),
                "codes_z" => counts[2] = Some(value),
                other => return Err(err(format!("unknown header key `{other}`"))),
            }
            continue;
        }
        let Some((index, codes)) = line.split_once(':') else {
            return Err(err("expected `key = value` or `index: codes`".into()));
        };
        let d = dim.ok_or_else(|| err("`dimension` must be given before the tiles".into()))?;
        let index: usize = index
            .trim()
            .parse()
            .map_err(|_| err(format!("bad tile index `{}`", index.trim())))?;
        if index != rows.len() {
            return Err(err(format!("tile index {index} out of sequence, expected {}", rows.len())));
        }
        let values: Vec<u32> = codes
            .split_whitespace()
            .map(|v| v.parse().map_err(|_| err(format!("bad code `{v}`"))))
            .collect::<Result<_>>()?;
        let want = if d == 3 { 6 } else { 4 };
        if values.len() != want {
            return Err(err(format!("expected {want} codes, found {}", values.len())));
        }
        let mut c: Codes = [[values[3], values[1]], [values[2], values[0]], [0, 0]];
        if d == 3 {
            c[2] = [values[5], values[4]];
        }
        for axis in 0..d {
            let limit = counts[axis]
                .ok_or_else(|| err(format!("codes_{} must be given before the tiles", ["x", "y", "z"][axis])))?;
            if c[axis].iter().any(|&v| v >= limit) {
                return Err(err(format!("code out of range on axis {axis} (codes_{} = {limit})", ["x", "y", "z"][axis])));
            }
        }
        rows.push((line_no, c));
    }

    let d = dim.ok_or_else(|| parse_error(path, 0, "missing `dimension`".into()))?;
    if rows.is_empty() {
        return Err(parse_error(path, 0, "no tiles".into()));
    }
    let code_counts = [counts[0].unwrap_or(1), counts[1].unwrap_or(1), counts[2].unwrap_or(1)];
    let line_of = |tile: usize| rows[tile].0;
    TileSet::new(d, code_counts, rows.iter().map(|r| r.1).collect()).map_err(|e| match e {
        Error::DuplicateTiles { first, second } => parse_error(
            path,
            line_of(second),
            format!("tile {second} duplicates tile {first} (line {})", line_of(first)),
        ),
        other => other,
    })
}

pub fn read_tileset(path: &Path) -> Result<TileSet> {
    parse_tileset(&read_text(path)?, path)
}

pub fn format_tileset(set: &TileSet) -> String {
    let mut s = String::new();
    let counts = set.code_counts();
    let _ = writeln!(s, "dimension = {}", set.dim());
    let _ = writeln!(s, "codes_x = {}", counts[0]);
    let _ = writeln!(s, "codes_y = {}", counts[1]);
    if set.dim() == 3 {
        let _ = writeln!(s, "codes_z = {}", counts[2]);
    }
    for t in set.tiles() {
        let codes: Vec<String> = t.file_order(set.dim()).iter().map(u32::to_string).collect();
        let _ = writeln!(s, "{}: {}", t.index(), codes.join(" "));
    }
    s
}

pub fn write_tileset(set: &TileSet, path: &Path) -> Result<()> {
    write_text(path, &format_tileset(set))
}
