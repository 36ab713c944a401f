//! File formats and run configuration. Byte layouts are documented in
//! `docs/formats.md`.

mod config;
mod dump;
mod export;
mod particles;
mod tileset_file;
mod tiling_file;

pub use config::{builtin_set, AssembleConfig, RunConfig, StatsConfig, TileSetSource};
pub use dump::{decode_field_dump, encode_field_dump, read_field_dump, write_field_dump, FieldDump, HEADER_LEN};
pub use export::{
    format_peak_csv, format_s2_csv, format_vtk, phase_png, write_peak_csv, write_png, write_s2_csv, write_vtk,
    PeakRow,
};
pub use particles::{format_particles, parse_particles, read_particles, write_particles};
pub use tileset_file::{format_tileset, parse_tileset, read_tileset, write_tileset};
pub use tiling_file::{format_tiling, parse_tiling, read_tiling, write_tiling};

use std::path::Path;

use crate::error::{Error, Result};

pub(crate) fn parse_error(path: &Path, line: usize, message: String) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    }
}

pub(crate) fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub(crate) fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::io(path, e))
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<()> {
    write_bytes(path, text.as_bytes())
}

pub(crate) fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}
