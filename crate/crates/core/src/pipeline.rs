//! End-to-end runs over a [`RunConfig`], shared by the command-line tool
//! and the tests. Every step reads and writes the files documented in
//! `docs/formats.md` under one output directory.

use std::path::{Path, PathBuf};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::io::{
    read_field_dump, write_field_dump, write_particles, write_png, write_tileset, write_vtk, PeakRow, RunConfig,
};
use crate::levelset::{GridSpec, TileFields};
use crate::morphology::{extract_phase, morph_fields};
use crate::packing::{pack, PackingState};
use crate::stats::{render, s2_fft, secondary_peaks, GlobalImage, S2Field};
use crate::tileset::{assemble, TileSet, Tiling};

pub const PARTICLES_FILE: &str = "particles.txt";
pub const TILESET_FILE: &str = "tileset.txt";
pub const TILING_FILE: &str = "tiling.txt";
pub const MORPH_FILE: &str = "morph.bin";
pub const PHASE_FILE: &str = "phase.bin";
pub const PEAKS_FILE: &str = "peaks.csv";
pub const S2_FILE: &str = "s2.csv";

pub fn field_file(name: &str) -> String {
    format!("{name}.bin")
}

/// Independent seed number `index` of stream `stream` derived from `seed`.
pub fn derive_seed(seed: u64, stream: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng.set_word_pos(2 * index as u128);
    rng.next_u64()
}

pub fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

pub fn run_pack(cfg: &RunConfig, set: &TileSet) -> Result<PackingState<f64>> {
    cfg.validate(set)?;
    pack(set, cfg.grid(set.dim())?, &cfg.packing)
}

/// Writes the tile set, the particle list and the LS1/LS2(/LS3) dumps.
pub fn write_pack(dir: &Path, state: &PackingState<f64>) -> Result<()> {
    ensure_dir(dir)?;
    let fields = state.fields();
    let grid = *fields.grid();
    write_tileset(state.set(), &dir.join(TILESET_FILE))?;
    write_particles(&dir.join(PARTICLES_FILE), &grid, state.particles())?;
    let mut names = vec!["ls1", "ls2"];
    if fields.tracks_ls3() {
        names.push("ls3");
    }
    for name in names {
        let tiles: Vec<Vec<f64>> = (0..fields.len())
            .map(|t| fields.field(t, name).map(<[f64]>::to_vec))
            .collect::<Result<_>>()?;
        write_field_dump(&dir.join(field_file(name)), &grid, name, &tiles)?;
    }
    Ok(())
}

/// Reads the fields written by [`write_pack`]; LS3 is optional.
pub fn load_fields(dir: &Path) -> Result<TileFields<f64>> {
    let ls1 = read_field_dump(&dir.join(field_file("ls1")))?;
    let ls2 = read_field_dump(&dir.join(field_file("ls2")))?;
    let ls3_path = dir.join(field_file("ls3"));
    let ls3 = if ls3_path.exists() {
        Some(read_field_dump(&ls3_path)?)
    } else {
        None
    };
    if ls2.grid != ls1.grid || ls3.as_ref().is_some_and(|d| d.grid != ls1.grid) {
        return Err(Error::InvalidParameter("field dumps disagree on the grid".into()));
    }
    TileFields::from_values(ls1.grid, ls1.tiles, ls2.tiles, ls3.map(|d| d.tiles))
}

/// Morphed fields and binary phases of every tile.
pub fn run_morph(cfg: &RunConfig, fields: &TileFields<f64>) -> Result<(Vec<Vec<f64>>, Vec<Vec<bool>>)> {
    let f = morph_fields(fields, &cfg.morph)?;
    let phases = f.iter().map(|t| extract_phase(t)).collect();
    Ok((f, phases))
}

pub fn write_morph(dir: &Path, grid: &GridSpec, morphed: &[Vec<f64>], phases: &[Vec<bool>]) -> Result<()> {
    ensure_dir(dir)?;
    write_field_dump(&dir.join(MORPH_FILE), grid, "morph", morphed)?;
    let ones: Vec<Vec<f64>> = phases
        .iter()
        .map(|t| t.iter().map(|&s| if s { 1.0 } else { 0.0 }).collect())
        .collect();
    write_field_dump(&dir.join(PHASE_FILE), grid, "phase", &ones)
}

/// Binary phases from `phase.bin` (non-zero is solid).
pub fn load_phases(dir: &Path) -> Result<(GridSpec, Vec<Vec<bool>>)> {
    let d = read_field_dump(&dir.join(PHASE_FILE))?;
    let phases = d.tiles.iter().map(|t| t.iter().map(|&v| v != 0.0).collect()).collect();
    Ok((d.grid, phases))
}

pub fn run_assemble(cfg: &RunConfig, set: &TileSet) -> Result<Tiling> {
    let mut dims = cfg.assemble.tiles;
    if set.dim() == 2 {
        dims[2] = 1;
    }
    assemble(set, dims, cfg.assemble_seed())
}

/// Writes `render.png` (2D) or `render.vtk` (3D); returns the path.
pub fn write_render(dir: &Path, image: &GlobalImage<bool>, grid: &GridSpec) -> Result<PathBuf> {
    ensure_dir(dir)?;
    if image.dim() == 2 {
        let p = dir.join("render.png");
        write_png(&p, image)?;
        Ok(p)
    } else {
        let p = dir.join("render.vtk");
        write_vtk(&p, image, grid.h::<f64>())?;
        Ok(p)
    }
}

pub struct StatsRun {
    pub rows: Vec<PeakRow>,
    /// S2 of the first tiling of the first realization.
    pub first_s2: Option<S2Field>,
}

/// Packs `realizations` sets (seed stream 1), assembles `tilings` tilings
/// of each (seed stream 2) and reports the maximal normalised secondary
/// S2 peak of every tiling. Realizations run in parallel.
pub fn run_stats(cfg: &RunConfig, set: &TileSet) -> Result<StatsRun> {
    cfg.validate(set)?;
    let grid = cfg.grid(set.dim())?;
    let master = cfg.packing.seed;
    let per: Vec<(Vec<PeakRow>, Option<S2Field>)> = (0..cfg.stats.realizations)
        .into_par_iter()
        .map(|r| -> Result<_> {
            let seed = derive_seed(master, 1, r as u64);
            let mut params = cfg.packing.clone();
            params.seed = seed;
            let state = pack(set, grid, &params)?;
            let (_, phases) = run_morph(cfg, state.fields())?;
            let mut rows = Vec::with_capacity(cfg.stats.tilings);
            let mut first = None;
            for t in 0..cfg.stats.tilings {
                let tseed = derive_seed(master, 2, (r * cfg.stats.tilings + t) as u64);
                let mut dims = cfg.stats.tiles;
                if set.dim() == 2 {
                    dims[2] = 1;
                }
                let tiling = assemble(set, dims, tseed)?;
                let image = render(&tiling, &grid, &phases)?.periodic_view();
                let s2 = s2_fft(&image, cfg.stats.solid);
                let report = secondary_peaks(&s2);
                let max = report.max;
                rows.push(PeakRow {
                    realization: r,
                    seed,
                    tiling: t,
                    phi: report.phi,
                    max_normalized: max.map_or(f64::NAN, |p| p.normalized),
                    lag: max.map_or([0; 3], |p| p.lag),
                });
                if r == 0 && t == 0 {
                    first = Some(s2);
                }
            }
            Ok((rows, first))
        })
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    let mut first_s2 = None;
    for (r, f) in per {
        rows.extend(r);
        first_s2 = first_s2.or(f);
    }
    Ok(StatsRun { rows, first_s2 })
}
