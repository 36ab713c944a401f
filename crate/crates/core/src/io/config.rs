//! Run configuration: a line-oriented `key = value` file with sections.
//!
//! Top-level keys come first; every `[phase]` section appends one phase to
//! the packing schedule; `[polygon]`, `[ellipsoid]`, `[morph]`,
//! `[assemble]` and `[stats]` set their own groups. `#` starts a comment.
//! The full key list is in `docs/formats.md`.

use std::path::{Path, PathBuf};

use super::{parse_error, read_text};
use crate::error::{Error, Result};
use crate::geometry::{EllipsoidParams, PolygonParams, ShapeSampler};
use crate::levelset::GridSpec;
use crate::morphology::{MorphMode, MorphParams};
use crate::packing::{PackingParams, Phase, StopCriterion};
use crate::tileset::TileSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TileSetSource {
    /// `c16`, `v16`, `cubes16`, `periodic2` or `periodic3`.
    Builtin(String),
    File(PathBuf),
}

impl TileSetSource {
    pub fn load(&self) -> Result<TileSet> {
        match self {
            TileSetSource::File(p) => super::read_tileset(p),
            TileSetSource::Builtin(name) => builtin_set(name)
                .ok_or_else(|| Error::InvalidParameter(format!("unknown built-in tile set `{name}`"))),
        }
    }
}

pub fn builtin_set(name: &str) -> Option<TileSet> {
    match name {
        "c16" => Some(TileSet::c16()),
        "v16" => Some(TileSet::v16()),
        "cubes16" => Some(TileSet::cubes16()),
        "periodic2" => Some(TileSet::periodic(2)),
        "periodic3" => Some(TileSet::periodic(3)),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AssembleConfig {
    pub tiles: [usize; 3],
    /// Defaults to the run seed.
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StatsConfig {
    /// Independently packed tile sets.
    pub realizations: usize,
    /// Tilings assembled from each packed set.
    pub tilings: usize,
    pub tiles: [usize; 3],
    /// Phase analysed: `true` for solid.
    pub solid: bool,
    /// Half-width (nodes) of the S2 table written for the first tiling;
    /// `None` writes the whole field.
    pub s2_max_lag: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub tileset: TileSetSource,
    pub n: usize,
    pub packing: PackingParams<f64>,
    pub morph: MorphParams<f64>,
    pub assemble: AssembleConfig,
    pub stats: StatsConfig,
    pub out: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tileset: TileSetSource::Builtin("v16".into()),
            n: 101,
            packing: PackingParams {
                phases: Vec::new(),
                ..PackingParams::new(default_phase())
            },
            morph: MorphParams {
                mode: MorphMode::Particles,
                t_c: 0.0,
                t_o: 0.0,
                gamma: 0.0,
            },
            assemble: AssembleConfig {
                tiles: [10, 10, 1],
                seed: None,
            },
            stats: StatsConfig {
                realizations: 1,
                tilings: 1,
                tiles: [10, 10, 1],
                solid: true,
                s2_max_lag: None,
            },
            out: PathBuf::from("out"),
        }
    }
}

fn default_phase() -> Phase<f64> {
    Phase {
        radius: 0.1,
        kappa: 0.0,
        rho: None,
        sigma: None,
        stop: StopCriterion::Exhaustion,
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    Top,
    Phase,
    Polygon,
    Ellipsoid,
    Morph,
    Assemble,
    Stats,
}

#[derive(Clone, Copy, PartialEq)]
enum ShapeName {
    Sphere,
    Polygon,
    Ellipsoid,
}

impl RunConfig {
    /// Parses a configuration; relative paths resolve against `base`.
    pub fn parse(text: &str, path: &Path, base: &Path) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        let mut section = Section::Top;
        let mut shape = ShapeName::Sphere;
        let mut polygon = PolygonParams::default();
        let mut ellipsoid = EllipsoidParams::default();

        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let err = |m: String| parse_error(path, line_no, m);
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                section = match name.trim() {
                    "phase" => {
                        cfg.packing.phases.push(default_phase());
                        Section::Phase
                    }
                    "polygon" => Section::Polygon,
                    "ellipsoid" => Section::Ellipsoid,
                    "morph" => Section::Morph,
                    "assemble" => Section::Assemble,
                    "stats" => Section::Stats,
                    other => return Err(err(format!("unknown section `[{other}]`"))),
                };
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(err("expected `key = value`".into()));
            };
            let (key, value) = (key.trim(), value.trim());
            let num = |v: &str| -> Result<f64> {
                v.parse::<f64>()
                    .map_err(|_| err(format!("`{key}`: expected a number, got `{v}`")))
            };
            let int = |v: &str| -> Result<u64> {
                v.parse::<u64>()
                    .map_err(|_| err(format!("`{key}`: expected a non-negative integer, got `{v}`")))
            };
            let flag = |v: &str| -> Result<bool> {
                match v {
                    "true" | "yes" | "1" => Ok(true),
                    "false" | "no" | "0" => Ok(false),
                    _ => Err(err(format!("`{key}`: expected true or false, got `{v}`"))),
                }
            };
            let bound = |v: &str| -> Result<Option<f64>> {
                if v == "inf" {
                    Ok(None)
                } else {
                    num(v).map(Some)
                }
            };
            let tiles = |v: &str| -> Result<[usize; 3]> {
                let parts: Vec<u64> = v.split_whitespace().map(int).collect::<Result<_>>()?;
                match parts.as_slice() {
                    [x, y] => Ok([*x as usize, *y as usize, 1]),
                    [x, y, z] => Ok([*x as usize, *y as usize, *z as usize]),
                    _ => Err(err(format!("`{key}`: expected two or three counts"))),
                }
            };
            let pair = |v: &str| -> Result<(f64, f64)> {
                let parts: Vec<f64> = v.split_whitespace().map(num).collect::<Result<_>>()?;
                match parts.as_slice() {
                    [a, b] => Ok((*a, *b)),
                    _ => Err(err(format!("`{key}`: expected two numbers"))),
                }
            };
            let unknown = || Err(err(format!("unknown key `{key}`")));

            match section {
                Section::Top => match key {
                    "tileset" => {
                        cfg.tileset = if builtin_set(value).is_some() {
                            TileSetSource::Builtin(value.to_string())
                        } else {
                            TileSetSource::File(base.join(value))
                        }
                    }
                    "n" => cfg.n = int(value)? as usize,
                    "seed" => cfg.packing.seed = int(value)?,
                    "inset" => cfg.packing.inset = if value == "auto" { None } else { Some(num(value)?) },
                    "exclude_vertices" => cfg.packing.exclude_vertices = flag(value)?,
                    "track_ls3" => cfg.packing.track_ls3 = flag(value)?,
                    "jitter" => cfg.packing.jitter = flag(value)?,
                    "use_patch" => cfg.packing.use_patch = flag(value)?,
                    "patch_half_width" => {
                        cfg.packing.patch_half_width = if value == "auto" { None } else { Some(int(value)? as usize) }
                    }
                    "shape" => {
                        shape = match value {
                            "sphere" => ShapeName::Sphere,
                            "polygon" => ShapeName::Polygon,
                            "ellipsoid" => ShapeName::Ellipsoid,
                            _ => return Err(err(format!("unknown shape `{value}`"))),
                        }
                    }
                    "out" => cfg.out = base.join(value),
                    _ => return unknown(),
                },
                Section::Phase => {
                    let p = cfg.packing.phases.last_mut().expect("section pushed a phase");
                    match key {
                        "radius" => p.radius = num(value)?,
                        "kappa" => p.kappa = num(value)?,
                        "rho" => p.rho = bound(value)?,
                        "sigma" => p.sigma = bound(value)?,
                        "stop" => {
                            let mut w = value.split_whitespace();
                            p.stop = match (w.next(), w.next(), w.next()) {
                                (Some("exhaustion"), None, _) => StopCriterion::Exhaustion,
                                (Some("steps"), Some(k), None) => StopCriterion::MaxSteps(int(k)? as usize),
                                (Some("fraction"), Some(v), None) => StopCriterion::VolumeFraction(num(v)?),
                                _ => {
                                    return Err(err(
                                        "`stop`: expected `exhaustion`, `steps <k>` or `fraction <phi>`".into(),
                                    ))
                                }
                            }
                        }
                        _ => return unknown(),
                    }
                }
                Section::Polygon => match key {
                    "vertex_mean" => polygon.vertex_mean = num(value)?,
                    "vertex_sd" => polygon.vertex_sd = num(value)?,
                    "angle_sd" => polygon.angle_sd = num(value)?,
                    "radial_mean" => polygon.radial_mean = num(value)?,
                    "radial_sd" => polygon.radial_sd = num(value)?,
                    "radial_cap" => polygon.radial_cap = num(value)?,
                    "max_attempts" => polygon.max_attempts = int(value)? as usize,
                    _ => return unknown(),
                },
                Section::Ellipsoid => match key {
                    "mid_ratio" => ellipsoid.mid_ratio = pair(value)?,
                    "minor_ratio" => ellipsoid.minor_ratio = pair(value)?,
                    _ => return unknown(),
                },
                Section::Morph => match key {
                    "mode" => {
                        cfg.morph.mode = match value {
                            "particles" => MorphMode::Particles,
                            "closed" => MorphMode::ClosedFoam,
                            "open" => MorphMode::OpenFoam,
                            "combined" => MorphMode::Combined,
                            _ => return Err(err(format!("unknown morph mode `{value}`"))),
                        }
                    }
                    "t_c" => cfg.morph.t_c = num(value)?,
                    "t_o" => cfg.morph.t_o = num(value)?,
                    "gamma" => cfg.morph.gamma = num(value)?,
                    _ => return unknown(),
                },
                Section::Assemble => match key {
                    "tiles" => cfg.assemble.tiles = tiles(value)?,
                    "seed" => cfg.assemble.seed = Some(int(value)?),
                    _ => return unknown(),
                },
                Section::Stats => match key {
                    "realizations" => cfg.stats.realizations = int(value)? as usize,
                    "tilings" => cfg.stats.tilings = int(value)? as usize,
                    "tiles" => cfg.stats.tiles = tiles(value)?,
                    "phase" => {
                        cfg.stats.solid = match value {
                            "solid" => true,
                            "void" => false,
                            _ => return Err(err(format!("`phase`: expected solid or void, got `{value}`"))),
                        }
                    }
                    "s2_max_lag" => {
                        cfg.stats.s2_max_lag = if value == "all" { None } else { Some(int(value)? as usize) }
                    }
                    _ => return unknown(),
                },
            }
        }

        cfg.packing.shape = match shape {
            ShapeName::Sphere => ShapeSampler::Sphere,
            ShapeName::Polygon => ShapeSampler::Polygon(polygon),
            ShapeName::Ellipsoid => ShapeSampler::Ellipsoid(ellipsoid),
        };
        if cfg.packing.phases.is_empty() {
            cfg.packing.phases.push(default_phase());
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<RunConfig> {
        let base = path.parent().unwrap_or(Path::new("."));
        RunConfig::parse(&read_text(path)?, path, base)
    }

    pub fn load_tileset(&self) -> Result<TileSet> {
        self.tileset.load()
    }

    pub fn grid(&self, dim: usize) -> Result<GridSpec> {
        GridSpec::new(dim, self.n)
    }

    /// Seed of the assembly step.
    pub fn assemble_seed(&self) -> u64 {
        self.assemble.seed.unwrap_or(self.packing.seed)
    }

    /// Checks every parameter against the tile set it will be used with.
    pub fn validate(&self, set: &TileSet) -> Result<()> {
        if let TileSetSource::File(p) = &self.tileset {
            if !p.exists() {
                return Err(Error::InvalidParameter(format!("tile set file {} does not exist", p.display())));
            }
        }
        self.grid(set.dim())?;
        self.packing.validate(set.dim())?;
        self.morph.validate()?;
        for (what, t) in [("assemble", self.assemble.tiles), ("stats", self.stats.tiles)] {
            if t.iter().any(|&v| v == 0) || (set.dim() == 2 && t[2] != 1) {
                return Err(Error::InvalidParameter(format!("[{what}] tiles {t:?} do not fit a {}D set", set.dim())));
            }
        }
        if self.stats.realizations == 0 || self.stats.tilings == 0 {
            return Err(Error::InvalidParameter("[stats] needs at least one realization and tiling".into()));
        }
        Ok(())
    }
}
