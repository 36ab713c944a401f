use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use wangtile::io::{read_tileset, read_tiling, write_peak_csv, write_s2_csv, write_tiling, RunConfig};
use wangtile::packing::PhaseEnd;
use wangtile::pipeline::{
    ensure_dir, load_fields, load_phases, run_assemble, run_morph, run_pack, run_stats, write_morph, write_pack,
    write_render, PEAKS_FILE, S2_FILE, TILESET_FILE, TILING_FILE,
};
use wangtile::{analyze_codes, render, validate_stochastic, Error, Result, TileSet};

/// Wang tile microstructures: analyse, pack, morph, assemble, render and
/// characterise.
#[derive(Parser)]
#[command(name = "wangtile", version)]
struct Cli {
    /// Run configuration (`key = value` file).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides the configured seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory (overrides `out` in the configuration).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print code connectivity classes and the stochasticity check.
    Analyze {
        /// Built-in set name or tile-set file; defaults to the configured set.
        set: Option<String>,
    },
    /// Pack particles; writes the particle list and LS field dumps.
    Pack,
    /// Morph packed fields; writes morph.bin and phase.bin.
    Morph,
    /// Assemble a stochastic tiling; writes tiling.txt.
    Assemble,
    /// Render the phase of tiling.txt to render.png (2D) or render.vtk (3D).
    Render,
    /// Two-point probability and secondary peaks over many realizations.
    Stats,
}

fn load_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.packing.seed = seed;
    }
    if let Some(out) = &cli.out {
        cfg.out = out.clone();
    }
    Ok(cfg)
}

fn set_from_arg(arg: &str) -> Result<TileSet> {
    match wangtile::io::builtin_set(arg) {
        Some(set) => Ok(set),
        None => read_tileset(Path::new(arg)),
    }
}

/// The set saved by `pack` in the output directory, else the configured one.
fn working_set(cfg: &RunConfig) -> Result<TileSet> {
    let saved = cfg.out.join(TILESET_FILE);
    if saved.exists() {
        return read_tileset(&saved);
    }
    cfg.load_tileset()
}

fn analyze(cfg: &RunConfig, set_arg: Option<&str>) -> Result<()> {
    let set = match set_arg {
        Some(a) => set_from_arg(a)?,
        None => cfg.load_tileset()?,
    };
    let analysis = analyze_codes(&set);
    println!("{} {}D tiles", set.len(), set.dim());
    let plural = |k: usize, what: &str| format!("{k} {what} class{}", if k == 1 { "" } else { "es" });
    println!("{}", plural(analysis.vertex_classes().len(), "vertex"));
    if set.dim() == 2 {
        println!("{}", plural(analysis.face_classes().len(), "edge"));
    } else {
        println!("{}", plural(analysis.edge_classes().len(), "cube-edge"));
        println!("{}", plural(analysis.face_classes().len(), "face"));
    }
    let report = validate_stochastic(&set);
    println!(
        "{} constraint combinations, {} without a tile, {} with a single tile",
        report.combinations.len(),
        report.deficient_combinations.len(),
        report.warnings.len()
    );
    for c in &report.deficient_combinations {
        println!("  no tile for low-side codes {:?}", c.codes);
    }
    if report.is_stochastic {
        println!("stochastic: yes");
        Ok(())
    } else {
        println!("stochastic: no");
        Err(Error::InvalidTileSet("set cannot tile the plane stochastically".into()))
    }
}

fn pack(cfg: &RunConfig) -> Result<()> {
    let set = cfg.load_tileset()?;
    let state = run_pack(cfg, &set)?;
    write_pack(&cfg.out, &state)?;
    let status = match state.phase_stats().last().and_then(|s| s.ended) {
        Some(PhaseEnd::Exhausted) => "exhausted",
        _ => "criterion reached",
    };
    println!(
        "placed {} particles ({} stored with images), volume fraction {:.4}",
        state.original_count(),
        state.particles().len(),
        state.fields().volume_fraction()
    );
    println!("status: {status}");
    Ok(())
}

fn morph(cfg: &RunConfig) -> Result<()> {
    cfg.morph.validate()?;
    let fields = load_fields(&cfg.out)?;
    let (f, phases) = run_morph(cfg, &fields)?;
    write_morph(&cfg.out, fields.grid(), &f, &phases)?;
    let solid: usize = phases.iter().map(|p| p.iter().filter(|&&s| s).count()).sum();
    let total: usize = phases.iter().map(Vec::len).sum();
    println!("solid fraction {:.4}", solid as f64 / total as f64);
    Ok(())
}

fn assemble_cmd(cfg: &RunConfig) -> Result<()> {
    let set = working_set(cfg)?;
    cfg.validate(&set)?;
    let tiling = run_assemble(cfg, &set)?;
    ensure_dir(&cfg.out)?;
    write_tiling(&cfg.out.join(TILING_FILE), &tiling)?;
    println!("tiling {:?} written", tiling.dims());
    Ok(())
}

fn render_cmd(cfg: &RunConfig) -> Result<()> {
    let tiling = read_tiling(&cfg.out.join(TILING_FILE))?;
    let (grid, phases) = load_phases(&cfg.out)?;
    if let Some(&bad) = tiling.cells().iter().find(|&&c| c >= phases.len()) {
        return Err(Error::InvalidParameter(format!("tiling uses tile {bad}, phase has {} tiles", phases.len())));
    }
    let image = render(&tiling, &grid, &phases)?;
    let path = write_render(&cfg.out, &image, &grid)?;
    println!("{} ({:?} nodes)", path.display(), image.dims());
    Ok(())
}

fn stats(cfg: &RunConfig) -> Result<()> {
    let set = cfg.load_tileset()?;
    let run = run_stats(cfg, &set)?;
    ensure_dir(&cfg.out)?;
    write_peak_csv(&cfg.out.join(PEAKS_FILE), set.dim(), &run.rows)?;
    if let Some(s2) = &run.first_s2 {
        write_s2_csv(&cfg.out.join(S2_FILE), s2, cfg.stats.s2_max_lag)?;
    }
    let mut values: Vec<f64> = run.rows.iter().map(|r| r.max_normalized).filter(|v| !v.is_nan()).collect();
    values.sort_by(f64::total_cmp);
    if let Some(median) = values.get(values.len() / 2) {
        println!("{} rows, median maximal normalised secondary peak {median:.4}", run.rows.len());
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    }
    let cfg = load_config(cli)?;
    match &cli.command {
        Command::Analyze { set } => analyze(&cfg, set.as_deref()),
        Command::Pack => pack(&cfg),
        Command::Morph => morph(&cfg),
        Command::Assemble => assemble_cmd(&cfg),
        Command::Render => render_cmd(&cfg),
        Command::Stats => stats(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
