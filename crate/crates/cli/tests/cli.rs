use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use wangtile::io::{read_field_dump, write_field_dump, RunConfig};
use wangtile::pipeline::{
    run_assemble, run_morph, run_pack, write_morph, write_pack, write_render, PHASE_FILE, TILING_FILE,
};
use wangtile::render;

const RUN: &str = "\
tileset = v16
n = 41
seed = 3
shape = polygon
track_ls3 = true
[phase]
radius = 0.1
kappa = 0.01
rho = 0.05
stop = exhaustion
[morph]
mode = particles
[assemble]
tiles = 4 3
[stats]
realizations = 2
tilings = 2
tiles = 3 3
s2_max_lag = 10
";

fn wangtile(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wangtile")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_config(dir: &Path, text: &str) -> PathBuf {
    let p = dir.join("run.cfg");
    std::fs::write(&p, text).unwrap();
    p
}

fn run_steps(cfg: &Path, out: &Path, extra: &[&str], steps: &[&str]) {
    for step in steps {
        let mut args = vec![*step, "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()];
        args.extend_from_slice(extra);
        let o = wangtile(&args);
        assert!(o.status.success(), "{step}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    std::fs::read(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

const ARTIFACTS: [&str; 9] = [
    "tileset.txt",
    "particles.txt",
    "ls1.bin",
    "ls2.bin",
    "ls3.bin",
    "morph.bin",
    "phase.bin",
    "tiling.txt",
    "render.png",
];

#[test]
fn analyze_reports_classes() {
    let c = wangtile(&["analyze", "c16"]);
    assert!(c.status.success());
    let text = stdout(&c);
    assert!(text.contains("16 2D tiles"));
    assert!(text.contains("1 vertex class\n"));
    assert!(text.contains("stochastic: yes"));

    let v = stdout(&wangtile(&["analyze", "v16"]));
    assert!(v.contains("2 vertex classes"));

    let cubes = stdout(&wangtile(&["analyze", "cubes16"]));
    assert!(cubes.contains("16 3D tiles") && cubes.contains("cube-edge"));
}

#[test]
fn analyze_rejects_bad_and_non_stochastic_sets() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "dimension = 2\ncodes_x = 2\ncodes_y = 2\n0: 0 1 0\n").unwrap();
    assert_eq!(wangtile(&["analyze", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(wangtile(&["analyze", "/no/such/file"]).status.code(), Some(2));

    // nothing carries east code 1 on its west side
    let stuck = dir.path().join("stuck.txt");
    std::fs::write(&stuck, "dimension = 2\ncodes_x = 2\ncodes_y = 1\n0: 0 1 0 0\n1: 0 0 0 0\n").unwrap();
    let o = wangtile(&["analyze", stuck.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("stochastic: no"));
}

/// The command-line steps write exactly what the library pipeline writes.
#[test]
fn commands_match_library_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = write_config(dir.path(), RUN);
    let cli_out = dir.path().join("cli");
    run_steps(&cfg_path, &cli_out, &[], &["pack", "morph", "assemble", "render"]);

    let lib_out = dir.path().join("lib");
    let cfg = RunConfig::load(&cfg_path).unwrap();
    let set = cfg.load_tileset().unwrap();
    let state = run_pack(&cfg, &set).unwrap();
    write_pack(&lib_out, &state).unwrap();
    let (f, phases) = run_morph(&cfg, state.fields()).unwrap();
    let grid = *state.fields().grid();
    write_morph(&lib_out, &grid, &f, &phases).unwrap();
    let tiling = run_assemble(&cfg, &set).unwrap();
    wangtile::io::write_tiling(&lib_out.join(TILING_FILE), &tiling).unwrap();
    write_render(&lib_out, &render(&tiling, &grid, &phases).unwrap(), &grid).unwrap();

    for name in ARTIFACTS {
        assert_eq!(read(&cli_out, name), read(&lib_out, name), "{name}");
    }
}

#[test]
fn seeds_reproduce_and_differ() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), RUN);
    let steps = ["pack", "morph", "assemble", "render"];
    let (a, b, c) = (dir.path().join("a"), dir.path().join("b"), dir.path().join("c"));
    run_steps(&cfg, &a, &["--seed", "9"], &steps);
    run_steps(&cfg, &b, &["--seed", "9"], &steps);
    run_steps(&cfg, &c, &["--seed", "10"], &steps);
    for name in ARTIFACTS {
        assert_eq!(read(&a, name), read(&b, name), "{name}");
    }
    assert_ne!(read(&a, "particles.txt"), read(&c, "particles.txt"));
}

#[test]
fn open_foam_needs_ls3() {
    let dir = tempfile::tempdir().unwrap();
    let text = RUN.replace("track_ls3 = true", "track_ls3 = false").replace("mode = particles", "mode = open");
    let cfg = write_config(dir.path(), &text);
    let out = dir.path().join("out");
    run_steps(&cfg, &out, &[], &["pack"]);
    let o = wangtile(&["morph", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn corrupted_phase_is_a_continuity_violation() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), RUN);
    let out = dir.path().join("out");
    run_steps(&cfg, &out, &[], &["pack", "morph", "assemble"]);

    // flip the east boundary of every tile so no abutting pair agrees
    let path = out.join(PHASE_FILE);
    let mut dump = read_field_dump(&path).unwrap();
    let grid = dump.grid;
    for tile in dump.tiles.iter_mut() {
        for i in 0..grid.nodes() {
            if grid.node(i)[0] == grid.n() - 1 {
                tile[i] = 1.0 - tile[i];
            }
        }
    }
    write_field_dump(&path, &grid, "phase", &dump.tiles).unwrap();
    let o = wangtile(&["render", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn stats_writes_tables_and_rejects_empty_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), RUN);
    let out = dir.path().join("out");
    run_steps(&cfg, &out, &[], &["stats"]);
    let peaks = String::from_utf8(read(&out, "peaks.csv")).unwrap();
    assert!(peaks.starts_with("realization,seed,tiling,phi,max_normalized,lag_x,lag_y\n"));
    assert_eq!(peaks.lines().count(), 1 + 2 * 2);
    assert!(String::from_utf8(read(&out, "s2.csv")).unwrap().lines().count() > 1);

    let empty = write_config(dir.path(), &RUN.replace("realizations = 2", "realizations = 0"));
    let o = wangtile(&["stats", "--config", empty.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_config_keys_fail() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &format!("{RUN}\nbogus = 1\n"));
    let o = wangtile(&["pack", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("run.cfg"));
}
