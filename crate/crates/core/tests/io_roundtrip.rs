mod common;

use std::path::Path;

use common::random_set;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wangtile::io::{
    decode_field_dump, encode_field_dump, format_particles, format_tileset, format_tiling, parse_particles,
    parse_tileset, parse_tiling, phase_png, RunConfig,
};
use wangtile::levelset::GridSpec;
use wangtile::packing::{PackingParams, Phase, StopCriterion};
use wangtile::stats::GlobalImage;
use wangtile::{assemble, pack, EllipsoidParams, ShapeSampler, TileSet};

fn configs_dir() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn phase(radius: f64) -> Phase<f64> {
    Phase {
        radius,
        kappa: 0.01,
        rho: None,
        sigma: None,
        stop: StopCriterion::MaxSteps(15),
    }
}

#[test]
fn particle_lists_round_trip_exactly() {
    let cases = [
        (TileSet::v16(), 41, ShapeSampler::Polygon(Default::default())),
        (TileSet::c16(), 41, ShapeSampler::Sphere),
        (TileSet::cubes16(), 13, ShapeSampler::Ellipsoid(EllipsoidParams::default())),
    ];
    for (set, n, shape) in cases {
        let grid = GridSpec::new(set.dim(), n).unwrap();
        let mut p = PackingParams::new(phase(0.12));
        p.shape = shape;
        p.seed = 5;
        let state = pack(&set, grid, &p).unwrap();
        let text = format_particles(&grid, state.particles());
        let (g, back) = parse_particles::<f64>(&text, Path::new("mem")).unwrap();
        assert_eq!(g, grid);
        assert_eq!(back, state.particles());
        assert_eq!(format_particles(&g, &back), text);
    }
}

#[test]
fn particle_list_errors_are_parse_errors() {
    let bad = [
        "",
        "particles dim=2 n=41 count=1\n",
        "particles dim=2 n=41 count=1\n0 sphere 0.1 0.2 0.1 0.1 original 0 @ 3 4\n",
        "particles dim=2 n=41 count=1\n0 blob 0.1 0.2 0.1 0.1 original 0 @ 3 4 0 0\n",
        "particles dim=2 n=41 count=1\n0 sphere 0.1 0.2 0.1 0.1 original 0 @ 3 4 0 0 9\n",
    ];
    for text in bad {
        let err = parse_particles::<f64>(text, Path::new("p.txt")).unwrap_err();
        assert_eq!(err.exit_code(), 2, "{text:?}");
    }
}

#[test]
fn field_dumps_round_trip() {
    let grid = GridSpec::new(3, 5).unwrap();
    let tiles: Vec<Vec<f64>> = (0..3)
        .map(|t| (0..grid.nodes()).map(|i| (i as f64 * 0.37 + t as f64).sin() / 3.0).collect())
        .collect();
    let bytes = encode_field_dump(&grid, "ls2", &tiles).unwrap();
    let d = decode_field_dump(&bytes, Path::new("mem")).unwrap();
    assert_eq!(d.grid, grid);
    assert_eq!(d.field, "ls2");
    assert_eq!(d.tiles, tiles);
    assert!(decode_field_dump(&bytes[..bytes.len() - 1], Path::new("mem")).is_err());
}

#[test]
fn shipped_configs_load_and_validate() {
    let mut seen = 0;
    for entry in std::fs::read_dir(configs_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "cfg") {
            let cfg = RunConfig::load(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            let set = cfg.load_tileset().unwrap();
            cfg.validate(&set).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            seen += 1;
        }
    }
    assert!(seen >= 4);
}

#[test]
fn png_is_black_on_solid_with_top_row_first() {
    let data = vec![true, false, false, false, false, true];
    let img = GlobalImage::new([3, 2, 1], 1, data).unwrap();
    let png = phase_png(&img).unwrap();
    assert_eq!(png.dimensions(), (3, 2));
    assert_eq!(png.get_pixel(2, 0).0, [0]);
    assert_eq!(png.get_pixel(0, 1).0, [0]);
    assert_eq!(png.get_pixel(0, 0).0, [255]);
}

proptest! {
    #[test]
    fn tile_sets_round_trip(seed in any::<u64>(), dim in 2usize..=3) {
        let set = random_set(&mut ChaCha8Rng::seed_from_u64(seed), dim, 20, 4);
        let back = parse_tileset(&format_tileset(&set), Path::new("mem")).unwrap();
        prop_assert_eq!(back, set);
    }

    #[test]
    fn tilings_round_trip(seed in any::<u64>(), nx in 1usize..9, ny in 1usize..9, nz in 1usize..3) {
        let set = if nz > 1 { TileSet::cubes16() } else { TileSet::c16() };
        let t = assemble(&set, [nx, ny, nz], seed).unwrap();
        prop_assert_eq!(parse_tiling(&format_tiling(&t), Path::new("mem")).unwrap(), t);
    }
}
