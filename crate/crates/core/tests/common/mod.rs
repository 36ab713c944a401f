//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use rand::Rng;
use wangtile::geometry::{Particle, Shape};
use wangtile::levelset::GridSpec;
use wangtile::packing::{PackingState, PlacedParticle, Provenance};
use wangtile::stats::GlobalImage;
use wangtile::tileset::{ConnectivityAnalysis, Entity, Side, TileSet, Tiling};

pub type Instance = (usize, u8, u8);

/// Classes of boundary-entity instances obtained by repeatedly copying a
/// particle that touches an entity across every face containing it, to
/// every tile carrying the matching code on the opposite face, until
/// nothing new is reached.
pub fn copy_fixpoint_classes(set: &TileSet) -> Vec<BTreeSet<Instance>> {
    let dim = set.dim();
    let mut seen: HashSet<Instance> = HashSet::new();
    let mut classes = Vec::new();
    for t in 0..set.len() {
        for e in Entity::all(dim) {
            let start = (t, e.fixed_mask(), e.sides_mask());
            if seen.contains(&start) {
                continue;
            }
            let mut class = BTreeSet::new();
            let mut frontier = vec![start];
            seen.insert(start);
            while let Some((tile, fixed, sides)) = frontier.pop() {
                class.insert((tile, fixed, sides));
                for axis in 0..dim {
                    if fixed & (1 << axis) == 0 {
                        continue;
                    }
                    let side = Side::from_bit(sides & (1 << axis) != 0);
                    let code = set.code(tile, axis, side);
                    for u in 0..set.len() {
                        if set.code(u, axis, side.flip()) == code {
                            let next = (u, fixed, sides ^ (1 << axis));
                            if seen.insert(next) {
                                frontier.push(next);
                            }
                        }
                    }
                }
            }
            classes.push(class);
        }
    }
    classes.sort();
    classes
}

pub fn analysis_classes(a: &ConnectivityAnalysis) -> Vec<BTreeSet<Instance>> {
    let mut v: Vec<BTreeSet<Instance>> = a
        .classes()
        .iter()
        .map(|c| {
            c.members()
                .iter()
                .map(|(t, e)| (*t, e.fixed_mask(), e.sides_mask()))
                .collect()
        })
        .collect();
    v.sort();
    v
}

/// Random duplicate-free set of up to `max_tiles` tiles.
pub fn random_set<R: Rng>(rng: &mut R, dim: usize, max_tiles: usize, max_codes: u32) -> TileSet {
    let counts = [0; 3].map(|_| rng.random_range(1..=max_codes));
    let target = rng.random_range(1..=max_tiles);
    let mut seen = HashSet::new();
    let mut codes = Vec::new();
    for _ in 0..target * 4 {
        let mut c = [[0u32; 2]; 3];
        for (axis, sides) in c.iter_mut().enumerate().take(dim) {
            for s in sides.iter_mut() {
                *s = rng.random_range(0..counts[axis]);
            }
        }
        if seen.insert(c) {
            codes.push(c);
        }
        if codes.len() == target {
            break;
        }
    }
    TileSet::new(dim, counts, codes).expect("distinct in-range codes")
}

/// Every surface occurrence affecting each tile: stored particles of the
/// tile and of every candidate neighbour, shifted by the neighbour offset,
/// each physical occurrence once.
pub fn occurrences(state: &PackingState<f64>) -> Vec<Vec<Particle<f64>>> {
    let grids = state.neighbor_grids();
    let mut out = vec![Vec::new(); state.set().len()];
    let mut by_tile: HashMap<usize, Vec<&PlacedParticle<f64>>> = HashMap::new();
    for p in state.particles() {
        by_tile.entry(p.tile).or_default().push(p);
    }
    for (u, g) in grids.iter().enumerate() {
        let mut seen: HashSet<(usize, [i32; 3])> = HashSet::new();
        for (offset, cands) in g.iter() {
            for v in cands {
                for p in by_tile.get(v).into_iter().flatten() {
                    let tau = match p.provenance {
                        Provenance::Original => [0; 3],
                        Provenance::Image { translation } => translation,
                    };
                    let key = (p.id, [0, 1, 2].map(|a| tau[a] + offset[a]));
                    if seen.insert(key) {
                        out[u].push(p.particle.translated(offset.map(f64::from)));
                    }
                }
            }
        }
    }
    out
}

/// LS1/LS2/LS3 recomputed by sorting exact distances at every node.
pub fn fields_from_scratch(grid: &GridSpec, occ: &[Particle<f64>], sentinel: f64) -> [Vec<f64>; 3] {
    let mut f = [vec![sentinel; grid.nodes()], vec![sentinel; grid.nodes()], vec![sentinel; grid.nodes()]];
    for i in 0..grid.nodes() {
        let x = grid.position::<f64>(grid.node(i));
        let mut d: Vec<f64> = occ.iter().map(|p| p.signed_distance(x)).collect();
        d.sort_by(f64::total_cmp);
        for k in 0..3 {
            if let Some(&v) = d.get(k) {
                f[k][i] = v;
            }
        }
    }
    f
}

/// Smallest surface gap among the distinct physical disks/spheres of a
/// rendered tiling (positions in tile widths).
pub fn min_sphere_gap(state: &PackingState<f64>, tiling: &Tiling) -> f64 {
    let dims = tiling.dims();
    let mut centres: Vec<([f64; 3], f64)> = Vec::new();
    let mut seen = HashSet::new();
    for z in 0..dims[2] {
        for y in 0..dims[1] {
            for x in 0..dims[0] {
                let t = tiling.get([x, y, z]);
                for p in state.particles().iter().filter(|p| p.tile == t) {
                    let Shape::Sphere { radius } = p.particle.shape else {
                        panic!("sphere packings only");
                    };
                    let c = p.particle.center;
                    let g = [c[0] + x as f64, c[1] + y as f64, c[2] + z as f64];
                    let key = g.map(|v| (v * 1e9).round() as i64);
                    if seen.insert(key) {
                        centres.push((g, radius));
                    }
                }
            }
        }
    }
    let mut best = f64::INFINITY;
    for i in 0..centres.len() {
        for j in i + 1..centres.len() {
            let (a, ra) = centres[i];
            let (b, rb) = centres[j];
            let d = ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt();
            best = best.min(d - ra - rb);
        }
    }
    best
}

/// Periodic two-point probability by direct summation.
pub fn s2_brute(img: &GlobalImage<bool>, phase: bool) -> Vec<f64> {
    let [nx, ny, nz] = img.dims();
    let m = nx * ny * nz;
    let mut out = vec![0.0; m];
    for lz in 0..nz {
        for ly in 0..ny {
            for lx in 0..nx {
                let mut count = 0usize;
                for z in 0..nz {
                    for y in 0..ny {
                        for x in 0..nx {
                            if img.get([x, y, z]) == phase
                                && img.get([(x + lx) % nx, (y + ly) % ny, (z + lz) % nz]) == phase
                            {
                                count += 1;
                            }
                        }
                    }
                }
                out[(lz * ny + ly) * nx + lx] = count as f64 / m as f64;
            }
        }
    }
    out
}

/// Boundary-node disagreements over all code-compatible tile pairs:
/// `(mismatches, compared nodes, smallest value involved in a mismatch)`.
pub fn boundary_mismatches<V: Copy + PartialEq>(
    set: &TileSet,
    grid: &GridSpec,
    field: impl Fn(usize) -> Vec<V>,
    value: impl Fn(V) -> f64,
) -> (usize, usize, f64) {
    let n = grid.n();
    let dim = grid.dim();
    let fields: Vec<Vec<V>> = (0..set.len()).map(field).collect();
    let (mut bad, mut total, mut lo) = (0, 0, f64::INFINITY);
    for axis in 0..dim {
        for t in 0..set.len() {
            for u in 0..set.len() {
                if set.code(t, axis, Side::High) != set.code(u, axis, Side::Low) {
                    continue;
                }
                for i in 0..grid.nodes() {
                    let node = grid.node(i);
                    if node[axis] != n - 1 {
                        continue;
                    }
                    let mut other = node;
                    other[axis] = 0;
                    let (a, b) = (fields[t][i], fields[u][grid.index(other)]);
                    total += 1;
                    if a != b {
                        bad += 1;
                        lo = lo.min(value(a).min(value(b)));
                    }
                }
            }
        }
    }
    (bad, total, lo)
}
