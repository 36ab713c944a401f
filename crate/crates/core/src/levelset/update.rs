//! Insertion of one particle (with all its images) into the fields.
//!
//! Each tile sees every occurrence of the particle in the tiles that may
//! neighbour it, shifted by the neighbour-grid offset. Occurrences landing
//! at the same place are applied once. Nodes are visited block by block;
//! a block, and then a node, is skipped when the circumscribed-sphere lower
//! bound on the distance cannot beat the deepest tracked field there.

use std::collections::HashSet;

use rayon::prelude::*;

use super::{block_shape, Anchor, GridSpec, NodeBox, TileData, TileFields, BLOCK};
use crate::geometry::Shape;
use crate::scalar::Real;
use crate::tileset::NeighborGrid;

/// Records which `(tile, placement)` pairs already received the current
/// particle; the placement is the translation of the occurrence in the
/// tile's frame, in tile widths.
#[derive(Clone, Debug, Default)]
pub struct BookKeeping {
    seen: HashSet<(usize, [i32; 3])>,
    rejected: usize,
}

impl BookKeeping {
    pub fn new() -> BookKeeping {
        BookKeeping::default()
    }

    /// Returns false (and counts the rejection) for a repeated pair.
    pub fn insert(&mut self, tile: usize, placement: [i32; 3]) -> bool {
        let fresh = self.seen.insert((tile, placement));
        if !fresh {
            self.rejected += 1;
        }
        fresh
    }

    pub fn len(&self) -> usize {
        self.seen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seen.is_empty()
    }

    pub fn rejected(&self) -> usize {
        self.rejected
    }
}

/// Particle distances precomputed on the node offsets `[-w, w]^d` around
/// the anchor node, shared by all occurrences of the particle.
#[derive(Clone, Debug)]
pub struct Patch<T> {
    half: i64,
    dim: usize,
    values: Vec<T>,
}

impl<T: Real> Patch<T> {
    pub fn new(grid: &GridSpec, shape: &Shape<T>, anchor: &Anchor<T>, half_width: usize) -> Patch<T> {
        let half = half_width as i64;
        let side = 2 * half + 1;
        let dim = grid.dim();
        let zs = if dim == 3 { -half..=half } else { 0..=0 };
        let local = Anchor { m: [0; 3], f: anchor.f };
        let mut values = Vec::with_capacity(side.pow(dim as u32) as usize);
        for k2 in zs {
            for k1 in -half..=half {
                for k0 in -half..=half {
                    values.push(shape.signed_distance(local.relative(grid, [k0, k1, k2])));
                }
            }
        }
        Patch { half, dim, values }
    }

    /// Precomputed distance at node offset `k` from the anchor node.
    #[inline]
    pub fn get(&self, k: [i64; 3]) -> Option<T> {
        let side = 2 * self.half + 1;
        let mut index = 0;
        for a in (0..self.dim).rev() {
            if k[a].abs() > self.half {
                return None;
            }
            index = index * side + (k[a] + self.half);
        }
        Some(self.values[index as usize])
    }

    pub fn half_width(&self) -> usize {
        self.half as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UpdateOptions {
    pub use_patch: bool,
    /// Patch half-width in nodes.
    pub patch_half_width: usize,
    pub prescreen: bool,
}

impl Default for UpdateOptions {
    fn default() -> Self {
        UpdateOptions {
            use_patch: true,
            patch_half_width: 0,
            prescreen: true,
        }
    }
}

/// What one insertion did.
#[derive(Clone, Debug, Default)]
pub struct UpdateReport {
    /// Distinct `(tile, placement)` occurrences applied.
    pub applications: usize,
    /// Occurrences reached again through another path and skipped.
    pub duplicates: usize,
    /// Exact distance evaluations (patch lookups included).
    pub evaluations: usize,
    /// Per tile, nodes whose LS1 changed.
    pub dirty_ls1: Vec<Option<NodeBox>>,
    /// Per tile, nodes whose LS1 or LS2 changed.
    pub dirty_ls12: Vec<Option<NodeBox>>,
}

/// Slack on the circumscribed-sphere bound covering rounding in the
/// distance evaluation, so that skipping never changes a result.
fn screen_margin<T: Real>() -> T {
    T::epsilon() * T::lit(256.0)
}

/// Inserts a particle placed at `anchor` in `source_tile`, plus its
/// `images` from [`super::propagate_copies`], into every tile's fields.
#[allow(clippy::too_many_arguments)]
pub fn update_with_particle<T: Real>(
    fields: &mut TileFields<T>,
    grids: &[NeighborGrid],
    shape: &Shape<T>,
    radius: T,
    anchor: &Anchor<T>,
    source_tile: usize,
    images: &[(usize, [i32; 3])],
    book: &mut BookKeeping,
    options: &UpdateOptions,
) -> UpdateReport {
    let grid = *fields.grid();
    let ntiles = fields.len();

    // where each tile appears in the neighbourhoods of the others
    let mut seen_from: Vec<Vec<(usize, [i32; 3])>> = vec![Vec::new(); ntiles];
    for g in grids {
        for (offset, cands) in g.iter() {
            for &v in cands {
                seen_from[v].push((g.tile(), offset));
            }
        }
    }

    let mut per_tile: Vec<Vec<[i32; 3]>> = vec![Vec::new(); ntiles];
    let occurrences = std::iter::once((source_tile, [0; 3])).chain(images.iter().copied());
    let before = book.rejected();
    for (v, tau) in occurrences {
        for &(u, o) in &seen_from[v] {
            let placement = [tau[0] + o[0], tau[1] + o[1], tau[2] + o[2]];
            if book.insert(u, placement) {
                per_tile[u].push(placement);
            }
        }
    }

    let patch = options
        .use_patch
        .then(|| Patch::new(&grid, shape, anchor, options.patch_half_width));

    let results: Vec<(usize, Option<NodeBox>, Option<NodeBox>)> = fields
        .tiles
        .par_iter_mut()
        .zip(per_tile.par_iter())
        .map(|(data, placements)| {
            let mut evaluations = 0;
            let mut d1 = None;
            let mut d12 = None;
            for &p in placements {
                let occ = anchor.translated(&grid, p);
                evaluations += apply_occurrence(
                    &grid,
                    data,
                    shape,
                    radius,
                    &occ,
                    patch.as_ref(),
                    options.prescreen,
                    &mut d1,
                    &mut d12,
                );
            }
            if d1.is_some() {
                data.ls1_finite = true;
            }
            if d12.is_some() && data.ls2.iter().any(|&v| v < grid.sentinel::<T>()) {
                data.ls2_finite = true;
            }
            (evaluations, d1, d12)
        })
        .collect();

    let mut report = UpdateReport {
        applications: per_tile.iter().map(Vec::len).sum(),
        duplicates: book.rejected() - before,
        ..Default::default()
    };
    for (e, d1, d12) in results {
        report.evaluations += e;
        report.dirty_ls1.push(d1);
        report.dirty_ls12.push(d12);
    }
    report
}

#[allow(clippy::too_many_arguments)]
fn apply_occurrence<T: Real>(
    grid: &GridSpec,
    data: &mut TileData<T>,
    shape: &Shape<T>,
    radius: T,
    occ: &Anchor<T>,
    patch: Option<&Patch<T>>,
    prescreen: bool,
    dirty1: &mut Option<NodeBox>,
    dirty12: &mut Option<NodeBox>,
) -> usize {
    let h = grid.h::<T>();
    let margin = screen_margin::<T>();
    let shape3 = grid.shape();
    let blocks = block_shape(grid);
    let dim = grid.dim();
    let centre_nodes = [0, 1, 2].map(|a| T::from_int(occ.m[a]) + occ.f[a]);
    let mut evaluations = 0;

    for bz in 0..blocks[2] {
        for by in 0..blocks[1] {
            for bx in 0..blocks[0] {
                let b = [bx, by, bz];
                let bi = (bz * blocks[1] + by) * blocks[0] + bx;
                let lo = b.map(|v| v * BLOCK);
                let hi = [0, 1, 2].map(|a| ((b[a] + 1) * BLOCK).min(shape3[a]));
                if prescreen {
                    let mut gap2 = T::zero();
                    for a in 0..dim {
                        let l = T::from_int(lo[a] as i64);
                        let u = T::from_int(hi[a] as i64 - 1);
                        let g = (l - centre_nodes[a]).max(centre_nodes[a] - u).max(T::zero());
                        gap2 = gap2 + g * g;
                    }
                    if gap2.sqrt() * h - radius - margin >= data.block_max[bi] {
                        continue;
                    }
                }
                let mut touched = false;
                for z in lo[2]..hi[2] {
                    for y in lo[1]..hi[1] {
                        let row = grid.index([0, y, z]);
                        for x in lo[0]..hi[0] {
                            let idx = row + x;
                            let node = [x as i64, y as i64, z as i64];
                            let rel = occ.relative(grid, node);
                            if prescreen {
                                let deep = data.ls3.as_ref().map_or(data.ls2[idx], |v| v[idx]);
                                let dist = (rel[0] * rel[0] + rel[1] * rel[1] + rel[2] * rel[2]).sqrt();
                                if dist - radius - margin >= deep {
                                    continue;
                                }
                            }
                            evaluations += 1;
                            let k = [0, 1, 2].map(|a| node[a] - occ.m[a]);
                            let d = match patch.and_then(|p| p.get(k)) {
                                Some(v) => v,
                                None => shape.signed_distance(rel),
                            };
                            let changed = cascade(data, idx, d);
                            if changed > 0 {
                                touched = true;
                                let n = [x, y, z];
                                NodeBox::include(dirty12, n);
                                if changed == 1 {
                                    NodeBox::include(dirty1, n);
                                }
                            }
                        }
                    }
                }
                if touched {
                    data.block_max[bi] = block_max_of(grid, data.deep(), lo, hi);
                }
            }
        }
    }
    evaluations
}

/// Inserts `d` into the sorted triple at `idx`. Returns 1 when LS1 changed,
/// 2 when only LS2 changed, 3 when only LS3 changed and 0 otherwise.
#[inline]
fn cascade<T: Real>(data: &mut TileData<T>, idx: usize, d: T) -> u8 {
    let l1 = data.ls1[idx];
    let l2 = data.ls2[idx];
    if d < l1 {
        if let Some(l3) = data.ls3.as_mut() {
            l3[idx] = l2;
        }
        data.ls2[idx] = l1;
        data.ls1[idx] = d;
        1
    } else if d < l2 {
        if let Some(l3) = data.ls3.as_mut() {
            l3[idx] = l2;
        }
        data.ls2[idx] = d;
        2
    } else if let Some(l3) = data.ls3.as_mut() {
        if d < l3[idx] {
            l3[idx] = d;
            3
        } else {
            0
        }
    } else {
        0
    }
}

fn block_max_of<T: Real>(grid: &GridSpec, deep: &[T], lo: [usize; 3], hi: [usize; 3]) -> T {
    let mut m = T::neg_infinity();
    NodeBox { lo, hi }.for_each(grid, |i| m = m.max(deep[i]));
    m
}

pub(crate) fn recompute_all_block_max<T: Real>(grid: &GridSpec, data: &mut TileData<T>) {
    let blocks = block_shape(grid);
    let shape3 = grid.shape();
    for bz in 0..blocks[2] {
        for by in 0..blocks[1] {
            for bx in 0..blocks[0] {
                let b = [bx, by, bz];
                let lo = b.map(|v| v * BLOCK);
                let hi = [0, 1, 2].map(|a| ((b[a] + 1) * BLOCK).min(shape3[a]));
                let bi = (bz * blocks[1] + by) * blocks[0] + bx;
                data.block_max[bi] = block_max_of(grid, data.deep(), lo, hi);
            }
        }
    }
}
