//! The artificial field ~LS, the admissible mask and off-grid jitter.
//!
//! Inside a tile ~LS is LS1. Within the boundary strips (of width
//! `r + inset`, classified per axis with the same test the copy inducer
//! uses) ~LS is the node-wise minimum of LS1 over every tile whose strip
//! belongs to the same entity class with the same orientation: a particle
//! placed there is copied to all of those tiles, so it must fit in each.

use rand::Rng;

use super::inducer::reaches;
use super::{Anchor, GridSpec, NodeBox, TileFields};
use crate::scalar::Real;
use crate::tileset::{ConnectivityAnalysis, Entity, Side, ENTITY_SLOTS};

/// Boundary strips of a grid for a given `r` and inset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Regions {
    dim: usize,
    n: usize,
    low: [usize; 3],
    high: [usize; 3],
}

impl Regions {
    pub fn new<T: Real>(grid: &GridSpec, radius: T, inset: T) -> Regions {
        let n = grid.n();
        let low_count = (0..n)
            .take_while(|&i| reaches(grid.coord::<T>(i as i64), radius, inset, Side::Low))
            .count();
        let high_count = (0..n)
            .rev()
            .take_while(|&i| reaches(grid.coord::<T>(i as i64), radius, inset, Side::High))
            .count();
        let mut low = [0; 3];
        let mut high = [0; 3];
        for a in 0..grid.dim() {
            low[a] = low_count;
            high[a] = high_count;
        }
        Regions {
            dim: grid.dim(),
            n,
            low,
            high,
        }
    }

    fn axis_range(&self, a: usize, side: Option<Side>) -> (usize, usize) {
        if a >= self.dim {
            return (0, 1);
        }
        match side {
            Some(Side::Low) => (0, self.low[a]),
            Some(Side::High) => (self.n - self.high[a], self.n),
            None => (self.low[a], self.n - self.high[a]),
        }
    }

    /// Nodes classified as lying near `e` (and no further entity).
    pub fn entity_box(&self, e: Entity) -> NodeBox {
        let mut b = NodeBox { lo: [0; 3], hi: [1; 3] };
        for a in 0..3 {
            let (lo, hi) = self.axis_range(a, e.side(a));
            b.lo[a] = lo;
            b.hi[a] = hi;
        }
        b
    }

    pub fn interior_box(&self) -> NodeBox {
        let mut b = NodeBox { lo: [0; 3], hi: [1; 3] };
        for a in 0..3 {
            let (lo, hi) = self.axis_range(a, None);
            b.lo[a] = lo;
            b.hi[a] = hi;
        }
        b
    }

    pub fn entity_of(&self, node: [usize; 3]) -> Option<Entity> {
        let mut fixed = 0u8;
        let mut sides = 0u8;
        for a in 0..self.dim {
            if node[a] < self.low[a] {
                fixed |= 1 << a;
            } else if node[a] >= self.n - self.high[a] {
                fixed |= 1 << a;
                sides |= 1 << a;
            }
        }
        (fixed != 0).then(|| Entity::new(fixed, sides))
    }
}

/// Same-class, same-orientation strips: `(entity, tiles)`.
struct Groups {
    groups: Vec<(Entity, Vec<usize>)>,
    group_of: Vec<[u32; ENTITY_SLOTS]>,
}

impl Groups {
    fn new(analysis: &ConnectivityAnalysis, tiles: usize) -> Groups {
        let mut groups: Vec<(Entity, Vec<usize>)> = Vec::new();
        let mut group_of = vec![[u32::MAX; ENTITY_SLOTS]; tiles];
        for class in analysis.classes() {
            let mut entities: Vec<Entity> = class.members().iter().map(|m| m.1).collect();
            entities.sort();
            entities.dedup();
            for e in entities {
                let id = groups.len() as u32;
                let members: Vec<usize> = class
                    .members()
                    .iter()
                    .filter(|m| m.1 == e)
                    .map(|m| m.0)
                    .collect();
                for &t in &members {
                    group_of[t][e.slot()] = id;
                }
                groups.push((e, members));
            }
        }
        Groups { groups, group_of }
    }
}

fn apply_group<T: Real>(fields: &mut TileFields<T>, tiles: &[usize], region: &NodeBox) {
    let grid = *fields.grid();
    let mut mins = Vec::new();
    region.for_each(&grid, |i| {
        let m = tiles
            .iter()
            .map(|&t| fields.tiles[t].ls1[i])
            .fold(T::infinity(), T::min);
        mins.push(m);
    });
    for &t in tiles {
        let art = &mut fields.tiles[t].art;
        let mut k = 0;
        region.for_each(&grid, |i| {
            art[i] = mins[k];
            k += 1;
        });
    }
}

/// Rebuilds ~LS of every tile from LS1, with strips of width
/// `radius + inset`.
pub fn build_artificial_field<T: Real>(
    fields: &mut TileFields<T>,
    analysis: &ConnectivityAnalysis,
    radius: T,
    inset: T,
) {
    let grid = *fields.grid();
    let regions = Regions::new(&grid, radius, inset);
    for data in fields.tiles.iter_mut() {
        data.art.copy_from_slice(&data.ls1);
    }
    let groups = Groups::new(analysis, fields.len());
    for (e, tiles) in &groups.groups {
        let region = regions.entity_box(*e);
        if !region.is_empty() {
            apply_group(fields, tiles, &region);
        }
    }
}

/// Updates ~LS where LS1 changed (`dirty_ls1` per tile), with the same
/// result as [`build_artificial_field`]. Returns, per tile, the nodes whose
/// ~LS was rewritten.
pub fn refresh_artificial_field<T: Real>(
    fields: &mut TileFields<T>,
    analysis: &ConnectivityAnalysis,
    radius: T,
    inset: T,
    dirty_ls1: &[Option<NodeBox>],
) -> Vec<Option<NodeBox>> {
    let grid = *fields.grid();
    let regions = Regions::new(&grid, radius, inset);
    let groups = Groups::new(analysis, fields.len());
    let mut out = vec![None; fields.len()];
    let entities = Entity::all(grid.dim());
    for (t, dirty) in dirty_ls1.iter().enumerate() {
        let Some(dirty) = dirty else { continue };
        if let Some(b) = regions.interior_box().intersect(dirty) {
            let data = &mut fields.tiles[t];
            b.for_each(&grid, |i| data.art[i] = data.ls1[i]);
            NodeBox::merge(&mut out[t], Some(b));
        }
        for &e in &entities {
            let Some(b) = regions.entity_box(e).intersect(dirty) else {
                continue;
            };
            let g = groups.group_of[t][e.slot()] as usize;
            let tiles = &groups.groups[g].1;
            apply_group(fields, tiles, &b);
            for &u in tiles {
                NodeBox::merge(&mut out[u], Some(b));
            }
        }
    }
    out
}

/// Constraints of the admissible domain; `None` stands for an infinite
/// bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MaskParams<T> {
    pub radius: T,
    pub kappa: T,
    pub rho: Option<T>,
    pub sigma: Option<T>,
    pub inset: T,
    pub exclude_vertices: bool,
}

/// Nodes where a new particle centre may be sampled.
#[derive(Clone, Debug)]
pub struct AdmissibleMask<T> {
    params: MaskParams<T>,
    regions: Regions,
    cells: Vec<Vec<bool>>,
    counts: Vec<usize>,
    flags: Vec<(bool, bool)>,
}

/// Evaluates the mask from ~LS and LS2 (the fields must have their
/// artificial field built for the same radius and inset).
///
/// A node is admissible when `r + κ ≤ ~LS`, `~LS ≤ r + ρ` and
/// `LS2 ≤ r + σ`. The ρ and σ bounds are suspended on a tile until its LS1,
/// respectively LS2, holds any particle distance. With `exclude_vertices`
/// the vertex strips (nodes whose particle would induce vertex copies) are
/// masked off.
pub fn admissible_mask<T: Real>(fields: &TileFields<T>, params: MaskParams<T>) -> AdmissibleMask<T> {
    let grid = *fields.grid();
    let mut mask = AdmissibleMask {
        params,
        regions: Regions::new(&grid, params.radius, params.inset),
        cells: vec![vec![false; grid.nodes()]; fields.len()],
        counts: vec![0; fields.len()],
        flags: vec![(false, false); fields.len()],
    };
    for t in 0..fields.len() {
        mask.rebuild_tile(fields, t);
    }
    mask
}

impl<T: Real> AdmissibleMask<T> {
    pub fn params(&self) -> &MaskParams<T> {
        &self.params
    }

    fn node_ok(&self, fields: &TileFields<T>, t: usize, i: usize, flags: (bool, bool)) -> bool {
        let p = &self.params;
        let data = &fields.tiles[t];
        let art = data.art[i];
        if !(p.radius + p.kappa <= art) {
            return false;
        }
        if let Some(rho) = p.rho {
            if flags.0 && !(art <= p.radius + rho) {
                return false;
            }
        }
        if let Some(sigma) = p.sigma {
            if flags.1 && !(data.ls2[i] <= p.radius + sigma) {
                return false;
            }
        }
        if p.exclude_vertices {
            let grid = fields.grid();
            if self
                .regions
                .entity_of(grid.node(i))
                .is_some_and(|e| e.is_vertex(grid.dim()))
            {
                return false;
            }
        }
        true
    }

    fn rebuild_tile(&mut self, fields: &TileFields<T>, t: usize) {
        let grid = *fields.grid();
        let flags = fields.is_populated(t);
        self.flags[t] = flags;
        let cells: Vec<bool> = (0..grid.nodes()).map(|i| self.node_ok(fields, t, i, flags)).collect();
        self.counts[t] = cells.iter().filter(|&&c| c).count();
        self.cells[t] = cells;
    }

    /// Re-evaluates the nodes in `dirty` (per tile), and whole tiles whose
    /// population flags changed. Matches a full rebuild exactly.
    pub fn refresh(&mut self, fields: &TileFields<T>, dirty: &[Option<NodeBox>]) {
        let grid = *fields.grid();
        for t in 0..fields.len() {
            if fields.is_populated(t) != self.flags[t] {
                self.rebuild_tile(fields, t);
                continue;
            }
            let Some(b) = dirty.get(t).copied().flatten() else {
                continue;
            };
            let flags = self.flags[t];
            let mut cells = std::mem::take(&mut self.cells[t]);
            let mut count = self.counts[t];
            b.for_each(&grid, |i| {
                let ok = self.node_ok(fields, t, i, flags);
                if ok != cells[i] {
                    if ok {
                        count += 1;
                    } else {
                        count -= 1;
                    }
                    cells[i] = ok;
                }
            });
            self.cells[t] = cells;
            self.counts[t] = count;
        }
    }

    pub fn tile(&self, t: usize) -> &[bool] {
        &self.cells[t]
    }

    pub fn get(&self, t: usize, index: usize) -> bool {
        self.cells[t][index]
    }

    pub fn count(&self, t: usize) -> usize {
        self.counts[t]
    }

    /// Admissible nodes over all tiles.
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// The `k`-th admissible `(tile, node index)`, tiles in order and nodes
    /// in flat order.
    pub fn nth(&self, mut k: usize) -> Option<(usize, usize)> {
        for (t, &c) in self.counts.iter().enumerate() {
            if k < c {
                let i = self.cells[t]
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| v)
                    .nth(k)
                    .map(|(i, _)| i)?;
                return Some((t, i));
            }
            k -= c;
        }
        None
    }
}

/// Moves a sampled node off the grid: among the quadrants (octants) around
/// the node whose corner nodes all lie in the tile and are admissible, one
/// is chosen uniformly and the centre is drawn uniformly inside it. Without
/// such a quadrant, or when `h > r / 5`, the node itself is returned.
pub fn jitter_center<T: Real, R: Rng + ?Sized>(
    mask: &AdmissibleMask<T>,
    grid: &GridSpec,
    tile: usize,
    node: [usize; 3],
    rng: &mut R,
    radius: T,
) -> Anchor<T> {
    let base = Anchor::at_node(node);
    if grid.h::<T>() > radius / T::lit(5.0) {
        return base;
    }
    let dim = grid.dim();
    let n = grid.n() as i64;
    let cells = mask.tile(tile);
    let candidates: Vec<u8> = (0u8..(1 << dim))
        .filter(|&dirs| {
            (0u8..(1 << dim)).all(|corner| {
                let mut p = [0usize; 3];
                for a in 0..3 {
                    let mut v = node[a] as i64;
                    if a < dim && corner & (1 << a) != 0 {
                        v += if dirs & (1 << a) != 0 { 1 } else { -1 };
                    }
                    if v < 0 || v >= n {
                        return false;
                    }
                    p[a] = v as usize;
                }
                cells[grid.index(p)]
            })
        })
        .collect();
    if candidates.is_empty() {
        return base;
    }
    let dirs = candidates[rng.random_range(0..candidates.len())];
    let mut anchor = base;
    for a in 0..dim {
        let u: f64 = rng.random();
        if dirs & (1 << a) != 0 {
            anchor.f[a] = T::lit(u);
        } else {
            anchor.m[a] -= 1;
            anchor.f[a] = T::lit(1.0 - u);
        }
    }
    anchor
}
