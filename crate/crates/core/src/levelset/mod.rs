//! Per-tile distance fields on a regular grid: the nearest, second and
//! third nearest particle-surface distances, their update under particle
//! insertion, the artificial boundary field and the admissible mask.

mod artificial;
mod inducer;
mod update;

pub use artificial::{
    admissible_mask, build_artificial_field, jitter_center, refresh_artificial_field, AdmissibleMask,
    MaskParams, Regions,
};
pub use inducer::{find_copy_inducer, propagate_copies, CopyInducer, InducerKind};
pub use update::{update_with_particle, BookKeeping, Patch, UpdateOptions, UpdateReport};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Grid over the tile domain `[-0.5, 0.5]^d` with `n` nodes per axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridSpec {
    dim: usize,
    n: usize,
}

impl GridSpec {
    /// `n` must be odd (so the tile centre is a node) and at least 3.
    pub fn new(dim: usize, n: usize) -> Result<GridSpec> {
        if dim != 2 && dim != 3 {
            return Err(Error::InvalidParameter(format!("grid dimension {dim} is not 2 or 3")));
        }
        if n < 3 || n % 2 == 0 {
            return Err(Error::InvalidParameter(format!(
                "grid needs an odd number of nodes per axis (at least 3), got {n}"
            )));
        }
        Ok(GridSpec { dim, n })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h<T: Real>(&self) -> T {
        T::one() / T::from_int(self.n as i64 - 1)
    }

    /// Node counts per axis, `[n, n, 1]` in 2D.
    pub fn shape(&self) -> [usize; 3] {
        [self.n, self.n, if self.dim == 3 { self.n } else { 1 }]
    }

    pub fn nodes(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    /// Flat index, x fastest.
    #[inline]
    pub fn index(&self, node: [usize; 3]) -> usize {
        (node[2] * self.n + node[1]) * self.n + node[0]
    }

    #[inline]
    pub fn node(&self, index: usize) -> [usize; 3] {
        [index % self.n, (index / self.n) % self.n, index / (self.n * self.n)]
    }

    /// Coordinate of node `i` along any axis (may lie outside the tile).
    #[inline]
    pub fn coord<T: Real>(&self, i: i64) -> T {
        T::lit(-0.5) + T::from_int(i) * self.h::<T>()
    }

    pub fn position<T: Real>(&self, node: [usize; 3]) -> [T; 3] {
        let mut p = [T::zero(); 3];
        for a in 0..self.dim {
            p[a] = self.coord(node[a] as i64);
        }
        p
    }

    /// Value of untouched fields: ten tile diagonals.
    pub fn sentinel<T: Real>(&self) -> T {
        T::lit(10.0 * (self.dim as f64).sqrt())
    }
}

/// Particle centre tied to the grid: `-0.5 + (m + f) h` per axis with an
/// integer node `m` and a fraction `f` in `[0, 1]`.
///
/// Distances are always evaluated from `(i - m) - f`, with the integer part
/// formed exactly. An image translated by whole tiles only shifts `m` by
/// multiples of `n - 1`, so every image yields bit-identical values at
/// corresponding nodes, which keeps shared boundary nodes consistent.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Anchor<T> {
    pub m: [i64; 3],
    pub f: [T; 3],
}

impl<T: Real> Anchor<T> {
    pub fn at_node(node: [usize; 3]) -> Anchor<T> {
        Anchor {
            m: node.map(|v| v as i64),
            f: [T::zero(); 3],
        }
    }

    /// Anchor nearest to a continuous tile-local position.
    pub fn from_position(grid: &GridSpec, p: [T; 3]) -> Anchor<T> {
        let h = grid.h::<T>();
        let mut anchor = Anchor::at_node([0; 3]);
        for a in 0..grid.dim() {
            let u = (p[a] + T::lit(0.5)) / h;
            let m = u.floor();
            anchor.m[a] = m.to_i64().unwrap_or(0);
            anchor.f[a] = u - m;
        }
        anchor
    }

    pub fn center(&self, grid: &GridSpec) -> [T; 3] {
        let h = grid.h::<T>();
        let mut c = [T::zero(); 3];
        for a in 0..grid.dim() {
            c[a] = T::lit(-0.5) + (T::from_int(self.m[a]) + self.f[a]) * h;
        }
        c
    }

    /// The same anchor shifted by whole tiles.
    pub fn translated(&self, grid: &GridSpec, tiles: [i32; 3]) -> Anchor<T> {
        let span = grid.n() as i64 - 1;
        let mut m = self.m;
        for a in 0..grid.dim() {
            m[a] += tiles[a] as i64 * span;
        }
        Anchor { m, f: self.f }
    }

    /// Vector from the centre to node `i`.
    #[inline]
    pub fn relative(&self, grid: &GridSpec, i: [i64; 3]) -> [T; 3] {
        let h = grid.h::<T>();
        let mut r = [T::zero(); 3];
        for a in 0..grid.dim() {
            r[a] = (T::from_int(i[a] - self.m[a]) - self.f[a]) * h;
        }
        r
    }
}

/// Node box `lo..hi` (exclusive) in grid indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodeBox {
    pub lo: [usize; 3],
    pub hi: [usize; 3],
}

impl NodeBox {
    pub fn full(grid: &GridSpec) -> NodeBox {
        NodeBox {
            lo: [0; 3],
            hi: grid.shape(),
        }
    }

    pub fn point(node: [usize; 3]) -> NodeBox {
        NodeBox {
            lo: node,
            hi: node.map(|v| v + 1),
        }
    }

    pub fn is_empty(&self) -> bool {
        (0..3).any(|a| self.lo[a] >= self.hi[a])
    }

    pub fn union(&self, other: &NodeBox) -> NodeBox {
        NodeBox {
            lo: [0, 1, 2].map(|a| self.lo[a].min(other.lo[a])),
            hi: [0, 1, 2].map(|a| self.hi[a].max(other.hi[a])),
        }
    }

    pub fn intersect(&self, other: &NodeBox) -> Option<NodeBox> {
        let b = NodeBox {
            lo: [0, 1, 2].map(|a| self.lo[a].max(other.lo[a])),
            hi: [0, 1, 2].map(|a| self.hi[a].min(other.hi[a])),
        };
        (!b.is_empty()).then_some(b)
    }

    pub fn include(this: &mut Option<NodeBox>, node: [usize; 3]) {
        let p = NodeBox::point(node);
        *this = Some(match this {
            Some(b) => b.union(&p),
            None => p,
        });
    }

    pub fn merge(this: &mut Option<NodeBox>, other: Option<NodeBox>) {
        if let Some(o) = other {
            *this = Some(match this {
                Some(b) => b.union(&o),
                None => o,
            });
        }
    }

    /// Calls `f` with the flat index of every node in the box.
    pub fn for_each(&self, grid: &GridSpec, mut f: impl FnMut(usize)) {
        for z in self.lo[2]..self.hi[2] {
            for y in self.lo[1]..self.hi[1] {
                let row = grid.index([0, y, z]);
                for x in self.lo[0]..self.hi[0] {
                    f(row + x);
                }
            }
        }
    }
}

/// Edge length (in nodes) of the blocks used for block-level pre-screening.
pub(crate) const BLOCK: usize = 8;

pub(crate) struct TileData<T> {
    pub(crate) ls1: Vec<T>,
    pub(crate) ls2: Vec<T>,
    pub(crate) ls3: Option<Vec<T>>,
    pub(crate) art: Vec<T>,
    /// Per block maximum of the deepest tracked field.
    pub(crate) block_max: Vec<T>,
    pub(crate) ls1_finite: bool,
    pub(crate) ls2_finite: bool,
}

impl<T: Real> TileData<T> {
    pub(crate) fn deep(&self) -> &[T] {
        self.ls3.as_deref().unwrap_or(&self.ls2)
    }
}

/// Distance fields of every tile of a set.
pub struct TileFields<T> {
    grid: GridSpec,
    sentinel: T,
    pub(crate) tiles: Vec<TileData<T>>,
}

fn alloc<T: Clone>(len: usize, value: T, what: &str) -> Result<Vec<T>> {
    let mut v = Vec::new();
    v.try_reserve_exact(len).map_err(|_| Error::Resource {
        what: format!("{what} ({len} values)"),
    })?;
    v.resize(len, value);
    Ok(v)
}

/// Allocates sentinel-filled fields for `tiles` tiles. LS3 is only stored
/// when `track_ls3` is set.
pub fn init_fields<T: Real>(tiles: usize, grid: GridSpec, track_ls3: bool) -> Result<TileFields<T>> {
    let sentinel = grid.sentinel::<T>();
    let nodes = grid.nodes();
    let blocks = block_shape(&grid).iter().product();
    let mut data = Vec::with_capacity(tiles);
    for _ in 0..tiles {
        data.push(TileData {
            ls1: alloc(nodes, sentinel, "LS1")?,
            ls2: alloc(nodes, sentinel, "LS2")?,
            ls3: if track_ls3 { Some(alloc(nodes, sentinel, "LS3")?) } else { None },
            art: alloc(nodes, sentinel, "artificial field")?,
            block_max: alloc(blocks, sentinel, "block maxima")?,
            ls1_finite: false,
            ls2_finite: false,
        });
    }
    Ok(TileFields {
        grid,
        sentinel,
        tiles: data,
    })
}

pub(crate) fn block_shape(grid: &GridSpec) -> [usize; 3] {
    grid.shape().map(|s| s.div_ceil(BLOCK))
}

impl<T: Real> TileFields<T> {
    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn sentinel(&self) -> T {
        self.sentinel
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn tracks_ls3(&self) -> bool {
        self.tiles.first().is_some_and(|t| t.ls3.is_some())
    }

    pub fn ls1(&self, tile: usize) -> &[T] {
        &self.tiles[tile].ls1
    }

    pub fn ls2(&self, tile: usize) -> &[T] {
        &self.tiles[tile].ls2
    }

    pub fn ls3(&self, tile: usize) -> Result<&[T]> {
        self.tiles[tile]
            .ls3
            .as_deref()
            .ok_or(Error::UntrackedField { field: "LS3" })
    }

    /// The artificial field as last built or refreshed.
    pub fn artificial(&self, tile: usize) -> &[T] {
        &self.tiles[tile].art
    }

    /// Whether the tile's LS1 / LS2 hold any particle distance yet.
    pub fn is_populated(&self, tile: usize) -> (bool, bool) {
        (self.tiles[tile].ls1_finite, self.tiles[tile].ls2_finite)
    }

    /// Fraction of nodes (over all tiles) inside particles, `LS1 ≤ 0`.
    pub fn volume_fraction(&self) -> f64 {
        let inside: usize = self
            .tiles
            .iter()
            .map(|t| t.ls1.iter().filter(|&&v| v <= T::zero()).count())
            .sum();
        inside as f64 / (self.grid.nodes() * self.tiles.len()) as f64
    }

    /// Field by name: `ls1`, `ls2`, `ls3` or `art`.
    pub fn field(&self, tile: usize, name: &str) -> Result<&[T]> {
        match name {
            "ls1" => Ok(self.ls1(tile)),
            "ls2" => Ok(self.ls2(tile)),
            "ls3" => self.ls3(tile),
            "art" => Ok(self.artificial(tile)),
            _ => Err(Error::InvalidParameter(format!("unknown field {name}"))),
        }
    }

    /// Builds fields directly from stored values (e.g. a dump); block
    /// maxima and population flags are recomputed.
    pub fn from_values(grid: GridSpec, ls1: Vec<Vec<T>>, ls2: Vec<Vec<T>>, ls3: Option<Vec<Vec<T>>>) -> Result<TileFields<T>> {
        let tiles = ls1.len();
        let nodes = grid.nodes();
        let ok = ls2.len() == tiles
            && ls3.as_ref().is_none_or(|v| v.len() == tiles)
            && ls1.iter().chain(&ls2).chain(ls3.iter().flatten()).all(|f| f.len() == nodes);
        if !ok || tiles == 0 {
            return Err(Error::InvalidParameter("inconsistent field sizes".into()));
        }
        let mut fields = init_fields::<T>(tiles, grid, ls3.is_some())?;
        let mut ls3 = ls3.map(|v| v.into_iter());
        for (t, (a, b)) in ls1.into_iter().zip(ls2).enumerate() {
            let data = &mut fields.tiles[t];
            data.ls1_finite = a.iter().any(|&v| v < fields.sentinel);
            data.ls2_finite = b.iter().any(|&v| v < fields.sentinel);
            data.art = a.clone();
            data.ls1 = a;
            data.ls2 = b;
            if let Some(it) = ls3.as_mut() {
                data.ls3 = it.next();
            }
        }
        for t in 0..tiles {
            update::recompute_all_block_max(&grid, &mut fields.tiles[t]);
        }
        Ok(fields)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_rejects_even_n() {
        assert!(GridSpec::new(2, 200).is_err());
        let g = GridSpec::new(2, 201).unwrap();
        assert_eq!(g.h::<f64>(), 0.005);
        assert_eq!(g.coord::<f64>(0), -0.5);
        assert_eq!(g.coord::<f64>(200), 0.5);
        assert_eq!(g.coord::<f64>(100), 0.0);
    }

    #[test]
    fn init_sizes_and_sentinel() {
        let g = GridSpec::new(2, 201).unwrap();
        let f = init_fields::<f64>(16, g, false).unwrap();
        assert_eq!(f.len(), 16);
        assert_eq!(f.ls1(3).len(), 201 * 201);
        assert!(f.ls1(0).iter().all(|&v| v == f.sentinel()));
        assert!(f.sentinel() >= 2f64.sqrt());
        assert!(matches!(f.ls3(0), Err(Error::UntrackedField { .. })));
    }

    #[test]
    fn anchor_translation_is_exact() {
        let g = GridSpec::new(2, 41).unwrap();
        let a = Anchor { m: [3, 38, 0], f: [0.25f64, 0.75, 0.0] };
        let b = a.translated(&g, [1, -1, 0]);
        // the translated anchor sees node i + 40 where the source sees node i
        assert_eq!(a.relative(&g, [3, 5, 0]), b.relative(&g, [43, -35, 0]));
    }
}
