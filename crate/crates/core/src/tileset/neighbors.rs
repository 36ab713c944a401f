//! Per-tile neighbourhood grids: which tiles may sit at each of the 3^d
//! relative positions around a tile in some valid tiling.

use super::analysis::ConnectivityAnalysis;
use super::entity::Entity;
use super::TileSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborGrid {
    dim: usize,
    tile: usize,
    cells: Vec<Vec<usize>>,
}

impl NeighborGrid {
    /// Cell index of an offset in `{-1, 0, 1}^d`, x fastest.
    pub fn cell_index(dim: usize, offset: [i32; 3]) -> usize {
        (0..dim).rev().fold(0, |acc, a| acc * 3 + (offset[a] + 1) as usize)
    }

    /// Offset of a cell index (inverse of [`NeighborGrid::cell_index`]).
    pub fn offset_of(dim: usize, mut index: usize) -> [i32; 3] {
        let mut o = [0; 3];
        for v in o.iter_mut().take(dim) {
            *v = (index % 3) as i32 - 1;
            index /= 3;
        }
        o
    }

    pub fn tile(&self) -> usize {
        self.tile
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Tiles that may occupy the cell at `offset`.
    pub fn at(&self, offset: [i32; 3]) -> &[usize] {
        &self.cells[Self::cell_index(self.dim, offset)]
    }

    /// `(offset, candidates)` for all 3^d cells, centre included.
    pub fn iter(&self) -> impl Iterator<Item = ([i32; 3], &[usize])> + '_ {
        self.cells
            .iter()
            .enumerate()
            .map(|(i, c)| (Self::offset_of(self.dim, i), c.as_slice()))
    }
}

/// Entity of a tile shared with the neighbour at `offset` (`None` for the
/// centre).
pub(crate) fn entity_towards(offset: [i32; 3]) -> Option<Entity> {
    let mut fixed = 0u8;
    let mut sides = 0u8;
    for (a, &o) in offset.iter().enumerate() {
        if o != 0 {
            fixed |= 1 << a;
            if o > 0 {
                sides |= 1 << a;
            }
        }
    }
    (fixed != 0).then(|| Entity::new(fixed, sides))
}

/// Builds one grid per tile. A tile `n` may occupy the cell at offset `o`
/// around `t` iff the entity of `n` facing back towards `t` lies in the
/// same class as the entity of `t` facing `o`: for faces this is equality
/// of codes, for diagonal positions it is equality of vertex (or cube
/// edge) classes.
pub fn build_neighbor_grids(set: &TileSet, analysis: &ConnectivityAnalysis) -> Vec<NeighborGrid> {
    let dim = set.dim();
    let ncells = 3usize.pow(dim as u32);
    (0..set.len())
        .map(|t| {
            let cells = (0..ncells)
                .map(|i| {
                    let offset = NeighborGrid::offset_of(dim, i);
                    match entity_towards(offset) {
                        None => vec![t],
                        Some(e) => {
                            let class = analysis.class_of(t, e);
                            (0..set.len())
                                .filter(|&n| analysis.class_of(n, e.opposite()) == class)
                                .collect()
                        }
                    }
                })
                .collect();
            NeighborGrid { dim, tile: t, cells }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tileset::analyze_codes;

    #[test]
    fn cell_index_roundtrip() {
        for dim in [2, 3] {
            for i in 0..3usize.pow(dim as u32) {
                assert_eq!(NeighborGrid::cell_index(dim, NeighborGrid::offset_of(dim, i)), i);
            }
        }
    }

    #[test]
    fn periodic_grid_is_all_zero() {
        let set = TileSet::periodic(2);
        let grids = build_neighbor_grids(&set, &analyze_codes(&set));
        for (_, c) in grids[0].iter() {
            assert_eq!(c, &[0]);
        }
    }

    #[test]
    fn c16_east_cells_have_eight_tiles() {
        let set = TileSet::c16();
        let grids = build_neighbor_grids(&set, &analyze_codes(&set));
        for g in &grids {
            let east = g.at([1, 0, 0]);
            assert_eq!(east.len(), 8);
            let t = set.tile(g.tile());
            assert!(east.iter().all(|&n| set.tile(n).west() == t.east()));
            assert_eq!(g.at([0, 0, 0]), &[g.tile()]);
            // one vertex class: every diagonal admits every tile
            assert_eq!(g.at([1, 1, 0]).len(), 16);
        }
    }

    #[test]
    fn v16_diagonal_follows_vertex_class() {
        let set = TileSet::v16();
        let a = analyze_codes(&set);
        let grids = build_neighbor_grids(&set, &a);
        let ne = Entity::vertex(2, 0b11);
        for g in &grids {
            let class = a.class_of(g.tile(), ne);
            let diag = g.at([1, 1, 0]);
            assert_eq!(diag.len(), 8);
            for &n in diag {
                assert_eq!(a.class_of(n, ne.opposite()), class);
            }
        }
    }
}
