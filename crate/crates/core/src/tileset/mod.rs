//! Wang tile and Wang cube sets: definition, code-connectivity analysis,
//! neighbourhood grids and stochastic scanline assembly.
//!
//! Axis 0 points east, axis 1 north and axis 2 up. Each tile carries one
//! code per side of each axis; tiles are never rotated or reflected.

mod analysis;
mod assembly;
mod entity;
mod neighbors;

pub use analysis::{analyze_codes, ConnectivityAnalysis, EntityClass};
pub use assembly::{assemble, validate_stochastic, ConstraintCount, StochasticReport, Tiling};
pub use entity::{Entity, Side, ENTITY_SLOTS};
pub use neighbors::{build_neighbor_grids, NeighborGrid};

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Codes of one tile, indexed `[axis][side]`.
pub type Codes = [[u32; 2]; 3];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tile {
    index: usize,
    codes: Codes,
}

impl Tile {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn code(&self, axis: usize, side: Side) -> u32 {
        self.codes[axis][side as usize]
    }

    pub fn codes(&self) -> &Codes {
        &self.codes
    }

    pub fn north(&self) -> u32 {
        self.code(1, Side::High)
    }
    pub fn east(&self) -> u32 {
        self.code(0, Side::High)
    }
    pub fn south(&self) -> u32 {
        self.code(1, Side::Low)
    }
    pub fn west(&self) -> u32 {
        self.code(0, Side::Low)
    }
    pub fn top(&self) -> u32 {
        self.code(2, Side::High)
    }
    pub fn bottom(&self) -> u32 {
        self.code(2, Side::Low)
    }

    /// Codes in file order: `N E S W` (2D) or `N E S W T B` (3D).
    pub fn file_order(&self, dim: usize) -> Vec<u32> {
        let mut v = vec![self.north(), self.east(), self.south(), self.west()];
        if dim == 3 {
            v.extend([self.top(), self.bottom()]);
        }
        v
    }
}

/// An ordered, duplicate-free set of Wang tiles (2D) or cubes (3D).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileSet {
    dim: usize,
    code_counts: [u32; 3],
    tiles: Vec<Tile>,
}

impl TileSet {
    /// Builds a set from per-tile `[axis][side]` codes. `code_counts[a]` is
    /// the number of distinct codes on faces normal to axis `a`.
    pub fn new(dim: usize, code_counts: [u32; 3], codes: Vec<Codes>) -> Result<TileSet> {
        if dim != 2 && dim != 3 {
            return Err(Error::InvalidTileSet(format!("dimension {dim} is not 2 or 3")));
        }
        if codes.is_empty() {
            return Err(Error::InvalidTileSet("tile list is empty".into()));
        }
        let mut seen: HashMap<Codes, usize> = HashMap::new();
        let mut tiles = Vec::with_capacity(codes.len());
        for (index, mut c) in codes.into_iter().enumerate() {
            for (axis, sides) in c.iter().enumerate().take(dim) {
                for &code in sides {
                    if code >= code_counts[axis] {
                        return Err(Error::InvalidTileSet(format!(
                            "tile {index}: code {code} on axis {axis} exceeds count {}",
                            code_counts[axis]
                        )));
                    }
                }
            }
            for sides in c.iter_mut().skip(dim) {
                *sides = [0, 0];
            }
            if let Some(&first) = seen.get(&c) {
                return Err(Error::DuplicateTiles {
                    first,
                    second: index,
                });
            }
            seen.insert(c, index);
            tiles.push(Tile { index, codes: c });
        }
        let mut code_counts = code_counts;
        for count in code_counts.iter_mut().skip(dim) {
            *count = 1;
        }
        Ok(TileSet {
            dim,
            code_counts,
            tiles,
        })
    }

    /// 2D convenience constructor from `N E S W` rows; `codes_x` counts the
    /// codes on west/east edges and `codes_y` those on south/north edges.
    pub fn from_nesw(codes_x: u32, codes_y: u32, rows: &[[u32; 4]]) -> Result<TileSet> {
        let codes = rows
            .iter()
            .map(|&[n, e, s, w]| [[w, e], [s, n], [0, 0]])
            .collect();
        TileSet::new(2, [codes_x, codes_y, 1], codes)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn code_counts(&self) -> [u32; 3] {
        self.code_counts
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn tile(&self, index: usize) -> &Tile {
        &self.tiles[index]
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn code(&self, tile: usize, axis: usize, side: Side) -> u32 {
        self.tiles[tile].code(axis, side)
    }

    /// Complete edge-based set over two codes per orientation, tiles in
    /// lexicographic `N E S W` order.
    pub fn c16() -> TileSet {
        let mut rows = Vec::with_capacity(16);
        for n in 0..2 {
            for e in 0..2 {
                for s in 0..2 {
                    for w in 0..2 {
                        rows.push([n, e, s, w]);
                    }
                }
            }
        }
        TileSet::from_nesw(2, 2, &rows).expect("C16 is valid")
    }

    /// Complete vertex-based set over two vertex codes, mapped to edge codes
    /// and ordered lexicographically by `N E S W`.
    pub fn v16() -> TileSet {
        let corners: Vec<Vec<u32>> = (0u32..16)
            .map(|bits| (0..4).map(|c| (bits >> c) & 1).collect())
            .collect();
        let set = TileSet::from_vertex_codes(2, 2, &corners).expect("V16 is valid");
        set.sorted_lexicographically()
    }

    /// One tile whose opposite codes coincide: the periodic unit cell.
    pub fn periodic(dim: usize) -> TileSet {
        TileSet::new(dim, [1, 1, 1], vec![[[0, 0]; 3]]).expect("periodic set is valid")
    }

    /// Sixteen Wang cubes with two codes per face orientation, each code
    /// used by exactly eight cubes per face and exactly two cubes for every
    /// west/south/bottom constraint combination.
    pub fn cubes16() -> TileSet {
        let codes = (0u32..16)
            .map(|i| {
                let j = i & 1;
                let (w, s, b) = ((i >> 1) & 1, (i >> 2) & 1, (i >> 3) & 1);
                [[w, j], [s, j ^ w], [b, j ^ s ^ b]]
            })
            .collect();
        TileSet::new(3, [2, 2, 2], codes).expect("cubes16 is valid")
    }

    /// Maps a vertex-defined set to edge/face codes.
    ///
    /// `corners[t][c]` is the vertex code of corner `c` of tile `t`, where
    /// bit `a` of `c` selects the side along axis `a`. The code of a face is
    /// the base-`vertex_codes` number formed by the codes of its corners in
    /// ascending corner order, so two (2D) or four (3D) vertex codes define
    /// one face code.
    pub fn from_vertex_codes(dim: usize, vertex_codes: u32, corners: &[Vec<u32>]) -> Result<TileSet> {
        if dim != 2 && dim != 3 {
            return Err(Error::InvalidTileSet(format!("dimension {dim} is not 2 or 3")));
        }
        let ncorners = 1usize << dim;
        let per_face = ncorners / 2;
        let face_codes = vertex_codes.pow(per_face as u32);
        let mut codes = Vec::with_capacity(corners.len());
        for (t, vc) in corners.iter().enumerate() {
            if vc.len() != ncorners || vc.iter().any(|&v| v >= vertex_codes) {
                return Err(Error::InvalidTileSet(format!("tile {t}: bad vertex codes {vc:?}")));
            }
            let mut c: Codes = [[0, 0]; 3];
            for (axis, sides) in c.iter_mut().enumerate().take(dim) {
                for (side, code) in sides.iter_mut().enumerate() {
                    *code = (0..ncorners)
                        .filter(|corner| (corner >> axis) & 1 == side)
                        .fold(0, |acc, corner| acc * vertex_codes + vc[corner]);
                }
            }
            codes.push(c);
        }
        TileSet::new(dim, [face_codes; 3], codes)
    }

    fn sorted_lexicographically(&self) -> TileSet {
        let mut codes: Vec<Codes> = self.tiles.iter().map(|t| t.codes).collect();
        codes.sort_by_key(|c| {
            (
                c[1][1], c[0][1], c[1][0], c[0][0], c[2][1], c[2][0],
            )
        });
        TileSet::new(self.dim, self.code_counts, codes).expect("reordering keeps validity")
    }
}
