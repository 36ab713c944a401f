//! Stochastic scanline assembly and the stochasticity check behind it.
//!
//! Cells are visited x fastest, then y, then z, starting at the minimal
//! corner, so the already placed neighbours of a cell are the ones on its
//! low sides (west, south, bottom). Each cell draws uniformly among the
//! tiles matching those neighbours.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::entity::Side;
use super::TileSet;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tiling {
    dims: [usize; 3],
    cells: Vec<usize>,
    seed: u64,
}

impl Tiling {
    /// Wraps an explicit cell array (x fastest); no compatibility check.
    pub fn from_cells(dims: [usize; 3], cells: Vec<usize>, seed: u64) -> Result<Tiling> {
        if dims.iter().product::<usize>() != cells.len() || cells.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "tiling of {dims:?} needs {} cells, got {}",
                dims.iter().product::<usize>(),
                cells.len()
            )));
        }
        Ok(Tiling { dims, cells, seed })
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn linear_index(&self, cell: [usize; 3]) -> usize {
        (cell[2] * self.dims[1] + cell[1]) * self.dims[0] + cell[0]
    }

    pub fn get(&self, cell: [usize; 3]) -> usize {
        self.cells[self.linear_index(cell)]
    }

    /// First pair of abutting cells whose shared codes differ.
    pub fn first_mismatch(&self, set: &TileSet) -> Option<([usize; 3], usize)> {
        for z in 0..self.dims[2] {
            for y in 0..self.dims[1] {
                for x in 0..self.dims[0] {
                    let cell = [x, y, z];
                    let t = self.get(cell);
                    for axis in 0..set.dim() {
                        if cell[axis] + 1 >= self.dims[axis] {
                            continue;
                        }
                        let mut next = cell;
                        next[axis] += 1;
                        let n = self.get(next);
                        if set.code(t, axis, Side::High) != set.code(n, axis, Side::Low) {
                            return Some((cell, axis));
                        }
                    }
                }
            }
        }
        None
    }
}

/// Fills a `dims` grid (`dims[2] = 1` in 2D) by scanline assembly.
///
/// Cell `i` (scanline index) draws from a ChaCha8 stream seeded with `seed`
/// on stream `i`, so a tiling depends only on the set, dims and seed.
pub fn assemble(set: &TileSet, dims: [usize; 3], seed: u64) -> Result<Tiling> {
    let dim = set.dim();
    if dims.iter().take(dim).any(|&d| d == 0) || (dim == 2 && dims[2] != 1) {
        return Err(Error::InvalidParameter(format!("bad tiling dimensions {dims:?}")));
    }
    let total: usize = dims.iter().product();
    let mut cells = Vec::with_capacity(total);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates = Vec::with_capacity(set.len());
    for z in 0..dims[2] {
        for y in 0..dims[1] {
            for x in 0..dims[0] {
                let cell = [x, y, z];
                let index = cells.len();
                candidates.clear();
                candidates.extend((0..set.len()).filter(|&t| {
                    (0..dim).all(|axis| {
                        if cell[axis] == 0 {
                            return true;
                        }
                        let mut low = cell;
                        low[axis] -= 1;
                        let li = (low[2] * dims[1] + low[1]) * dims[0] + low[0];
                        set.code(cells[li], axis, Side::High) == set.code(t, axis, Side::Low)
                    })
                }));
                if candidates.is_empty() {
                    return Err(Error::NoCandidate { cell });
                }
                rng.set_stream(index as u64);
                rng.set_word_pos(0);
                cells.push(candidates[rng.random_range(0..candidates.len())]);
            }
        }
    }
    Ok(Tiling { dims, cells, seed })
}

/// Number of tiles compatible with one combination of low-side codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintCount {
    /// Required low-side code per axis (west, south[, bottom]); `None` where
    /// no neighbour is placed yet (first row, column or layer).
    pub codes: Vec<Option<u32>>,
    pub count: usize,
}

impl ConstraintCount {
    /// Whether every axis is constrained (an interior cell).
    pub fn is_full(&self) -> bool {
        self.codes.iter().all(Option::is_some)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StochasticReport {
    pub is_stochastic: bool,
    pub combinations: Vec<ConstraintCount>,
    /// Combinations without any compatible tile.
    pub deficient_combinations: Vec<ConstraintCount>,
    /// Combinations served by a single tile (deterministic placement).
    pub warnings: Vec<ConstraintCount>,
}

/// Checks every combination of codes that placed neighbours can impose,
/// for interior cells as well as cells on the low faces of the tiling.
///
/// A combination is considered only if it is realisable, i.e. the low-side
/// neighbours carrying it fit together with tiles on the remaining cells of
/// the block below the current cell. Vertex-defined sets need this: their
/// west and south codes both encode the shared corner.
pub fn validate_stochastic(set: &TileSet) -> StochasticReport {
    let dim = set.dim();
    let offered: Vec<Vec<u32>> = (0..dim)
        .map(|a| {
            let mut v: Vec<u32> = (0..set.len()).map(|t| set.code(t, a, Side::High)).collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();

    let mut combinations = Vec::new();
    for mask in 1u8..(1 << dim) {
        let axes: Vec<usize> = (0..dim).filter(|a| mask & (1 << a) != 0).collect();
        let mut combo = vec![0usize; axes.len()];
        'combos: loop {
            let mut codes = vec![None; dim];
            for (k, &a) in axes.iter().enumerate() {
                codes[a] = Some(offered[a][combo[k]]);
            }
            if realizable(set, mask, &codes) {
                let count = (0..set.len())
                    .filter(|&t| (0..dim).all(|a| codes[a].is_none_or(|c| set.code(t, a, Side::Low) == c)))
                    .count();
                combinations.push(ConstraintCount { codes, count });
            }
            for (k, &a) in axes.iter().enumerate() {
                combo[k] += 1;
                if combo[k] < offered[a].len() {
                    continue 'combos;
                }
                combo[k] = 0;
            }
            break;
        }
    }

    let deficient: Vec<_> = combinations.iter().filter(|c| c.count == 0).cloned().collect();
    let warnings = combinations.iter().filter(|c| c.count == 1).cloned().collect();
    StochasticReport {
        is_stochastic: deficient.is_empty(),
        combinations,
        deficient_combinations: deficient,
        warnings,
    }
}

/// Whether the cells of the block `{-1, 0}` along the axes in `mask`, other
/// than the origin, can be filled consistently so that the neighbour at
/// `-e_a` shows `codes[a]` on its high side.
fn realizable(set: &TileSet, mask: u8, codes: &[Option<u32>]) -> bool {
    // cells in scanline order; bit a set = offset -1 along a
    let cells: Vec<u8> = (1u8..=mask).rev().filter(|c| c & !mask == 0).collect();
    let mut assigned = vec![usize::MAX; 1 << set.dim()];

    fn fill(set: &TileSet, codes: &[Option<u32>], mask: u8, cells: &[u8], k: usize, assigned: &mut [usize]) -> bool {
        let Some(&cell) = cells.get(k) else {
            return true;
        };
        for t in 0..set.len() {
            let fits = (0..set.dim()).all(|a| {
                let bit = 1u8 << a;
                if mask & bit == 0 {
                    true
                } else if cell & bit == 0 {
                    // a low neighbour along a exists inside the block
                    let low = assigned[(cell | bit) as usize];
                    set.code(low, a, Side::High) == set.code(t, a, Side::Low)
                } else if cell == bit {
                    codes[a] == Some(set.code(t, a, Side::High))
                } else {
                    true
                }
            });
            if fits {
                assigned[cell as usize] = t;
                if fill(set, codes, mask, cells, k + 1, assigned) {
                    return true;
                }
            }
        }
        false
    }

    fill(set, codes, mask, &cells, 0, &mut assigned)
}
