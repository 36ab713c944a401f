//! Stitching tile fields into one image and two-point probability.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::levelset::GridSpec;
use crate::tileset::Tiling;

/// A field over an assembled tiling. Adjacent tiles share their boundary
/// nodes, so each axis holds `tiles * (n - 1) + 1` nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct GlobalImage<V> {
    dims: [usize; 3],
    pitch: usize,
    dim: usize,
    data: Vec<V>,
}

impl<V: Copy + PartialEq> GlobalImage<V> {
    /// Wraps node data (x fastest); `pitch` is the tile size in node
    /// intervals. A third axis of length one makes a 2D image.
    pub fn new(dims: [usize; 3], pitch: usize, data: Vec<V>) -> Result<GlobalImage<V>> {
        if dims.iter().product::<usize>() != data.len() || data.is_empty() || pitch == 0 {
            return Err(Error::InvalidParameter(format!(
                "image of {dims:?} nodes cannot hold {} values",
                data.len()
            )));
        }
        let dim = if dims[2] > 1 { 3 } else { 2 };
        Ok(GlobalImage { dims, pitch, dim, data })
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    /// Tile size in node intervals (`n - 1`).
    pub fn pitch(&self) -> usize {
        self.pitch
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[V] {
        &self.data
    }

    pub fn get(&self, node: [usize; 3]) -> V {
        self.data[(node[2] * self.dims[1] + node[1]) * self.dims[0] + node[0]]
    }

    /// The image without the last node along each axis: a tiling of
    /// `tiles * (n - 1)` nodes per axis for periodic statistics.
    pub fn periodic_view(&self) -> GlobalImage<V> {
        let mut dims = self.dims;
        for d in dims.iter_mut().take(self.dim) {
            *d -= 1;
        }
        let mut data = Vec::with_capacity(dims.iter().product());
        for z in 0..dims[2] {
            for y in 0..dims[1] {
                for x in 0..dims[0] {
                    data.push(self.get([x, y, z]));
                }
            }
        }
        GlobalImage {
            dims,
            pitch: self.pitch,
            dim: self.dim,
            data,
        }
    }
}

/// Copies every tile's field into its place in the tiling; shared boundary
/// nodes must carry identical values in both tiles.
pub fn render<V: Copy + PartialEq>(tiling: &Tiling, grid: &GridSpec, tiles: &[Vec<V>]) -> Result<GlobalImage<V>> {
    let dim = grid.dim();
    let n = grid.n();
    let pitch = n - 1;
    let td = tiling.dims();
    if tiles.iter().any(|t| t.len() != grid.nodes()) || tiling.cells().iter().any(|&c| c >= tiles.len()) {
        return Err(Error::InvalidParameter("tile fields do not fit the tiling".into()));
    }
    let mut dims = [1; 3];
    for a in 0..dim {
        dims[a] = td[a] * pitch + 1;
    }
    let total: usize = dims.iter().product();
    let mut data: Vec<Option<V>> = vec![None; total];
    let mut owner = vec![usize::MAX; total];
    let shape = grid.shape();
    for cz in 0..td[2] {
        for cy in 0..td[1] {
            for cx in 0..td[0] {
                let cell = [cx, cy, cz];
                let tile = tiling.get(cell);
                let field = &tiles[tile];
                for z in 0..shape[2] {
                    for y in 0..shape[1] {
                        for x in 0..shape[0] {
                            let local = [x, y, z];
                            let mut g = [0; 3];
                            for a in 0..3 {
                                g[a] = if a < dim { cell[a] * pitch + local[a] } else { 0 };
                            }
                            let gi = (g[2] * dims[1] + g[1]) * dims[0] + g[0];
                            let v = field[grid.index(local)];
                            match data[gi] {
                                None => {
                                    data[gi] = Some(v);
                                    owner[gi] = tile;
                                }
                                Some(w) if w != v => {
                                    return Err(Error::ContinuityViolation {
                                        node: g,
                                        first: owner[gi],
                                        second: tile,
                                    })
                                }
                                Some(_) => {}
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(GlobalImage {
        dims,
        pitch,
        dim,
        data: data.into_iter().map(|v| v.expect("every node covered")).collect(),
    })
}

/// Two-point probability over lag vectors (periodic, index = lag modulo
/// the image size).
#[derive(Clone, Debug, PartialEq)]
pub struct S2Field {
    dims: [usize; 3],
    dim: usize,
    pitch: usize,
    values: Vec<f64>,
    phi: f64,
}

impl S2Field {
    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Tile size in node intervals of the image the field came from.
    pub fn pitch(&self) -> usize {
        self.pitch
    }

    /// Volume fraction of the analysed phase.
    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn get(&self, lag: [i64; 3]) -> f64 {
        let mut idx = [0usize; 3];
        for a in 0..3 {
            idx[a] = lag[a].rem_euclid(self.dims[a] as i64) as usize;
        }
        self.values[(idx[2] * self.dims[1] + idx[1]) * self.dims[0] + idx[0]]
    }
}

fn fft_axis(planner: &mut FftPlanner<f64>, buf: &mut [Complex<f64>], dims: [usize; 3], axis: usize, inverse: bool) {
    let len = dims[axis];
    if len == 1 {
        return;
    }
    let fft = if inverse {
        planner.plan_fft_inverse(len)
    } else {
        planner.plan_fft_forward(len)
    };
    if axis == 0 {
        fft.process(buf);
        return;
    }
    let stride: usize = dims[..axis].iter().product();
    let outer: usize = dims[axis + 1..].iter().product();
    let mut line = vec![Complex::new(0.0, 0.0); len];
    for o in 0..outer {
        for s in 0..stride {
            let base = o * stride * len + s;
            for (k, v) in line.iter_mut().enumerate() {
                *v = buf[base + k * stride];
            }
            fft.process(&mut line);
            for (k, v) in line.iter().enumerate() {
                buf[base + k * stride] = *v;
            }
        }
    }
}

/// Periodic two-point probability of the nodes equal to `phase`.
///
/// The autocorrelation is taken through FFTs; for an indicator image the
/// pair counts are integers, so they are rounded before normalisation and
/// `S2(0)` equals the volume fraction exactly.
pub fn s2_fft(image: &GlobalImage<bool>, phase: bool) -> S2Field {
    let dims = image.dims();
    let m = image.data().len();
    let mut buf: Vec<Complex<f64>> = image
        .data()
        .iter()
        .map(|&v| Complex::new(if v == phase { 1.0 } else { 0.0 }, 0.0))
        .collect();
    let count = buf.iter().filter(|c| c.re > 0.5).count();
    let mut planner = FftPlanner::new();
    for a in 0..3 {
        fft_axis(&mut planner, &mut buf, dims, a, false);
    }
    for c in buf.iter_mut() {
        *c = Complex::new(c.norm_sqr(), 0.0);
    }
    for a in 0..3 {
        fft_axis(&mut planner, &mut buf, dims, a, true);
    }
    let mf = m as f64;
    let values = buf.iter().map(|c| (c.re / mf).round() / mf).collect();
    S2Field {
        dims,
        dim: image.dim(),
        pitch: image.pitch(),
        values,
        phi: count as f64 / mf,
    }
}

/// S2 sampled at one tile-lattice lag.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Peak {
    /// Lag in whole tiles.
    pub lag: [i64; 3],
    /// Node lag where the neighbourhood maximum was found.
    pub node_lag: [i64; 3],
    pub value: f64,
    /// `value / φ²`.
    pub normalized: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeakReport {
    pub phi: f64,
    /// φ is 0 or 1, so normalised values carry no information.
    pub degenerate: bool,
    pub peaks: Vec<Peak>,
    /// Largest normalised secondary peak.
    pub max: Option<Peak>,
}

/// Samples S2 at every non-zero integer multiple of the tile pitch in the
/// half domain (one of each `±lag` pair), taking the maximum over the
/// `±1` node neighbourhood of each lattice node.
pub fn secondary_peaks(s2: &S2Field) -> PeakReport {
    let dim = s2.dim;
    let pitch = s2.pitch as i64;
    let phi = s2.phi;
    let degenerate = phi <= 0.0 || phi >= 1.0;
    let mut range = [0i64; 3];
    for a in 0..dim {
        range[a] = (s2.dims[a] as i64 / 2) / pitch;
    }
    let mut peaks = Vec::new();
    for lz in -range[2]..=range[2] {
        for ly in -range[1]..=range[1] {
            for lx in -range[0]..=range[0] {
                let lag = [lx, ly, lz];
                // lexicographically positive: first non-zero component (z, y, x order) > 0
                let first = [lz, ly, lx].into_iter().find(|&v| v != 0);
                if !first.is_some_and(|v| v > 0) {
                    continue;
                }
                let centre = lag.map(|v| v * pitch);
                let mut best = (f64::NEG_INFINITY, centre);
                let span = |a: usize| if a < dim { -1..=1 } else { 0..=0 };
                for dz in span(2) {
                    for dy in span(1) {
                        for dx in span(0) {
                            let at = [centre[0] + dx, centre[1] + dy, centre[2] + dz];
                            let v = s2.get(at);
                            if v > best.0 {
                                best = (v, at);
                            }
                        }
                    }
                }
                let normalized = if phi > 0.0 { best.0 / (phi * phi) } else { f64::NAN };
                peaks.push(Peak {
                    lag,
                    node_lag: best.1,
                    value: best.0,
                    normalized,
                });
            }
        }
    }
    let max = peaks
        .iter()
        .copied()
        .filter(|p| !p.normalized.is_nan())
        .max_by(|a, b| a.normalized.total_cmp(&b.normalized));
    PeakReport {
        phi,
        degenerate,
        peaks,
        max,
    }
}

/// Location and value of the largest S2 among lags at least
/// `min_distance` nodes from the origin (the correlated primary peak is
/// excluded this way), searching the half domain.
pub fn strongest_off_origin(s2: &S2Field, min_distance: f64) -> Option<([i64; 3], f64)> {
    let mut half = [0i64; 3];
    for a in 0..s2.dim {
        half[a] = s2.dims[a] as i64 / 2;
    }
    let mut best: Option<([i64; 3], f64)> = None;
    for z in -half[2]..=half[2] {
        for y in -half[1]..=half[1] {
            for x in -half[0]..=half[0] {
                let r2 = (x * x + y * y + z * z) as f64;
                if r2 < min_distance * min_distance {
                    continue;
                }
                let v = s2.get([x, y, z]);
                if best.is_none_or(|b| v > b.1) {
                    best = Some(([x, y, z], v));
                }
            }
        }
    }
    best
}

/// Whether a node lag lies within `tolerance` nodes (per axis) of a lag
/// that is a whole number of tiles.
pub fn on_tile_lattice(lag: [i64; 3], pitch: usize, tolerance: i64) -> bool {
    let p = pitch as i64;
    lag.iter().all(|&v| {
        let r = v.rem_euclid(p);
        r <= tolerance || p - r <= tolerance
    })
}
