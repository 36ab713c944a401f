//! Image and table export: PNG (2D), legacy VTK structured points (3D)
//! and S2 / peak CSV tables.

use std::fmt::Write as _;
use std::path::Path;

use image::{GrayImage, Luma};

use super::write_text;
use crate::error::{Error, Result};
use crate::stats::{GlobalImage, S2Field};

/// Solid nodes black, void white, one pixel per node; row 0 is the top
/// (largest y) of the image.
pub fn phase_png(image: &GlobalImage<bool>) -> Result<GrayImage> {
    if image.dim() != 2 {
        return Err(Error::InvalidParameter("PNG export needs a 2D image".into()));
    }
    let [nx, ny, _] = image.dims();
    let (w, h) = (nx as u32, ny as u32);
    Ok(GrayImage::from_fn(w, h, |x, row| {
        let y = (h - 1 - row) as usize;
        Luma([if image.get([x as usize, y, 0]) { 0 } else { 255 }])
    }))
}

pub fn write_png(path: &Path, image: &GlobalImage<bool>) -> Result<()> {
    phase_png(image)?.save(path).map_err(|e| match e {
        image::ImageError::IoError(io) => Error::io(path, io),
        other => Error::Image(other),
    })
}

/// Legacy ASCII VTK with `SCALARS phase unsigned_char` (1 = solid), origin
/// at the minimal corner and spacing `h`.
pub fn format_vtk(image: &GlobalImage<bool>, h: f64) -> String {
    let [nx, ny, nz] = image.dims();
    let mut s = String::new();
    let _ = writeln!(s, "# vtk DataFile Version 3.0");
    let _ = writeln!(s, "wangtile phase");
    let _ = writeln!(s, "ASCII");
    let _ = writeln!(s, "DATASET STRUCTURED_POINTS");
    let _ = writeln!(s, "DIMENSIONS {nx} {ny} {nz}");
    let _ = writeln!(s, "ORIGIN 0 0 0");
    let _ = writeln!(s, "SPACING {h} {h} {h}");
    let _ = writeln!(s, "POINT_DATA {}", nx * ny * nz);
    let _ = writeln!(s, "SCALARS phase unsigned_char 1");
    let _ = writeln!(s, "LOOKUP_TABLE default");
    for row in image.data().chunks(nx) {
        let words: Vec<&str> = row.iter().map(|&v| if v { "1" } else { "0" }).collect();
        let _ = writeln!(s, "{}", words.join(" "));
    }
    s
}

pub fn write_vtk(path: &Path, image: &GlobalImage<bool>, h: f64) -> Result<()> {
    write_text(path, &format_vtk(image, h))
}

fn csv_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else {
        v.to_string()
    }
}

/// `lag_x,lag_y[,lag_z],S2,normalized` for every lag with
/// `|lag| <= max_lag` per axis (clipped to half the image), x fastest.
pub fn format_s2_csv(s2: &S2Field, max_lag: Option<usize>) -> String {
    let dim = s2.dim();
    let dims = s2.dims();
    let phi = s2.phi();
    let mut range = [0i64; 3];
    for a in 0..dim {
        let half = (dims[a] / 2) as i64;
        range[a] = max_lag.map_or(half, |m| (m as i64).min(half));
    }
    let mut s = String::from(if dim == 3 { "lag_x,lag_y,lag_z,S2,normalized\n" } else { "lag_x,lag_y,S2,normalized\n" });
    for z in -range[2]..=range[2] {
        for y in -range[1]..=range[1] {
            for x in -range[0]..=range[0] {
                let v = s2.get([x, y, z]);
                let norm = if phi > 0.0 { v / (phi * phi) } else { f64::NAN };
                if dim == 3 {
                    let _ = writeln!(s, "{x},{y},{z},{},{}", csv_f64(v), csv_f64(norm));
                } else {
                    let _ = writeln!(s, "{x},{y},{},{}", csv_f64(v), csv_f64(norm));
                }
            }
        }
    }
    s
}

pub fn write_s2_csv(path: &Path, s2: &S2Field, max_lag: Option<usize>) -> Result<()> {
    write_text(path, &format_s2_csv(s2, max_lag))
}

/// One realization/tiling row of a peak table.
#[derive(Clone, Debug, PartialEq)]
pub struct PeakRow {
    pub realization: usize,
    pub seed: u64,
    pub tiling: usize,
    pub phi: f64,
    pub max_normalized: f64,
    /// Lag of the maximal secondary peak, in whole tiles.
    pub lag: [i64; 3],
}

pub fn format_peak_csv(dim: usize, rows: &[PeakRow]) -> String {
    let mut s = String::from("realization,seed,tiling,phi,max_normalized,lag_x,lag_y");
    s.push_str(if dim == 3 { ",lag_z\n" } else { "\n" });
    for r in rows {
        let _ = write!(
            s,
            "{},{},{},{},{},{},{}",
            r.realization,
            r.seed,
            r.tiling,
            csv_f64(r.phi),
            csv_f64(r.max_normalized),
            r.lag[0],
            r.lag[1]
        );
        if dim == 3 {
            let _ = write!(s, ",{}", r.lag[2]);
        }
        s.push('\n');
    }
    s
}

pub fn write_peak_csv(path: &Path, dim: usize, rows: &[PeakRow]) -> Result<()> {
    write_text(path, &format_peak_csv(dim, rows))
}
