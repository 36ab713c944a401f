//! Particle lists.
//!
//! First line `particles dim=<d> n=<n> count=<k>`, then one particle per
//! line:
//!
//! ```text
//! tile kind cx cy [cz] rbar params.. original id @ m.. f..
//! tile kind cx cy [cz] rbar params.. image id tx ty [tz] @ m.. f..
//! ```
//!
//! with `params` = `r` (sphere), `a b angle` (ellipse), `a b c qw qx qy qz`
//! (ellipsoid) or `k x1 y1 .. xk yk` (polygon). `m` and `f` are the integer
//! node and fraction of the grid anchor, from which the centre derives.
//! Values are written in shortest round-trip form.

use std::fmt::Write as _;
use std::path::Path;

use super::{parse_error, read_text, write_text};
use crate::error::Result;
use crate::geometry::{Particle, Shape};
use crate::levelset::{Anchor, GridSpec};
use crate::packing::{PlacedParticle, Provenance};
use crate::scalar::Real;

pub fn format_particles<T: Real>(grid: &GridSpec, particles: &[PlacedParticle<T>]) -> String {
    let d = grid.dim();
    let mut s = String::new();
    let _ = writeln!(s, "particles dim={} n={} count={}", d, grid.n(), particles.len());
    for p in particles {
        let mut words: Vec<String> = vec![p.tile.to_string(), p.particle.shape.kind().to_string()];
        words.extend(p.particle.center[..d].iter().map(T::to_string));
        words.push(p.particle.circumscribed_radius.to_string());
        match &p.particle.shape {
            Shape::Sphere { radius } => words.push(radius.to_string()),
            Shape::Ellipse { semi_axes, angle } => {
                words.extend(semi_axes.iter().map(T::to_string));
                words.push(angle.to_string());
            }
            Shape::Ellipsoid { semi_axes, rotation } => {
                words.extend(semi_axes.iter().chain(rotation.iter()).map(T::to_string));
            }
            Shape::Polygon { vertices } => {
                words.push(vertices.len().to_string());
                words.extend(vertices.iter().flatten().map(T::to_string));
            }
        }
        match p.provenance {
            Provenance::Original => words.extend(["original".to_string(), p.id.to_string()]),
            Provenance::Image { translation } => {
                words.extend(["image".to_string(), p.id.to_string()]);
                words.extend(translation[..d].iter().map(i32::to_string));
            }
        }
        words.push("@".into());
        words.extend(p.anchor.m[..d].iter().map(i64::to_string));
        words.extend(p.anchor.f[..d].iter().map(T::to_string));
        let _ = writeln!(s, "{}", words.join(" "));
    }
    s
}

pub fn write_particles<T: Real>(path: &Path, grid: &GridSpec, particles: &[PlacedParticle<T>]) -> Result<()> {
    write_text(path, &format_particles(grid, particles))
}

struct Words<'a> {
    iter: std::str::SplitWhitespace<'a>,
    path: &'a Path,
    line: usize,
}

impl<'a> Words<'a> {
    fn next(&mut self, what: &str) -> Result<&'a str> {
        self.iter
            .next()
            .ok_or_else(|| parse_error(self.path, self.line, format!("missing {what}")))
    }

    fn parse<V: std::str::FromStr>(&mut self, what: &str) -> Result<V> {
        let w = self.next(what)?;
        w.parse()
            .map_err(|_| parse_error(self.path, self.line, format!("bad {what} `{w}`")))
    }

    fn real<T: Real>(&mut self, what: &str) -> Result<T> {
        Ok(T::lit(self.parse::<f64>(what)?))
    }

    fn reals<T: Real>(&mut self, k: usize, what: &str) -> Result<Vec<T>> {
        (0..k).map(|_| self.real(what)).collect()
    }
}

/// Parses a particle list; returns the grid and the particles.
pub fn parse_particles<T: Real>(text: &str, path: &Path) -> Result<(GridSpec, Vec<PlacedParticle<T>>)> {
    let mut lines = text.lines().enumerate();
    let header = lines.next().map(|l| l.1).unwrap_or("");
    let mut dim = None;
    let mut n = None;
    let mut count = None;
    let mut hw = header.split_whitespace();
    if hw.next() != Some("particles") {
        return Err(parse_error(path, 1, "expected `particles` header".into()));
    }
    for w in hw {
        match w.split_once('=') {
            Some(("dim", v)) => dim = v.parse::<usize>().ok(),
            Some(("n", v)) => n = v.parse::<usize>().ok(),
            Some(("count", v)) => count = v.parse::<usize>().ok(),
            _ => return Err(parse_error(path, 1, format!("bad header entry `{w}`"))),
        }
    }
    let (Some(d), Some(n), Some(count)) = (dim, n, count) else {
        return Err(parse_error(path, 1, "incomplete header".into()));
    };
    let grid = GridSpec::new(d, n).map_err(|e| parse_error(path, 1, e.to_string()))?;

    let mut out = Vec::with_capacity(count);
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let mut w = Words {
            iter: line.split_whitespace(),
            path,
            line: i + 1,
        };
        let tile: usize = w.parse("tile index")?;
        let kind = w.next("shape kind")?.to_string();
        let mut center = [T::zero(); 3];
        for c in center.iter_mut().take(d) {
            *c = w.real("centre")?;
        }
        let rbar: T = w.real("circumscribed radius")?;
        let shape = match kind.as_str() {
            "sphere" => Shape::Sphere { radius: w.real("radius")? },
            "ellipse" => {
                let v = w.reals(3, "ellipse parameter")?;
                Shape::Ellipse {
                    semi_axes: [v[0], v[1]],
                    angle: v[2],
                }
            }
            "ellipsoid" => {
                let v = w.reals(7, "ellipsoid parameter")?;
                Shape::Ellipsoid {
                    semi_axes: [v[0], v[1], v[2]],
                    rotation: [v[3], v[4], v[5], v[6]],
                }
            }
            "polygon" => {
                let k: usize = w.parse("vertex count")?;
                let v = w.reals(2 * k, "vertex coordinate")?;
                Shape::Polygon {
                    vertices: v.chunks(2).map(|c| [c[0], c[1]]).collect(),
                }
            }
            other => return Err(parse_error(path, i + 1, format!("unknown shape kind `{other}`"))),
        };
        let provenance_word = w.next("provenance")?.to_string();
        let id: usize = w.parse("particle id")?;
        let provenance = match provenance_word.as_str() {
            "original" => Provenance::Original,
            "image" => {
                let mut translation = [0i32; 3];
                for t in translation.iter_mut().take(d) {
                    *t = w.parse("translation")?;
                }
                Provenance::Image { translation }
            }
            other => return Err(parse_error(path, i + 1, format!("unknown provenance `{other}`"))),
        };
        if w.next("`@`")? != "@" {
            return Err(parse_error(path, i + 1, "expected `@` before the anchor".into()));
        }
        let mut anchor = Anchor::at_node([0; 3]);
        for m in anchor.m.iter_mut().take(d) {
            *m = w.parse("anchor node")?;
        }
        for f in anchor.f.iter_mut().take(d) {
            *f = w.real("anchor fraction")?;
        }
        if let Some(extra) = w.iter.next() {
            return Err(parse_error(path, i + 1, format!("unexpected `{extra}`")));
        }
        out.push(PlacedParticle {
            id,
            tile,
            particle: Particle {
                shape,
                center,
                circumscribed_radius: rbar,
            },
            anchor,
            provenance,
        });
    }
    if out.len() != count {
        return Err(parse_error(path, 1, format!("header announces {count} particles, found {}", out.len())));
    }
    Ok((grid, out))
}

pub fn read_particles<T: Real>(path: &Path) -> Result<(GridSpec, Vec<PlacedParticle<T>>)> {
    parse_particles(&read_text(path)?, path)
}
