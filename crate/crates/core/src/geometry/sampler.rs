//! Random particle shapes: perturbed regular polygons and randomly
//! oriented ellipsoids.
//!
//! All draws are made in `f64` and converted afterwards, so a given RNG
//! stream yields the same shapes in `f32` and `f64` up to rounding.

use rand::Rng;
use rand_distr::{Distribution, Normal};

use super::Shape;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Laws of the perturbed-polygon sampler, radial values relative to r̄.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolygonParams {
    pub vertex_mean: f64,
    pub vertex_sd: f64,
    /// Standard deviation of the angular perturbation of each ray (radians).
    pub angle_sd: f64,
    pub radial_mean: f64,
    pub radial_sd: f64,
    pub radial_cap: f64,
    pub max_attempts: usize,
}

impl Default for PolygonParams {
    fn default() -> Self {
        PolygonParams {
            vertex_mean: 6.0,
            vertex_sd: 0.5,
            angle_sd: 0.5,
            radial_mean: 0.95,
            radial_sd: 0.05,
            radial_cap: 1.0,
            max_attempts: 100,
        }
    }
}

/// Semi-axis ratio laws `U(lo, hi)` relative to the major semi-axis r̄.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EllipsoidParams {
    pub mid_ratio: (f64, f64),
    pub minor_ratio: (f64, f64),
}

impl Default for EllipsoidParams {
    fn default() -> Self {
        EllipsoidParams {
            mid_ratio: (0.7, 0.9),
            minor_ratio: (0.6, 0.7),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ShapeSampler {
    /// Disk (2D) or sphere (3D) of radius r̄.
    Sphere,
    Polygon(PolygonParams),
    Ellipsoid(EllipsoidParams),
}

impl ShapeSampler {
    /// Draws a shape whose circumscribed radius (about the centre) is at
    /// most `radius`.
    pub fn sample<T: Real, R: Rng + ?Sized>(&self, rng: &mut R, radius: T) -> Result<Shape<T>> {
        match self {
            ShapeSampler::Sphere => Ok(Shape::Sphere { radius }),
            ShapeSampler::Polygon(p) => sample_polygon(rng, p, radius),
            ShapeSampler::Ellipsoid(p) => Ok(sample_ellipsoid(rng, p, radius)),
        }
    }
}

fn normal(mean: f64, sd: f64) -> Normal<f64> {
    Normal::new(mean, sd.max(0.0)).expect("finite normal parameters")
}

fn uniform<R: Rng + ?Sized>(rng: &mut R, (lo, hi): (f64, f64)) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

/// Regular polygon with a random orientation, vertex count, ray angles and
/// ray lengths perturbed per `params`. Vertices are returned counter
/// clockwise, relative to the centre.
pub fn sample_polygon<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    params: &PolygonParams,
    radius: T,
) -> Result<Shape<T>> {
    let count_law = normal(params.vertex_mean, params.vertex_sd);
    let angle_law = normal(0.0, params.angle_sd);
    let radial_law = normal(params.radial_mean, params.radial_sd);
    let tau = std::f64::consts::TAU;
    let r = radius.to_f64_lossy();
    'attempt: for _ in 0..params.max_attempts {
        let n = count_law.sample(rng).round();
        if !(3.0..=1e4).contains(&n) {
            continue;
        }
        let n = n as usize;
        let theta0 = tau * rng.random::<f64>();
        let mut angles: Vec<f64> = (0..n)
            .map(|i| theta0 + tau * i as f64 / n as f64 + angle_law.sample(rng))
            .collect();
        let mut radii = Vec::with_capacity(n);
        for _ in 0..n {
            let rho = radial_law.sample(rng).min(params.radial_cap);
            if rho <= 0.0 {
                continue 'attempt;
            }
            radii.push(rho * r);
        }
        angles.sort_by(|a, b| a.partial_cmp(b).expect("finite angles"));
        for i in 0..n {
            let next = if i + 1 < n { angles[i + 1] } else { angles[0] + tau };
            let gap = next - angles[i];
            // the centre must stay strictly inside and no ray may repeat
            if gap <= 0.0 || gap >= std::f64::consts::PI {
                continue 'attempt;
            }
        }
        let vertices = angles
            .iter()
            .zip(&radii)
            .map(|(&a, &rho)| [T::lit(rho * a.cos()), T::lit(rho * a.sin())])
            .collect();
        return Ok(Shape::Polygon { vertices });
    }
    Err(Error::SamplerExhausted {
        attempts: params.max_attempts,
    })
}

/// Uniform random rotation as a unit quaternion `[w, x, y, z]`.
pub fn random_rotation<R: Rng + ?Sized>(rng: &mut R) -> [f64; 4] {
    let u1: f64 = rng.random();
    let u2: f64 = rng.random();
    let u3: f64 = rng.random();
    let tau = std::f64::consts::TAU;
    let a = (1.0 - u1).sqrt();
    let b = u1.sqrt();
    [b * (tau * u3).cos(), a * (tau * u2).sin(), a * (tau * u2).cos(), b * (tau * u3).sin()]
}

/// Ellipsoid with major semi-axis `radius` and random orientation; equal
/// ratios of one give a sphere.
pub fn sample_ellipsoid<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    params: &EllipsoidParams,
    radius: T,
) -> Shape<T> {
    let mid = uniform(rng, params.mid_ratio);
    let minor = uniform(rng, params.minor_ratio);
    let rotation = random_rotation(rng);
    if mid == 1.0 && minor == 1.0 {
        return Shape::Sphere { radius };
    }
    Shape::Ellipsoid {
        semi_axes: [radius, radius * T::lit(mid), radius * T::lit(minor)],
        rotation: rotation.map(T::lit),
    }
}
