//! Particle shapes with exact signed distance, and the shape samplers.

mod ellipse;
mod polygon;
mod sampler;

pub use sampler::{
    random_rotation, sample_ellipsoid, sample_polygon, EllipsoidParams, PolygonParams, ShapeSampler,
};

use crate::error::{Error, Result};
use crate::scalar::{norm3, sub3, Real};

/// Particle shape in its own frame, centred at the origin.
#[derive(Clone, Debug, PartialEq)]
pub enum Shape<T> {
    /// Disk in 2D, sphere in 3D.
    Sphere { radius: T },
    /// 2D ellipse rotated counter-clockwise by `angle`.
    Ellipse { semi_axes: [T; 2], angle: T },
    /// Ellipsoid rotated by the unit quaternion `[w, x, y, z]`.
    Ellipsoid { semi_axes: [T; 3], rotation: [T; 4] },
    /// Simple, counter-clockwise polygon containing the origin.
    Polygon { vertices: Vec<[T; 2]> },
}

impl<T: Real> Shape<T> {
    /// Largest distance from the origin to the boundary.
    pub fn extent(&self) -> T {
        match self {
            Shape::Sphere { radius } => *radius,
            Shape::Ellipse { semi_axes, .. } => semi_axes[0].max(semi_axes[1]),
            Shape::Ellipsoid { semi_axes, .. } => semi_axes[0].max(semi_axes[1]).max(semi_axes[2]),
            Shape::Polygon { vertices } => vertices
                .iter()
                .fold(T::zero(), |m, v| m.max(v[0].hypot(v[1]))),
        }
    }

    /// Short name used in particle lists.
    pub fn kind(&self) -> &'static str {
        match self {
            Shape::Sphere { .. } => "sphere",
            Shape::Ellipse { .. } => "ellipse",
            Shape::Ellipsoid { .. } => "ellipsoid",
            Shape::Polygon { .. } => "polygon",
        }
    }

    /// Signed distance from `p` (relative to the shape centre) to the
    /// boundary; negative inside. In 2D `p[2]` is ignored by planar shapes.
    pub fn signed_distance(&self, p: [T; 3]) -> T {
        match self {
            Shape::Sphere { radius } => norm3(p) - *radius,
            Shape::Ellipse { semi_axes, angle } => {
                let (s, c) = angle.sin_cos();
                let local = [c * p[0] + s * p[1], -s * p[0] + c * p[1]];
                ellipse::ellipse_signed_distance(*semi_axes, local)
            }
            Shape::Ellipsoid { semi_axes, rotation } => {
                let r = rotation_matrix(*rotation);
                let local = [0, 1, 2].map(|i| r[0][i] * p[0] + r[1][i] * p[1] + r[2][i] * p[2]);
                ellipse::ellipsoid_signed_distance(*semi_axes, local)
            }
            Shape::Polygon { vertices } => polygon::polygon_signed_distance(vertices, [p[0], p[1]]),
        }
    }
}

/// Rotation matrix of a unit quaternion `[w, x, y, z]`.
pub fn rotation_matrix<T: Real>(q: [T; 4]) -> [[T; 3]; 3] {
    let [w, x, y, z] = q;
    let one = T::one();
    let two = T::lit(2.0);
    [
        [one - two * (y * y + z * z), two * (x * y - w * z), two * (x * z + w * y)],
        [two * (x * y + w * z), one - two * (x * x + z * z), two * (y * z - w * x)],
        [two * (x * z - w * y), two * (y * z + w * x), one - two * (x * x + y * y)],
    ]
}

/// A placed particle: a shape, its centre (tile-local, `center[2] = 0` in
/// 2D) and the radius r̄ of a circumscribed circle/sphere about the centre.
#[derive(Clone, Debug, PartialEq)]
pub struct Particle<T> {
    pub shape: Shape<T>,
    pub center: [T; 3],
    pub circumscribed_radius: T,
}

impl<T: Real> Particle<T> {
    /// Particle whose r̄ is the exact extent of `shape`.
    pub fn new(shape: Shape<T>, center: [T; 3]) -> Particle<T> {
        let circumscribed_radius = shape.extent();
        Particle {
            shape,
            center,
            circumscribed_radius,
        }
    }

    /// Particle with a prescribed r̄, which must bound the shape up to
    /// rounding of the vertex coordinates.
    pub fn with_radius(shape: Shape<T>, center: [T; 3], radius: T) -> Result<Particle<T>> {
        let slack = T::one() + T::epsilon() * T::lit(16.0);
        if !(radius * slack >= shape.extent()) {
            return Err(Error::InvalidParameter(format!(
                "radius {radius} does not circumscribe a shape of extent {}",
                shape.extent()
            )));
        }
        Ok(Particle {
            shape,
            center,
            circumscribed_radius: radius,
        })
    }

    pub fn signed_distance(&self, x: [T; 3]) -> T {
        self.shape.signed_distance(sub3(x, self.center))
    }

    pub fn contains(&self, x: [T; 3]) -> bool {
        self.signed_distance(x) < T::zero()
    }

    pub fn translated(&self, t: [T; 3]) -> Particle<T> {
        Particle {
            shape: self.shape.clone(),
            center: [0, 1, 2].map(|i| self.center[i] + t[i]),
            circumscribed_radius: self.circumscribed_radius,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_examples() {
        let p = Particle::new(Shape::Sphere { radius: 0.1f64 }, [0.0; 3]);
        assert!((p.signed_distance([0.3, 0.0, 0.0]) - 0.2).abs() < 1e-15);
        assert!((p.signed_distance([0.0; 3]) + 0.1).abs() < 1e-15);
    }

    #[test]
    fn rotated_ellipse() {
        let e = Shape::Ellipse {
            semi_axes: [0.2, 0.1],
            angle: std::f64::consts::FRAC_PI_2,
        };
        // major axis now along y
        assert!((e.signed_distance([0.0, 0.3, 0.0]) - 0.1).abs() < 1e-12);
        assert!((e.signed_distance([0.3, 0.0, 0.0]) - 0.2).abs() < 1e-12);
    }

    #[test]
    fn rotated_ellipsoid() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        // 90 degrees about z: local x maps to world y
        let e = Shape::Ellipsoid {
            semi_axes: [0.2, 0.1, 0.05],
            rotation: [h, 0.0, 0.0, h],
        };
        assert!((e.signed_distance([0.0, 0.5, 0.0]) - 0.3).abs() < 1e-12);
        assert!((e.signed_distance([0.5, 0.0, 0.0]) - 0.4).abs() < 1e-12);
        assert!((e.signed_distance([0.0, 0.0, 0.5]) - 0.45).abs() < 1e-12);
    }

    #[test]
    fn radius_must_circumscribe() {
        let s = Shape::Sphere { radius: 0.1 };
        assert!(Particle::with_radius(s.clone(), [0.0; 3], 0.05).is_err());
        assert!(Particle::with_radius(s, [0.0; 3], 0.1).is_ok());
    }
}
