//! Signed distance to a simple polygon.

use crate::scalar::Real;

fn segment_distance_sq<T: Real>(p: [T; 2], a: [T; 2], b: [T; 2]) -> T {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let ap = [p[0] - a[0], p[1] - a[1]];
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    let t = if len2 > T::zero() {
        ((ap[0] * ab[0] + ap[1] * ab[1]) / len2).max(T::zero()).min(T::one())
    } else {
        T::zero()
    };
    let d = [ap[0] - t * ab[0], ap[1] - t * ab[1]];
    d[0] * d[0] + d[1] * d[1]
}

/// Non-zero winding number test.
pub(crate) fn winding_number<T: Real>(vertices: &[[T; 2]], p: [T; 2]) -> i32 {
    let mut wn = 0;
    let n = vertices.len();
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let cross = (b[0] - a[0]) * (p[1] - a[1]) - (p[0] - a[0]) * (b[1] - a[1]);
        if a[1] <= p[1] {
            if b[1] > p[1] && cross > T::zero() {
                wn += 1;
            }
        } else if b[1] <= p[1] && cross < T::zero() {
            wn -= 1;
        }
    }
    wn
}

/// Signed distance from `p` to the polygon boundary, negative inside.
pub(crate) fn polygon_signed_distance<T: Real>(vertices: &[[T; 2]], p: [T; 2]) -> T {
    let n = vertices.len();
    let mut best = T::infinity();
    for i in 0..n {
        best = best.min(segment_distance_sq(p, vertices[i], vertices[(i + 1) % n]));
    }
    let d = best.sqrt();
    if winding_number(vertices, p) != 0 {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square() {
        let sq: [[f64; 2]; 4] = [[-0.5, -0.5], [0.5, -0.5], [0.5, 0.5], [-0.5, 0.5]];
        assert!((polygon_signed_distance(&sq, [0.0, 0.0]) + 0.5).abs() < 1e-15);
        assert!((polygon_signed_distance(&sq, [1.0, 0.0]) - 0.5).abs() < 1e-15);
        let corner = polygon_signed_distance(&sq, [1.5, 1.5]);
        assert!((corner - 2f64.sqrt()).abs() < 1e-15);
    }
}
