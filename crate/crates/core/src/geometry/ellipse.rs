//! Exact point-to-ellipse and point-to-ellipsoid distances.
//!
//! The query is reduced to the first quadrant/octant of a frame with axes
//! sorted by decreasing length; the closest point then solves a monotone
//! scalar root problem in the Lagrange parameter `s`, handled by Newton
//! steps safeguarded by a shrinking bracket.

use crate::scalar::Real;

const MAX_ITERATIONS: usize = 200;

/// Root of a decreasing convex function on `[lo, hi]` with `f(lo) ≥ 0 ≥ f(hi)`.
fn bracketed_root<T: Real>(mut lo: T, mut hi: T, f: impl Fn(T) -> (T, T)) -> T {
    let two = T::lit(2.0);
    let mut s = lo;
    for _ in 0..MAX_ITERATIONS {
        let (v, dv) = f(s);
        if v == T::zero() {
            return s;
        }
        if v > T::zero() {
            lo = s;
        } else {
            hi = s;
        }
        let tol = T::epsilon() * T::lit(4.0) * (T::one() + s.abs());
        if hi - lo <= tol {
            return (lo + hi) / two;
        }
        let newton = s - v / dv;
        s = if dv < T::zero() && newton > lo && newton < hi {
            newton
        } else {
            (lo + hi) / two
        };
    }
    (lo + hi) / two
}

fn hypot2<T: Real>(a: T, b: T) -> T {
    a.hypot(b)
}

/// Unsigned distance from `(y0, y1)` (both ≥ 0) to the ellipse with
/// semi-axes `e0 ≥ e1 > 0`.
fn quadrant_distance<T: Real>(e0: T, e1: T, y0: T, y1: T) -> T {
    let zero = T::zero();
    let one = T::one();
    if y1 > zero {
        if y0 > zero {
            let z0 = y0 / e0;
            let z1 = y1 / e1;
            let g = z0 * z0 + z1 * z1 - one;
            if g == zero {
                return zero;
            }
            let r0 = (e0 / e1) * (e0 / e1);
            let n0 = r0 * z0;
            let f = |s: T| {
                let a = n0 / (s + r0);
                let b = z1 / (s + one);
                let v = a * a + b * b - one;
                let dv = -T::lit(2.0) * (a * a / (s + r0) + b * b / (s + one));
                (v, dv)
            };
            let lo = z1 - one;
            let hi = if g < zero { zero } else { hypot2(n0, z1) - one };
            let s = bracketed_root(lo, hi, f);
            let x0 = r0 * y0 / (s + r0);
            let x1 = y1 / (s + one);
            hypot2(x0 - y0, x1 - y1)
        } else {
            (y1 - e1).abs()
        }
    } else {
        let numer0 = e0 * y0;
        let denom0 = e0 * e0 - e1 * e1;
        if numer0 < denom0 {
            let xde0 = numer0 / denom0;
            let x0 = e0 * xde0;
            let x1 = e1 * (one - xde0 * xde0).max(zero).sqrt();
            hypot2(x0 - y0, x1)
        } else {
            (y0 - e0).abs()
        }
    }
}

/// Unsigned distance from `y` (all ≥ 0) to the ellipsoid with semi-axes
/// `e0 ≥ e1 ≥ e2 > 0`.
fn octant_distance<T: Real>(e: [T; 3], y: [T; 3]) -> T {
    let zero = T::zero();
    let one = T::one();
    let [e0, e1, e2] = e;
    let [y0, y1, y2] = y;
    if y2 > zero {
        if y1 > zero {
            if y0 > zero {
                let z = [y0 / e0, y1 / e1, y2 / e2];
                let g = z[0] * z[0] + z[1] * z[1] + z[2] * z[2] - one;
                if g == zero {
                    return zero;
                }
                let r0 = (e0 / e2) * (e0 / e2);
                let r1 = (e1 / e2) * (e1 / e2);
                let n0 = r0 * z[0];
                let n1 = r1 * z[1];
                let f = |s: T| {
                    let a = n0 / (s + r0);
                    let b = n1 / (s + r1);
                    let c = z[2] / (s + one);
                    let v = a * a + b * b + c * c - one;
                    let dv = -T::lit(2.0) * (a * a / (s + r0) + b * b / (s + r1) + c * c / (s + one));
                    (v, dv)
                };
                let lo = z[2] - one;
                let hi = if g < zero {
                    zero
                } else {
                    (n0 * n0 + n1 * n1 + z[2] * z[2]).sqrt() - one
                };
                let s = bracketed_root(lo, hi, f);
                let x = [r0 * y0 / (s + r0), r1 * y1 / (s + r1), y2 / (s + one)];
                ((x[0] - y0).powi(2) + (x[1] - y1).powi(2) + (x[2] - y2).powi(2)).sqrt()
            } else {
                quadrant_distance(e1, e2, y1, y2)
            }
        } else if y0 > zero {
            quadrant_distance(e0, e2, y0, y2)
        } else {
            (y2 - e2).abs()
        }
    } else {
        let denom0 = e0 * e0 - e2 * e2;
        let denom1 = e1 * e1 - e2 * e2;
        let numer0 = e0 * y0;
        let numer1 = e1 * y1;
        if numer0 < denom0 && numer1 < denom1 {
            let xde0 = numer0 / denom0;
            let xde1 = numer1 / denom1;
            let discr = one - xde0 * xde0 - xde1 * xde1;
            if discr > zero {
                let x0 = e0 * xde0;
                let x1 = e1 * xde1;
                let x2 = e2 * discr.sqrt();
                return ((x0 - y0).powi(2) + (x1 - y1).powi(2) + x2 * x2).sqrt();
            }
        }
        quadrant_distance(e0, e1, y0, y1)
    }
}

/// Signed distance to an axis-aligned ellipse centred at the origin.
pub(crate) fn ellipse_signed_distance<T: Real>(semi: [T; 2], p: [T; 2]) -> T {
    let (e, y) = if semi[0] >= semi[1] {
        (semi, [p[0].abs(), p[1].abs()])
    } else {
        ([semi[1], semi[0]], [p[1].abs(), p[0].abs()])
    };
    let g = (y[0] / e[0]).powi(2) + (y[1] / e[1]).powi(2) - T::one();
    let d = quadrant_distance(e[0], e[1], y[0], y[1]);
    if g < T::zero() {
        -d
    } else {
        d
    }
}

/// Signed distance to an axis-aligned ellipsoid centred at the origin.
pub(crate) fn ellipsoid_signed_distance<T: Real>(semi: [T; 3], p: [T; 3]) -> T {
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| semi[b].partial_cmp(&semi[a]).unwrap_or(std::cmp::Ordering::Equal));
    let e = order.map(|i| semi[i]);
    let y = order.map(|i| p[i].abs());
    let g = (0..3).fold(-T::one(), |acc, i| acc + (y[i] / e[i]).powi(2));
    let d = octant_distance(e, y);
    if g < T::zero() {
        -d
    } else {
        d
    }
}
