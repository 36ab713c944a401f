use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wangtile::geometry::{sample_ellipsoid, sample_polygon, Particle, Shape};
use wangtile::{EllipsoidParams, PolygonParams};

fn qmul(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

/// World vector expressed in the frame rotated by `q`.
fn to_local(q: [f64; 4], v: [f64; 3]) -> [f64; 3] {
    let conj = [q[0], -q[1], -q[2], -q[3]];
    let r = qmul(qmul(conj, [0.0, v[0], v[1], v[2]]), q);
    [r[1], r[2], r[3]]
}

fn polygon_contains(vs: &[[f64; 2]], p: [f64; 2]) -> bool {
    let mut inside = false;
    for i in 0..vs.len() {
        let (a, b) = (vs[i], vs[(i + 1) % vs.len()]);
        if (a[1] > p[1]) != (b[1] > p[1]) {
            let x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
            if p[0] < x {
                inside = !inside;
            }
        }
    }
    inside
}

fn segment_distance(a: [f64; 2], b: [f64; 2], p: [f64; 2]) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let t = (((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / (d[0] * d[0] + d[1] * d[1])).clamp(0.0, 1.0);
    (p[0] - a[0] - t * d[0]).hypot(p[1] - a[1] - t * d[1])
}

/// Independent inside test of a shape centred at the origin.
fn inside(shape: &Shape<f64>, p: [f64; 3]) -> bool {
    match shape {
        Shape::Sphere { radius } => p[0] * p[0] + p[1] * p[1] + p[2] * p[2] < radius * radius,
        Shape::Ellipse { semi_axes: [a, b], angle } => {
            let (s, c) = angle.sin_cos();
            let (x, y) = (c * p[0] + s * p[1], -s * p[0] + c * p[1]);
            (x / a).powi(2) + (y / b).powi(2) < 1.0
        }
        Shape::Ellipsoid { semi_axes, rotation } => {
            let l = to_local(*rotation, p);
            (0..3).map(|i| (l[i] / semi_axes[i]).powi(2)).sum::<f64>() < 1.0
        }
        Shape::Polygon { vertices } => polygon_contains(vertices, [p[0], p[1]]),
    }
}

/// Points spread over the boundary, in the shape frame.
fn boundary_samples(shape: &Shape<f64>) -> Vec<[f64; 3]> {
    let tau = std::f64::consts::TAU;
    match shape {
        Shape::Ellipse { semi_axes: [a, b], angle } => {
            let (s, c) = angle.sin_cos();
            (0..20000)
                .map(|k| {
                    let t = tau * k as f64 / 20000.0;
                    let (x, y) = (a * t.cos(), b * t.sin());
                    [c * x - s * y, s * x + c * y, 0.0]
                })
                .collect()
        }
        Shape::Ellipsoid { semi_axes, rotation } => {
            let inv = [rotation[0], -rotation[1], -rotation[2], -rotation[3]];
            let mut v = Vec::new();
            for i in 0..=300 {
                let th = std::f64::consts::PI * i as f64 / 300.0;
                for j in 0..600 {
                    let ph = tau * j as f64 / 600.0;
                    let l = [
                        semi_axes[0] * th.sin() * ph.cos(),
                        semi_axes[1] * th.sin() * ph.sin(),
                        semi_axes[2] * th.cos(),
                    ];
                    v.push(to_local(inv, l));
                }
            }
            v
        }
        _ => unreachable!(),
    }
}

fn random_shape(rng: &mut ChaCha8Rng, kind: u8) -> Shape<f64> {
    let r = rng.random_range(0.02..0.2);
    match kind {
        0 => Shape::Sphere { radius: r },
        1 => {
            let b = r * rng.random_range(0.2..1.0);
            Shape::Ellipse {
                semi_axes: [r, b],
                angle: rng.random_range(-4.0..4.0),
            }
        }
        2 => sample_ellipsoid(
            rng,
            &EllipsoidParams {
                mid_ratio: (0.3, 1.0),
                minor_ratio: (0.2, 0.7),
            },
            r,
        ),
        _ => sample_polygon(rng, &PolygonParams::default(), r).unwrap(),
    }
}

fn planar(shape: &Shape<f64>) -> bool {
    matches!(shape, Shape::Ellipse { .. } | Shape::Polygon { .. })
}

fn random_point(rng: &mut ChaCha8Rng, reach: f64, planar: bool) -> [f64; 3] {
    let z = if planar { 0.0 } else { rng.random_range(-reach..reach) };
    [rng.random_range(-reach..reach), rng.random_range(-reach..reach), z]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sign_agrees_with_inside_test(seed in any::<u64>(), kind in 0u8..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = random_shape(&mut rng, kind);
        let reach = 1.5 * shape.extent();
        for _ in 0..400 {
            let p = random_point(&mut rng, reach, planar(&shape));
            let d = shape.signed_distance(p);
            if d.abs() > 1e-9 {
                prop_assert_eq!(d < 0.0, inside(&shape, p), "point {:?} distance {}", p, d);
            }
        }
    }

    #[test]
    fn circumscribed_sphere_bounds(seed in any::<u64>(), kind in 0u8..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = random_shape(&mut rng, kind);
        let c = [rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5), 0.0];
        let p = Particle::new(shape, c);
        let rbar = p.circumscribed_radius;
        for _ in 0..400 {
            let o = random_point(&mut rng, 4.0 * rbar, planar(&p.shape));
            let x = [c[0] + o[0], c[1] + o[1], c[2] + o[2]];
            let dist = (o[0] * o[0] + o[1] * o[1] + o[2] * o[2]).sqrt();
            let d = p.signed_distance(x);
            prop_assert!(d.abs() <= dist + rbar + 1e-12);
            prop_assert!(d >= dist - rbar - 1e-12);
        }
    }

    #[test]
    fn translation_moves_the_field(seed in any::<u64>(), kind in 0u8..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = random_shape(&mut rng, kind);
        let p = Particle::new(shape, [0.1, -0.2, 0.0]);
        let t = [rng.random_range(-2i32..=2) as f64, rng.random_range(-2i32..=2) as f64, 0.0];
        let q = p.translated(t);
        for _ in 0..100 {
            let x = random_point(&mut rng, 0.5, planar(&p.shape));
            let y = [x[0] + t[0], x[1] + t[1], x[2] + t[2]];
            prop_assert!((p.signed_distance(x) - q.signed_distance(y)).abs() <= 1e-12);
        }
    }

    #[test]
    fn sampled_extent_stays_within_radius(seed in any::<u64>(), r in 0.01f64..0.3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let poly = sample_polygon(&mut rng, &PolygonParams::default(), r).unwrap();
        prop_assert!(poly.extent() <= r * (1.0 + 1e-12));
        let ell = sample_ellipsoid(&mut rng, &EllipsoidParams::default(), r);
        prop_assert!(ell.extent() <= r * (1.0 + 1e-12));
    }

    #[test]
    fn polygon_distance_is_distance_to_edges(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = random_shape(&mut rng, 3);
        let Shape::Polygon { vertices } = &shape else { unreachable!() };
        for _ in 0..200 {
            let p = random_point(&mut rng, 0.3, true);
            let d = (0..vertices.len())
                .map(|i| segment_distance(vertices[i], vertices[(i + 1) % vertices.len()], [p[0], p[1]]))
                .fold(f64::INFINITY, f64::min);
            prop_assert!((shape.signed_distance(p).abs() - d).abs() <= 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn magnitude_matches_boundary_sampling(seed in any::<u64>(), kind in 1u8..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = random_shape(&mut rng, kind);
        let samples = boundary_samples(&shape);
        let spacing = if kind == 1 { 1e-4 } else { 3e-3 };
        for _ in 0..20 {
            let p = random_point(&mut rng, 1.5 * shape.extent(), planar(&shape));
            let sampled = samples
                .iter()
                .map(|s| ((s[0] - p[0]).powi(2) + (s[1] - p[1]).powi(2) + (s[2] - p[2]).powi(2)).sqrt())
                .fold(f64::INFINITY, f64::min);
            let d = shape.signed_distance(p).abs();
            prop_assert!(d <= sampled + 1e-9, "exact {} above sampled {}", d, sampled);
            prop_assert!(sampled - d <= spacing * shape.extent() / 0.1, "exact {} sampled {}", d, sampled);
        }
    }
}
