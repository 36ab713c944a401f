use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wangtile::levelset::{GridSpec, TileFields};
use wangtile::morphology::{closed_foam, combine, extract_phase, morph_fields, open_foam, MorphParams};
use wangtile::MorphMode;

/// Sorted random triples, as the cascade produces them.
fn triples(seed: u64, len: usize) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut l = (Vec::new(), Vec::new(), Vec::new());
    for _ in 0..len {
        let mut v = [0; 3].map(|_| rng.random_range(-0.2..0.6));
        v.sort_by(f64::total_cmp);
        l.0.push(v[0]);
        l.1.push(v[1]);
        l.2.push(v[2]);
    }
    l
}

fn solid(f: &[f64]) -> usize {
    extract_phase(f).iter().filter(|&&s| s).count()
}

proptest! {
    #[test]
    fn foam_lower_bounds(seed in any::<u64>(), t_c in 0.0f64..0.1, t_o in 0.0f64..0.1) {
        let (l1, l2, l3) = triples(seed, 500);
        prop_assert!(closed_foam(&l1, &l2, t_c).iter().all(|&v| v >= -t_c));
        prop_assert!(open_foam(&l1, &l2, &l3, t_o).iter().all(|&v| v >= -t_o));
    }

    #[test]
    fn thickness_is_monotone(seed in any::<u64>(), a in 0.0f64..0.1, b in 0.0f64..0.1) {
        let (l1, l2, l3) = triples(seed, 500);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(solid(&closed_foam(&l1, &l2, lo)) <= solid(&closed_foam(&l1, &l2, hi)));
        prop_assert!(solid(&open_foam(&l1, &l2, &l3, lo)) <= solid(&open_foam(&l1, &l2, &l3, hi)));
    }

    #[test]
    fn combination_is_union(seed in any::<u64>(), t_c in 0.0f64..0.1, t_o in 0.0f64..0.1) {
        let (l1, l2, l3) = triples(seed, 500);
        let c = extract_phase(&closed_foam(&l1, &l2, t_c));
        let o = extract_phase(&open_foam(&l1, &l2, &l3, t_o));
        let both = extract_phase(&combine(&closed_foam(&l1, &l2, t_c), &open_foam(&l1, &l2, &l3, t_o)));
        for i in 0..l1.len() {
            prop_assert_eq!(both[i], c[i] || o[i]);
        }
    }
}

#[test]
fn modes_dispatch_and_require_ls3() {
    let grid = GridSpec::new(2, 5).unwrap();
    let (l1, l2, l3) = triples(1, grid.nodes());
    let with3 = TileFields::from_values(grid, vec![l1.clone()], vec![l2.clone()], Some(vec![l3.clone()])).unwrap();
    let without = TileFields::from_values(grid, vec![l1.clone()], vec![l2.clone()], None).unwrap();
    let p = |mode| MorphParams {
        mode,
        t_c: 0.02,
        t_o: 0.03,
        gamma: 0.0,
    };
    assert_eq!(morph_fields(&with3, &p(MorphMode::Particles)).unwrap()[0], l1);
    assert_eq!(morph_fields(&with3, &p(MorphMode::ClosedFoam)).unwrap()[0], closed_foam(&l1, &l2, 0.02));
    assert_eq!(morph_fields(&with3, &p(MorphMode::OpenFoam)).unwrap()[0], open_foam(&l1, &l2, &l3, 0.03));
    assert!(morph_fields(&without, &p(MorphMode::OpenFoam)).is_err());
    assert!(morph_fields(&without, &p(MorphMode::Combined)).is_err());
    assert!(morph_fields(&with3, &MorphParams { t_c: -1.0, ..p(MorphMode::ClosedFoam) }).is_err());
}
