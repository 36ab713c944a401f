mod common;

use common::{analysis_classes, copy_fixpoint_classes, random_set};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wangtile::{analyze_codes, assemble, validate_stochastic, Entity, Side, TileSet};

#[test]
fn builtin_sets_match_copy_fixpoint() {
    for set in [TileSet::c16(), TileSet::v16(), TileSet::periodic(2), TileSet::periodic(3), TileSet::cubes16()] {
        assert_eq!(analysis_classes(&analyze_codes(&set)), copy_fixpoint_classes(&set));
    }
}

#[test]
fn builtin_vertex_class_counts() {
    assert_eq!(analyze_codes(&TileSet::c16()).vertex_classes().len(), 1);
    assert_eq!(analyze_codes(&TileSet::v16()).vertex_classes().len(), 2);
    assert_eq!(analyze_codes(&TileSet::periodic(2)).vertex_classes().len(), 1);
}

fn random_vertex_set(seed: u64, dim: usize) -> (TileSet, Vec<Vec<u32>>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.random_range(1..=3u32);
    let ncorners = 1 << dim;
    let mut corners: Vec<Vec<u32>> = Vec::new();
    for _ in 0..rng.random_range(1..=12) {
        let c: Vec<u32> = (0..ncorners).map(|_| rng.random_range(0..k)).collect();
        if !corners.contains(&c) {
            corners.push(c);
        }
    }
    (TileSet::from_vertex_codes(dim, k, &corners).unwrap(), corners)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn analysis_equals_fixpoint_2d(seed in any::<u64>()) {
        let set = random_set(&mut ChaCha8Rng::seed_from_u64(seed), 2, 20, 4);
        prop_assert_eq!(analysis_classes(&analyze_codes(&set)), copy_fixpoint_classes(&set));
    }

    #[test]
    fn analysis_equals_fixpoint_3d(seed in any::<u64>()) {
        let set = random_set(&mut ChaCha8Rng::seed_from_u64(seed), 3, 12, 3);
        prop_assert_eq!(analysis_classes(&analyze_codes(&set)), copy_fixpoint_classes(&set));
    }

    #[test]
    fn classes_partition_all_instances(seed in any::<u64>(), dim in 2usize..=3) {
        let set = random_set(&mut ChaCha8Rng::seed_from_u64(seed), dim, 10, 3);
        let a = analyze_codes(&set);
        let total: usize = a.classes().iter().map(|c| c.members().len()).sum();
        prop_assert_eq!(total, set.len() * Entity::all(dim).len());
        for (id, class) in a.classes().iter().enumerate() {
            for &(t, e) in class.members() {
                prop_assert_eq!(a.class_of(t, e), id);
                prop_assert_eq!(e.fixed_mask(), class.fixed_mask());
            }
        }
    }

    #[test]
    fn vertex_sets_keep_one_code_per_class(seed in any::<u64>(), dim in 2usize..=3) {
        let (set, corners) = random_vertex_set(seed, dim);
        let a = analyze_codes(&set);
        for class in a.vertex_classes() {
            let mut codes: Vec<u32> = class
                .members()
                .iter()
                .map(|&(t, e)| corners[t][e.sides_mask() as usize])
                .collect();
            codes.dedup();
            prop_assert_eq!(codes.len(), 1, "class mixes vertex codes");
        }
    }

    #[test]
    fn assembly_is_valid_and_linear(seed in any::<u64>(), nx in 1usize..12, ny in 1usize..12) {
        for set in [TileSet::c16(), TileSet::v16()] {
            let t = assemble(&set, [nx, ny, 1], seed).unwrap();
            prop_assert_eq!(t.cells().len(), nx * ny);
            prop_assert!(t.first_mismatch(&set).is_none());
            prop_assert_eq!(&t, &assemble(&set, [nx, ny, 1], seed).unwrap());
        }
    }

    #[test]
    fn cube_assembly_is_valid(seed in any::<u64>(), n in 1usize..5) {
        let set = TileSet::cubes16();
        let t = assemble(&set, [n, n + 1, n], seed).unwrap();
        prop_assert!(t.first_mismatch(&set).is_none());
    }

    #[test]
    fn stochastic_sets_always_assemble(seed in any::<u64>()) {
        let set = random_set(&mut ChaCha8Rng::seed_from_u64(seed), 2, 20, 2);
        if validate_stochastic(&set).is_stochastic {
            let t = assemble(&set, [6, 5, 1], seed).unwrap();
            prop_assert!(t.first_mismatch(&set).is_none());
        }
    }
}

#[test]
fn mismatching_codes_are_detected() {
    let set = TileSet::c16();
    let mut t = assemble(&set, [4, 4, 1], 3).unwrap();
    let first = t.get([0, 0, 0]);
    let east = set.code(first, 0, Side::High);
    let bad = (0..set.len()).find(|&u| set.code(u, 0, Side::Low) != east).unwrap();
    let mut cells = t.cells().to_vec();
    cells[t.linear_index([1, 0, 0])] = bad;
    t = wangtile::Tiling::from_cells([4, 4, 1], cells, 3).unwrap();
    assert!(t.first_mismatch(&set).is_some());
}
