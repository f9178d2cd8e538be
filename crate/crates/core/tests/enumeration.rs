use std::collections::HashSet;
use std::time::{Duration, Instant};

use tatami_core::enumeration::*;
use tatami_core::*;

#[test]
fn formula_matches_enumeration_up_to_six() {
    let start = Instant::now();
    for n in 1..=6u32 {
        let region = Region::rectangle(n as usize, n as usize).unwrap();
        for m in 0..=n + 2 {
            let counted = count_by_enumeration(&region, m as usize).unwrap();
            assert_eq!(counted.method, CountMethod::Enumeration);
            assert_eq!(counted.count, count_square_coverings(n, m).count, "n={n} m={m}");
        }
    }
    assert!(start.elapsed() < Duration::from_secs(300));
}

#[test]
fn eight_by_eight_with_eight_monominoes() {
    let region = Region::rectangle(8, 8).unwrap();
    assert_eq!(count_by_enumeration(&region, 8).unwrap().count, 1024);
    assert_eq!(count_square_coverings(8, 8).count, 1024);
    assert_eq!(count_square_coverings(7, 9).count, 0);
}

#[test]
fn enumerated_coverings_are_distinct_complete_and_legal() {
    let region = Region::rectangle(5, 6).unwrap();
    let mut seen = HashSet::new();
    for c in enumerate_coverings(&region, EnumConstraints::default()).unwrap() {
        assert!(c.is_complete());
        let tiles: Vec<Tile> = c.tiles().cloned().collect();
        assert!(violations(&region, &tiles).is_empty());
        assert!(seen.insert(c.placements()));
    }
    let parallel = enumerate_parallel(&region, EnumConstraints::default()).unwrap();
    assert_eq!(parallel.len(), seen.len());
}

#[test]
fn kind_counts_are_respected() {
    let region = Region::rectangle(6, 6).unwrap();
    let any_v: Vec<Covering> = enumerate_coverings(&region, EnumConstraints::monominoes(2)).unwrap().collect();
    let v = any_v[any_v.len() / 2].count_kind(TileKind::VDomino);
    let c = EnumConstraints { vertical_domino_count: Some(v), ..EnumConstraints::monominoes(2) };
    let all: Vec<Covering> = enumerate_coverings(&region, c).unwrap().collect();
    assert!(!all.is_empty());
    for x in &all {
        assert_eq!(x.count_kind(TileKind::Monomino), 2);
        assert_eq!(x.count_kind(TileKind::VDomino), v);
    }
    assert_eq!(any_v.iter().filter(|x| x.count_kind(TileKind::VDomino) == v).count(), all.len());
}

#[test]
fn random_coverings_are_deterministic() {
    let region = Region::rectangle(6, 8).unwrap();
    for seed in 0..20 {
        let a = random_covering(&region, EnumConstraints::default(), seed).unwrap().unwrap();
        let b = random_covering(&region, EnumConstraints::default(), seed).unwrap().unwrap();
        assert_eq!(a, b);
        assert!(a.is_complete());
    }
}
