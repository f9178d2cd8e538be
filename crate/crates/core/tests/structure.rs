use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tatami_core::enumeration::{enumerate_coverings, random_covering, EnumConstraints};
use tatami_core::solver::solve_all;
use tatami_core::structure::*;
use tatami_core::*;

const RICH: [&str; 6] = [
    "<><><>^<>•^•^<><><>^<><><>",
    "^<><>^v^<>v^v^<><>^v^<><>•",
    "v^<>^v^v^<>v^v^<>^v^v^<><>",
    "^v<>v^v^v^<>v^v^•v^v^v^<>^",
    "v<><>v^v^v^<>v^v<>v^v^v^^v",
    "<><><>v•v•v•<>v<><>v•v•vv•",
];

const RICH_SEED: [&str; 6] = [
    ".........•.•..............",
    ".........................•",
    "..<>......................",
    "................•.........",
    "........................^.",
    "<><><>.•.•.•<>......•.•.v•",
];

const CROSSING: [&str; 6] = [
    "...•.....•....",
    "..<>.....<>...",
    "..............",
    "..............",
    "..............",
    "..............",
];

/// Completions by plain depth-first search with no deductions.
fn naive_completions(c: &Covering, out: &mut Vec<Covering>) {
    let Some(cell) = c.first_uncovered() else {
        out.push(c.clone());
        return;
    };
    for kind in TileKind::ALL {
        if let Ok(next) = c.place(kind, cell) {
            naive_completions(&next, out);
        }
    }
}

fn placement_set(cs: &[Covering]) -> BTreeSet<Vec<(TileKind, Cell)>> {
    cs.iter().map(|c| c.placements()).collect()
}

/// A random legal partial covering: a random complete covering with each
/// tile kept with probability `keep`.
fn random_partial(rng: &mut ChaCha8Rng, h: usize, w: usize, keep: f64) -> Covering {
    let region = Region::rectangle(h, w).unwrap();
    let full = random_covering(&region, EnumConstraints::default(), rng.gen()).unwrap().unwrap();
    let kept: Vec<(TileKind, Cell)> = full.placements().into_iter().filter(|_| rng.gen_bool(keep)).collect();
    Covering::from_placements(region, kept).unwrap()
}

/// Random legal placements with no completion guaranteed.
fn random_scatter(rng: &mut ChaCha8Rng, h: usize, w: usize, tries: usize) -> Covering {
    let mut c = Covering::new(Region::rectangle(h, w).unwrap());
    for _ in 0..tries {
        let kind = *TileKind::ALL.choose(rng).unwrap();
        let cell = Cell::new(rng.gen_range(0..h), rng.gen_range(0..w));
        if let Ok(next) = c.place(kind, cell) {
            c = next;
        }
    }
    c
}

enum Outcome {
    Fixpoint(Covering),
    Stuck,
}

/// Applies one randomly chosen deduction at a time.
fn shuffled_closure(c: &Covering, rng: &mut ChaCha8Rng) -> Outcome {
    let mut c = c.clone();
    loop {
        match forced_moves(&c) {
            Forcing::Contradiction(_) => return Outcome::Stuck,
            Forcing::Deductions(ds) if ds.is_empty() => return Outcome::Fixpoint(c),
            Forcing::Deductions(ds) => {
                let d = ds.choose(rng).unwrap();
                match c.place(d.kind, d.anchor) {
                    Ok(next) => c = next,
                    Err(_) => return Outcome::Stuck,
                }
            }
        }
    }
}

#[test]
fn propagation_is_confluent() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..1200 {
        let (h, w) = (rng.gen_range(2..=6), rng.gen_range(2..=8));
        let start = if i % 3 == 0 { random_scatter(&mut rng, h, w, 6) } else { random_partial(&mut rng, h, w, 0.25) };
        let expected = propagate(&start);
        for _ in 0..3 {
            match (&expected, shuffled_closure(&start, &mut rng)) {
                (Propagation::Fixpoint { covering, .. }, Outcome::Fixpoint(other)) => assert_eq!(covering, &other, "{start:?}"),
                (Propagation::Contradiction(_), Outcome::Stuck) => {}
                _ => panic!("orders disagree on {start:?}"),
            }
        }
    }
}

#[test]
fn trace_replays_to_the_fixpoint() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let start = random_partial(&mut rng, 5, 7, 0.2);
        if let Propagation::Fixpoint { covering, trace } = propagate(&start) {
            assert_eq!(replay(&start, &trace).unwrap(), covering);
        }
    }
}

#[test]
fn deductions_are_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for i in 0..300 {
        let (h, w) = (rng.gen_range(2..=4), rng.gen_range(2..=5));
        let start = if i % 2 == 0 { random_scatter(&mut rng, h, w, 4) } else { random_partial(&mut rng, h, w, 0.3) };
        let mut completions = Vec::new();
        naive_completions(&start, &mut completions);
        match forced_moves(&start) {
            Forcing::Deductions(ds) => {
                for d in ds {
                    for s in &completions {
                        assert!(s.tile_at(d.anchor).is_some_and(|t| t.kind == d.kind && t.anchor == d.anchor), "{start:?} {d:?}");
                    }
                }
            }
            Forcing::Contradiction(_) => assert!(completions.is_empty(), "{start:?}"),
        }
        if propagate(&start).covering().is_none() {
            assert!(completions.is_empty(), "{start:?}");
        }
    }
}

#[test]
fn propagate_then_complete_equals_complete() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for i in 0..60 {
        let start = if i % 2 == 0 { random_partial(&mut rng, 5, 7, 0.3) } else { random_scatter(&mut rng, 5, 7, 8) };
        let mut direct = Vec::new();
        naive_completions(&start, &mut direct);
        let mut after = Vec::new();
        if let Propagation::Fixpoint { covering, .. } = propagate(&start) {
            naive_completions(&covering, &mut after);
        }
        assert_eq!(placement_set(&direct), placement_set(&after));
        if start.tile_count() > 0 {
            let mut spec = PuzzleSpec::new(Mode::Consultant, start.region().clone());
            spec.given_tiles = start.tiles().cloned().collect();
            let solved = solve_all(&spec).unwrap();
            assert_eq!(placement_set(solved.solutions()), placement_set(&direct));
        }
    }
}

#[test]
fn empty_and_complete_boards_force_nothing() {
    let empty = Covering::new(Region::rectangle(4, 4).unwrap());
    assert_eq!(forced_moves(&empty), Forcing::Deductions(vec![]));
    let full = Covering::from_glyph_rows(&RICH).unwrap();
    assert_eq!(propagate(&full), Propagation::Fixpoint { covering: full.clone(), trace: vec![] });
}

#[test]
fn exercise_has_a_unique_forced_completion() {
    let seed = Covering::from_glyph_rows(&RICH_SEED).unwrap();
    let full = Covering::from_glyph_rows(&RICH).unwrap();
    let out = propagate(&seed);
    assert_eq!(out.covering(), Some(&full));
    let mut spec = PuzzleSpec::new(Mode::Consultant, seed.region().clone());
    spec.given_tiles = seed.tiles().cloned().collect();
    assert_eq!(placement_set(solve_all(&spec).unwrap().solutions()), placement_set(&[full]));
}

#[test]
fn crossing_rays_cannot_be_completed() {
    let c = Covering::from_glyph_rows(&CROSSING).unwrap();
    assert!(matches!(propagate(&c), Propagation::Contradiction(_)));
    // Each ray on its own is fine.
    for half in [&c.placements()[..2], &c.placements()[2..]] {
        let one = Covering::from_placements(c.region().clone(), half.iter().copied()).unwrap();
        assert!(propagate(&one).covering().is_some());
    }
    // Filling the rest with monominoes regardless of legality breaks the law.
    let mut tiles: Vec<Tile> = c.tiles().cloned().collect();
    let forced = match propagate(&Covering::from_placements(c.region().clone(), c.placements()[..2].iter().copied()).unwrap()) {
        Propagation::Fixpoint { covering, .. } => covering,
        Propagation::Contradiction(_) => unreachable!(),
    };
    let mut next = 100;
    for t in forced.tiles() {
        if t.cells().all(|cell| c.is_empty_cell(cell)) {
            tiles.push(Tile::new(next, t.kind, t.anchor));
            next += 1;
        }
    }
    let covered: HashSet<Cell> = tiles.iter().flat_map(|t| t.cells()).collect();
    for cell in c.region().cells() {
        if !covered.contains(&cell) {
            tiles.push(Tile::new(next, TileKind::Monomino, cell));
            next += 1;
        }
    }
    assert!(!violations(c.region(), &tiles).is_empty());
}

#[test]
fn ray_step_from_an_edge_contact() {
    // The horizontal domino's left end lies against the lower half of the
    // vertical one.
    let c = Covering::from_placements(
        Region::rectangle(4, 4).unwrap(),
        [(TileKind::VDomino, Cell::new(0, 0)), (TileKind::HDomino, Cell::new(1, 1))],
    )
    .unwrap();
    let Forcing::Deductions(ds) = forced_moves(&c) else { panic!("contradiction") };
    assert_eq!(ds, vec![Deduction { kind: TileKind::HDomino, anchor: Cell::new(2, 0), cause: Vertex::new(2, 1) }]);
}

#[test]
fn rich_covering_has_every_feature() {
    let c = Covering::from_glyph_rows(&RICH).unwrap();
    let r = classify_features(&c).unwrap();
    assert!(!r.loners.is_empty() && !r.vees.is_empty() && !r.bidimers.is_empty() && !r.vortices.is_empty(), "{r:?}");
}

#[test]
fn horizontal_bond_has_no_features() {
    let c = Covering::from_glyph_rows(&["<><><>", "•<><>•", "<><><>", "•<><>•"]).unwrap();
    let r = classify_features(&c).unwrap();
    assert_eq!(r.feature_tiles().len(), 0);
    assert!(r.rays.is_empty());
    assert_eq!(r.bond_cells.len(), 24);
}

#[test]
fn centred_pinwheel_is_one_vortex_of_its_chirality() {
    for (rows, chirality) in [
        (["<><>^", "^<>^v", "v^•v^", "^v<>v", "v<><>"], Chirality::Clockwise),
        (["^<><>", "v^<>^", "^v•^v", "v<>v^", "<><>v"], Chirality::CounterClockwise),
    ] {
        let c = Covering::from_glyph_rows(&rows).unwrap();
        let r = classify_features(&c).unwrap();
        assert_eq!(r.vortices.len(), 1, "{rows:?}");
        assert_eq!(r.vortices[0].chirality, chirality);
        // The pinwheel alone forces the rest.
        let centre = c.tile(r.vortices[0].centre).unwrap().anchor;
        let seed: Vec<(TileKind, Cell)> = std::iter::once(r.vortices[0].centre)
            .chain(r.vortices[0].dominoes)
            .map(|id| c.tile(id).unwrap().placement())
            .collect();
        assert_eq!(centre, Cell::new(2, 2));
        let start = Covering::from_placements(c.region().clone(), seed).unwrap();
        assert_eq!(propagate(&start).covering(), Some(&c));
    }
}

fn rectangles(max_h: usize, max_w: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=max_h).flat_map(move |h| (1..=max_w).map(move |w| (h, w)))
}

#[test]
fn decomposition_accounts_for_every_tile() {
    for (h, w) in rectangles(5, 6) {
        let region = Region::rectangle(h, w).unwrap();
        for c in enumerate_coverings(&region, EnumConstraints::default()).unwrap() {
            let r = classify_features(&c).unwrap();
            let mut seen = r.feature_tiles();
            seen.extend(r.rays.iter().flatten());
            for cell in &r.bond_cells {
                seen.insert(c.tile_at(*cell).unwrap().id);
            }
            assert_eq!(seen.len(), c.tile_count(), "{c:?}");
            let mut pinwheel_tiles = HashSet::new();
            for v in &r.vortices {
                for id in v.dominoes.iter().chain([&v.centre]) {
                    assert!(pinwheel_tiles.insert(*id), "vortices overlap in {c:?}");
                }
            }
        }
    }
}

#[test]
fn boundary_signature_is_injective_on_rectangles() {
    for (r, c) in rectangles(4, 7).filter(|&(r, c)| r < c) {
        let region = Region::rectangle(r, c).unwrap();
        let mut seen = HashSet::new();
        let mut total = 0;
        for cov in enumerate_coverings(&region, EnumConstraints::default()).unwrap() {
            total += 1;
            assert!(seen.insert(boundary_signature(&cov)), "{r}x{c}: {cov:?}");
        }
        assert!(total > 0);
    }
}

#[test]
fn one_row_signature_is_the_whole_covering() {
    let region = Region::rectangle(1, 7).unwrap();
    for c in enumerate_coverings(&region, EnumConstraints::default()).unwrap() {
        assert_eq!(boundary_signature(&c).0, c.placements().into_iter().map(|(k, a)| (a, k)).collect::<Vec<_>>());
    }
}
