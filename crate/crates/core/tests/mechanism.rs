use std::collections::HashMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tatami_core::enumeration::{random_covering, EnumConstraints};
use tatami_core::*;

/// Cells a tile would occupy, written out by hand.
fn cells_of(kind: TileKind, anchor: Cell) -> Vec<Cell> {
    match kind {
        TileKind::Monomino => vec![anchor],
        TileKind::HDomino => vec![anchor, Cell::new(anchor.row, anchor.col + 1)],
        TileKind::VDomino => vec![anchor, Cell::new(anchor.row + 1, anchor.col)],
    }
}

/// Vertices with four in-region cells held by four different tiles, from a
/// plain cell -> owner map.
fn four_meetings(region: &Region, owner: &HashMap<Cell, usize>) -> Vec<Vertex> {
    let mut out = Vec::new();
    for r in 1..region.height() {
        for c in 1..region.width() {
            let quad = [Cell::new(r - 1, c - 1), Cell::new(r - 1, c), Cell::new(r, c - 1), Cell::new(r, c)];
            if !quad.iter().all(|&q| region.contains(q)) {
                continue;
            }
            let ids: Option<Vec<usize>> = quad.iter().map(|q| owner.get(q).copied()).collect();
            if let Some(mut ids) = ids {
                ids.sort_unstable();
                ids.dedup();
                if ids.len() == 4 {
                    out.push(Vertex::new(r, c));
                }
            }
        }
    }
    out
}

fn owner_map(c: &Covering) -> HashMap<Cell, usize> {
    c.tiles().flat_map(|t| cells_of(t.kind, t.anchor).into_iter().map(move |cell| (cell, t.id as usize))).collect()
}

/// What the rules say about a placement, decided without the covering's own
/// bookkeeping.
fn oracle(c: &Covering, kind: TileKind, anchor: Cell) -> PlacementVerdict {
    let cells = cells_of(kind, anchor);
    let outside: Vec<Cell> = cells.iter().copied().filter(|&x| !c.region().contains(x)).collect();
    if !outside.is_empty() {
        return PlacementVerdict::OutOfRegion { cells: outside };
    }
    let mut owner = owner_map(c);
    let mut hit: Vec<TileId> = cells.iter().filter_map(|x| owner.get(x)).map(|&id| id as TileId).collect();
    if !hit.is_empty() {
        hit.dedup();
        return PlacementVerdict::Overlap { tile_ids: hit };
    }
    let before = four_meetings(c.region(), &owner);
    for x in cells {
        owner.insert(x, usize::MAX);
    }
    let after: Vec<Vertex> = four_meetings(c.region(), &owner).into_iter().filter(|v| !before.contains(v)).collect();
    if after.is_empty() {
        PlacementVerdict::Legal
    } else {
        PlacementVerdict::TatamiBlocked { vertices: after }
    }
}

fn random_region(rng: &mut ChaCha8Rng) -> Region {
    loop {
        let (h, w) = (rng.gen_range(1..=6), rng.gen_range(1..=8));
        let holes = rng.gen_bool(0.4);
        let cells: Vec<Cell> = (0..h)
            .flat_map(|r| (0..w).map(move |c| Cell::new(r, c)))
            .filter(|_| !holes || rng.gen_bool(0.85))
            .collect();
        if let Ok(region) = Region::from_cells(cells) {
            return region;
        }
    }
}

/// A random legal state reached by random placement attempts.
fn random_state(rng: &mut ChaCha8Rng, region: Region) -> Covering {
    let mut c = Covering::new(region);
    let attempts = rng.gen_range(0..=c.region().area() * 2);
    for _ in 0..attempts {
        let kind = TileKind::ALL[rng.gen_range(0..3)];
        let cell = Cell::new(rng.gen_range(0..c.region().height()), rng.gen_range(0..c.region().width()));
        if let Ok(next) = c.place(kind, cell) {
            c = next;
        }
    }
    c
}

#[test]
fn can_place_agrees_with_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut probes = 0;
    let mut counts = HashMap::new();
    while probes < 10_000 {
        let region = random_region(&mut rng);
        let state = random_state(&mut rng, region);
        for _ in 0..20 {
            let kind = TileKind::ALL[rng.gen_range(0..3)];
            let cell = Cell::new(rng.gen_range(0..=state.region().height()), rng.gen_range(0..=state.region().width()));
            let got = state.can_place(kind, cell);
            let want = oracle(&state, kind, cell);
            assert_eq!(got, want, "{kind:?} at {cell:?} on\n{}", state.glyph_rows().join("\n"));
            assert_eq!(got.is_legal(), state.place(kind, cell).is_ok());
            *counts.entry(std::mem::discriminant(&got)).or_insert(0) += 1;
            probes += 1;
        }
        let tiles: Vec<Tile> = state.tiles().cloned().collect();
        assert!(violations(state.region(), &tiles).is_empty());
        assert!(four_meetings(state.region(), &owner_map(&state)).is_empty());
    }
    assert_eq!(counts.len(), 4, "every verdict kind should be probed");
}

#[test]
fn violations_match_the_oracle_on_arbitrary_tile_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..2000 {
        let region = Region::rectangle(rng.gen_range(2..=5), rng.gen_range(2..=6)).unwrap();
        // Disjoint tiles with no tatami check at all.
        let mut owner: HashMap<Cell, usize> = HashMap::new();
        let mut tiles = Vec::new();
        for _ in 0..12 {
            let kind = TileKind::ALL[rng.gen_range(0..3)];
            let anchor = Cell::new(rng.gen_range(0..region.height()), rng.gen_range(0..region.width()));
            let cells = cells_of(kind, anchor);
            if cells.iter().all(|&x| region.contains(x) && !owner.contains_key(&x)) {
                for x in cells {
                    owner.insert(x, tiles.len());
                }
                tiles.push(Tile::new(tiles.len() as TileId, kind, anchor));
            }
        }
        assert_eq!(violations(&region, &tiles), four_meetings(&region, &owner));
    }
}

fn covering_strategy() -> impl Strategy<Value = Covering> {
    (1usize..=6, 1usize..=8, any::<u64>()).prop_map(|(h, w, seed)| {
        let region = Region::rectangle(h, w).unwrap();
        random_covering(&region, EnumConstraints::default(), seed).unwrap().expect("rectangles have coverings")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn removing_tiles_keeps_coverings_legal(c in covering_strategy(), picks in prop::collection::vec(any::<usize>(), 0..6)) {
        let mut state = c.clone();
        for p in picks {
            let ids: Vec<TileId> = state.tiles().map(|t| t.id).collect();
            if ids.is_empty() {
                break;
            }
            state = state.remove(ids[p % ids.len()]).unwrap();
            let tiles: Vec<Tile> = state.tiles().cloned().collect();
            prop_assert!(violations(state.region(), &tiles).is_empty());
        }
        prop_assert!(c.is_complete());
    }

    #[test]
    fn remove_then_place_restores_the_layout(c in covering_strategy(), pick in any::<usize>()) {
        let tiles: Vec<Tile> = c.tiles().cloned().collect();
        let t = &tiles[pick % tiles.len()];
        let without = c.remove(t.id).unwrap();
        prop_assert_eq!(without.can_place(t.kind, t.anchor), PlacementVerdict::Legal);
        prop_assert_eq!(without.place(t.kind, t.anchor).unwrap(), c);
    }
}
