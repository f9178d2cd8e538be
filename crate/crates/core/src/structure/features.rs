//! Ray-sourcing features of a complete covering.
//!
//! The local patterns, with the monomino or square at `(r, c)`:
//!
//! - vortex: a monomino ringed by four dominoes, each with one end beside
//!   it. Clockwise has its top domino horizontal over `(r-1, c-1)..(r-1, c)`;
//!   counter-clockwise is the mirror image.
//! - bidimer: two parallel dominoes filling a 2x2 square that has no
//!   boundary cell.
//! - vee: the same square touching the boundary, so only two of its rays
//!   run into the region.
//! - loner: a monomino that is not a vortex centre and shares an edge with
//!   a horizontal and a vertical domino that share an edge with each other.
//!
//! A ray is a diagonal line of parallel dominoes, all forced by one feature
//! on an otherwise empty region, that starts beside a perpendicular domino
//! of that feature.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::covering::{Covering, Tile, TileId, TileKind};
use crate::error::TatamiError;
use crate::geometry::Cell;
use crate::structure::{propagate, Propagation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chirality {
    Clockwise,
    CounterClockwise,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vortex {
    pub centre: TileId,
    /// Top, right, bottom and left dominoes.
    pub dominoes: [TileId; 4],
    pub chirality: Chirality,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureReport {
    pub loners: Vec<TileId>,
    pub vees: Vec<[TileId; 2]>,
    pub bidimers: Vec<[TileId; 2]>,
    pub vortices: Vec<Vortex>,
    pub rays: Vec<Vec<TileId>>,
    pub bond_cells: Vec<Cell>,
}

impl FeatureReport {
    /// Tiles that make up some feature.
    pub fn feature_tiles(&self) -> BTreeSet<TileId> {
        let mut out: BTreeSet<TileId> = self.loners.iter().copied().collect();
        out.extend(self.vees.iter().flatten());
        out.extend(self.bidimers.iter().flatten());
        for v in &self.vortices {
            out.insert(v.centre);
            out.extend(v.dominoes);
        }
        out
    }
}

fn tile_with(c: &Covering, cell: Option<Cell>, kind: TileKind, anchor: Option<Cell>) -> Option<TileId> {
    let t = c.tile_at(cell?)?;
    (t.kind == kind && Some(t.anchor) == anchor).then_some(t.id)
}

fn vortex_at(c: &Covering, m: &Tile) -> Option<Vortex> {
    let (r, col) = (m.anchor.row, m.anchor.col);
    if r == 0 || col == 0 {
        return None;
    }
    let at = |dr: isize, dc: isize| {
        let row = r.checked_add_signed(dr)?;
        let cc = col.checked_add_signed(dc)?;
        Some(Cell::new(row, cc))
    };
    use TileKind::{HDomino as H, VDomino as V};
    let cw = [
        tile_with(c, at(-1, 0), H, at(-1, -1)),
        tile_with(c, at(0, 1), V, at(-1, 1)),
        tile_with(c, at(1, 0), H, at(1, 0)),
        tile_with(c, at(0, -1), V, at(0, -1)),
    ];
    let ccw = [
        tile_with(c, at(-1, 0), H, at(-1, 0)),
        tile_with(c, at(0, 1), V, at(0, 1)),
        tile_with(c, at(1, 0), H, at(1, -1)),
        tile_with(c, at(0, -1), V, at(-1, -1)),
    ];
    for (ids, chirality) in [(cw, Chirality::Clockwise), (ccw, Chirality::CounterClockwise)] {
        if let [Some(a), Some(b), Some(d), Some(e)] = ids {
            return Some(Vortex { centre: m.id, dominoes: [a, b, d, e], chirality });
        }
    }
    None
}

/// The horizontal and vertical dominoes that make `m` a loner, if any.
fn loner_arms(c: &Covering, m: &Tile) -> Option<(TileId, TileId)> {
    let neighbours: Vec<&Tile> = m.anchor.neighbours().filter_map(|n| c.tile_at(n)).collect();
    for h in neighbours.iter().filter(|t| t.kind == TileKind::HDomino) {
        for v in neighbours.iter().filter(|t| t.kind == TileKind::VDomino) {
            let touching = h.cells().any(|hc| hc.neighbours().any(|n| v.span().contains(n)));
            if touching {
                return Some((h.id, v.id));
            }
        }
    }
    None
}

/// Parallel pairs filling a 2x2 square, keyed by whether the square has a
/// boundary cell.
fn squares(c: &Covering) -> Vec<([TileId; 2], bool)> {
    let region = c.region();
    let mut out = Vec::new();
    for t in c.tiles() {
        let partner = match t.kind {
            TileKind::HDomino => tile_with(c, Some(t.anchor.down()), TileKind::HDomino, Some(t.anchor.down())),
            TileKind::VDomino => tile_with(c, Some(t.anchor.right()), TileKind::VDomino, Some(t.anchor.right())),
            TileKind::Monomino => None,
        };
        if let Some(p) = partner {
            let (r, col) = (t.anchor.row, t.anchor.col);
            let on_boundary = [(r, col), (r, col + 1), (r + 1, col), (r + 1, col + 1)]
                .into_iter()
                .any(|(a, b)| region.is_boundary_cell(Cell::new(a, b)));
            out.push(([t.id, p], on_boundary));
        }
    }
    out
}

fn perpendicular(a: TileKind, b: TileKind) -> bool {
    matches!((a, b), (TileKind::HDomino, TileKind::VDomino) | (TileKind::VDomino, TileKind::HDomino))
}

/// Tiles of `covering` forced by `seed` alone, in deduction order.
fn forced_by(covering: &Covering, seed: &[TileId]) -> Vec<TileId> {
    let placements = seed.iter().filter_map(|&id| covering.tile(id)).map(|t| t.placement());
    let Ok(start) = Covering::from_placements(covering.region().clone(), placements) else {
        return Vec::new();
    };
    match propagate(&start) {
        Propagation::Fixpoint { trace, .. } => trace
            .iter()
            .filter_map(|d| {
                let t = covering.tile_at(d.anchor)?;
                (t.kind == d.kind && t.anchor == d.anchor).then_some(t.id)
            })
            .collect(),
        Propagation::Contradiction(_) => Vec::new(),
    }
}

/// Diagonal lines of parallel forced dominoes that start beside a
/// perpendicular domino of the feature.
fn rays_from(covering: &Covering, seed: &[TileId], forced: &BTreeSet<TileId>) -> Vec<Vec<TileId>> {
    let tile = |id: TileId| covering.tile(id).expect("tile of covering");
    let seed_tiles: Vec<&Tile> = seed.iter().map(|&id| tile(id)).collect();
    let mut out: Vec<Vec<TileId>> = Vec::new();
    for &id in forced {
        let start = tile(id);
        let beside = seed_tiles.iter().any(|s| {
            perpendicular(s.kind, start.kind) && start.cells().any(|c| c.neighbours().any(|n| s.span().contains(n)))
        });
        if !beside {
            continue;
        }
        let mut any = false;
        for (dr, dc) in [(-1isize, -1isize), (-1, 1), (1, -1), (1, 1)] {
            let mut ray = vec![id];
            let mut at = start.anchor;
            loop {
                let next = at.row.checked_add_signed(dr).zip(at.col.checked_add_signed(dc)).map(|(r, c)| Cell::new(r, c));
                let Some(next) = next else { break };
                match covering.tile_at(next) {
                    Some(t) if t.kind == start.kind && t.anchor == next && forced.contains(&t.id) => {
                        ray.push(t.id);
                        at = next;
                    }
                    _ => break,
                }
            }
            if ray.len() > 1 {
                any = true;
                out.push(ray);
            }
        }
        if !any {
            out.push(vec![id]);
        }
    }
    out
}

pub fn classify_features(covering: &Covering) -> Result<FeatureReport, TatamiError> {
    if !covering.is_complete() {
        return Err(TatamiError::IncompleteCovering);
    }
    let mut report = FeatureReport::default();
    let mut seeds: Vec<Vec<TileId>> = Vec::new();
    let monominoes: Vec<&Tile> = covering.tiles().filter(|t| t.kind == TileKind::Monomino).collect();
    for m in &monominoes {
        if let Some(v) = vortex_at(covering, m) {
            let mut seed = vec![v.centre];
            seed.extend(v.dominoes);
            seeds.push(seed);
            report.vortices.push(v);
        } else if let Some((h, v)) = loner_arms(covering, m) {
            seeds.push(vec![m.id, h, v]);
            report.loners.push(m.id);
        }
    }
    for (pair, on_boundary) in squares(covering) {
        seeds.push(pair.to_vec());
        if on_boundary {
            report.vees.push(pair);
        } else {
            report.bidimers.push(pair);
        }
    }
    let feature_tiles = report.feature_tiles();
    let mut in_ray = BTreeSet::new();
    for seed in &seeds {
        let forced: BTreeSet<TileId> =
            forced_by(covering, seed).into_iter().filter(|id| !feature_tiles.contains(id)).collect();
        for ray in rays_from(covering, seed, &forced) {
            if !report.rays.contains(&ray) {
                in_ray.extend(ray.iter().copied());
                report.rays.push(ray);
            }
        }
    }
    report.bond_cells = covering
        .tiles()
        .filter(|t| !feature_tiles.contains(&t.id) && !in_ray.contains(&t.id))
        .flat_map(|t| t.cells())
        .collect();
    report.bond_cells.sort();
    Ok(report)
}
