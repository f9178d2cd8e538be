//! Forced moves, propagation to a fixpoint, feature classification and
//! boundary signatures.
//!
//! The deduction rule is local to a vertex whose four cells are in the
//! region. If two adjacent cells there belong to two different tiles and the
//! other two cells are empty, the empty pair must become one domino,
//! otherwise four tiles would meet. Iterating the rule grows rays.

mod features;
mod signature;

pub use features::{classify_features, Chirality, FeatureReport, Vortex};
pub use signature::{boundary_signature, BoundarySignature};

use serde::{Deserialize, Serialize};

use crate::covering::{Covering, TileId, TileKind};
use crate::geometry::{Cell, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Deduction {
    pub kind: TileKind,
    pub anchor: Cell,
    /// The vertex whose configuration forces the tile.
    pub cause: Vertex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", content = "cell", rename_all = "snake_case")]
pub enum ContradictionReason {
    FourMeet,
    UncoverableCell(Cell),
}

/// A local configuration that no completion can satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Contradiction {
    pub vertex: Vertex,
    pub reason: ContradictionReason,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Forcing {
    Deductions(Vec<Deduction>),
    Contradiction(Contradiction),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Propagation {
    Fixpoint { covering: Covering, trace: Vec<Deduction> },
    Contradiction(Contradiction),
}

impl Propagation {
    pub fn covering(&self) -> Option<&Covering> {
        match self {
            Propagation::Fixpoint { covering, .. } => Some(covering),
            Propagation::Contradiction(_) => None,
        }
    }
}

/// Which tile kinds may still be used to cover empty cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Rules {
    pub allow_monomino: bool,
}

impl Default for Rules {
    fn default() -> Self {
        Rules { allow_monomino: true }
    }
}

pub fn forced_moves(covering: &Covering) -> Forcing {
    forced_moves_with(covering, Rules::default())
}

pub(crate) fn forced_moves_with(covering: &Covering, rules: Rules) -> Forcing {
    let region = covering.region();
    let mut deductions: Vec<Deduction> = Vec::new();
    for v in region.interior_vertices() {
        let q = v.quadrants().expect("interior");
        let owners: [Option<TileId>; 4] = q.map(|c| covering.tile_at(c).map(|t| t.id));
        let covered = owners.iter().filter(|o| o.is_some()).count();
        let four_meet = Forcing::Contradiction(Contradiction { vertex: v, reason: ContradictionReason::FourMeet });
        match covered {
            4 | 3 => {
                let mut ids: Vec<TileId> = owners.iter().flatten().copied().collect();
                ids.sort_unstable();
                ids.dedup();
                if ids.len() == covered {
                    return four_meet;
                }
            }
            2 => {
                // Quadrant order: 0 top-left, 1 top-right, 2 bottom-left, 3 bottom-right.
                let (a, b, empty) = match owners.map(|o| o.is_some()) {
                    [true, true, false, false] => (0, 1, (q[2], TileKind::HDomino)),
                    [false, false, true, true] => (2, 3, (q[0], TileKind::HDomino)),
                    [true, false, true, false] => (0, 2, (q[1], TileKind::VDomino)),
                    [false, true, false, true] => (1, 3, (q[0], TileKind::VDomino)),
                    // Diagonal: the two empty cells cannot share a tile.
                    _ => return four_meet,
                };
                if owners[a] != owners[b] {
                    let (anchor, kind) = empty;
                    if !covering.is_legal(kind, anchor) {
                        return four_meet;
                    }
                    if !deductions.iter().any(|d| d.kind == kind && d.anchor == anchor) {
                        deductions.push(Deduction { kind, anchor, cause: v });
                    }
                }
            }
            _ => {}
        }
    }
    for cell in region.cells() {
        if covering.is_covered(cell) || can_cover(covering, cell, rules) {
            continue;
        }
        return Forcing::Contradiction(Contradiction {
            vertex: Vertex::new(cell.row, cell.col),
            reason: ContradictionReason::UncoverableCell(cell),
        });
    }
    Forcing::Deductions(deductions)
}

/// Whether some legal tile could cover the empty `cell`.
pub(crate) fn can_cover(covering: &Covering, cell: Cell, rules: Rules) -> bool {
    (rules.allow_monomino && covering.is_legal(TileKind::Monomino, cell))
        || covering.is_legal(TileKind::HDomino, cell)
        || covering.is_legal(TileKind::VDomino, cell)
        || cell.left().is_some_and(|l| covering.is_legal(TileKind::HDomino, l))
        || cell.up().is_some_and(|u| covering.is_legal(TileKind::VDomino, u))
}

/// Applies forced deductions round by round (row-major vertex order within a
/// round) until nothing more is forced.
pub fn propagate(covering: &Covering) -> Propagation {
    let mut working = covering.clone();
    let mut trace = Vec::new();
    match propagate_in_place(&mut working, Rules::default(), &mut trace) {
        Ok(()) => Propagation::Fixpoint { covering: working, trace },
        Err(c) => Propagation::Contradiction(c),
    }
}

pub(crate) fn propagate_in_place(
    covering: &mut Covering,
    rules: Rules,
    trace: &mut Vec<Deduction>,
) -> Result<(), Contradiction> {
    loop {
        let deductions = match forced_moves_with(covering, rules) {
            Forcing::Contradiction(c) => return Err(c),
            Forcing::Deductions(d) if d.is_empty() => return Ok(()),
            Forcing::Deductions(d) => d,
        };
        for d in deductions {
            if !covering.is_legal(d.kind, d.anchor) {
                // Two forced tiles overlap or together complete a four-meet.
                return Err(Contradiction { vertex: d.cause, reason: ContradictionReason::FourMeet });
            }
            covering.place_unchecked(d.kind, d.anchor, None);
            trace.push(d);
        }
    }
}

/// Replays `trace` on `covering` in the given order.
pub fn replay(covering: &Covering, trace: &[Deduction]) -> Result<Covering, crate::TatamiError> {
    let mut c = covering.clone();
    for d in trace {
        c.try_place_mut(d.kind, d.anchor, None)?;
    }
    Ok(c)
}
