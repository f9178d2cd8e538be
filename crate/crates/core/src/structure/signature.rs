use serde::{Deserialize, Serialize};

use crate::covering::{Covering, TileKind};
use crate::geometry::Cell;

/// The tiles that touch the boundary, as `(anchor, kind)` pairs in
/// row-major anchor order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoundarySignature(pub Vec<(Cell, TileKind)>);

impl BoundarySignature {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn boundary_signature(covering: &Covering) -> BoundarySignature {
    let region = covering.region();
    let mut tiles: Vec<(Cell, TileKind)> = covering
        .tiles()
        .filter(|t| t.cells().any(|c| region.is_boundary_cell(c)))
        .map(|t| (t.anchor, t.kind))
        .collect();
    tiles.sort_unstable();
    BoundarySignature(tiles)
}
