pub mod covering;
pub mod enumeration;
pub mod error;
pub mod geometry;
pub mod noku;
pub mod puzzle;
mod search;
pub mod solver;
pub mod structure;

pub use covering::{violations, Covering, PlacementVerdict, Tile, TileId, TileKind};
pub use error::TatamiError;
pub use geometry::{Cell, Region, Vertex};
pub use puzzle::{Mode, PieceBudget, Projections, PuzzleMeta, PuzzleSpec, Triple};
