use thiserror::Error;

use crate::covering::{PlacementVerdict, TileId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TatamiError {
    #[error("region has no cells")]
    EmptyRegion,
    #[error("illegal placement: {0:?}")]
    IllegalPlacement(PlacementVerdict),
    #[error("no tile with id {0}")]
    UnknownTile(TileId),
    #[error("covering is not complete")]
    IncompleteCovering,
    #[error("region is not a full rectangle")]
    NonRectangular,
    #[error("malformed puzzle: {0}")]
    MalformedPuzzle(String),
    #[error("inconsistent constraints: {0}")]
    InconsistentConstraints(String),
    #[error("region of area {area} exceeds the limit of {limit}")]
    RegionTooLarge { area: usize, limit: usize },
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("syntax error on line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("schema error: {0}")]
    Schema(String),
}
