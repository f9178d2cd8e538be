//! JSON bodies. Field names here are the wire contract.

use serde::{Deserialize, Serialize};
use tatami_core::noku::Player;
use tatami_core::structure::Contradiction;
use tatami_core::{Mode, PieceBudget, PlacementVerdict, Tile, TileId, TileKind, Triple, Vertex};

pub const SCHEMA_VERSION: u32 = 1;

/// Tile kinds on the wire: `"M"`, `"H"` or `"V"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    M,
    H,
    V,
}

impl From<TileKind> for Kind {
    fn from(k: TileKind) -> Kind {
        match k {
            TileKind::Monomino => Kind::M,
            TileKind::HDomino => Kind::H,
            TileKind::VDomino => Kind::V,
        }
    }
}

impl From<Kind> for TileKind {
    fn from(k: Kind) -> TileKind {
        match k {
            Kind::M => TileKind::Monomino,
            Kind::H => TileKind::HDomino,
            Kind::V => TileKind::VDomino,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PuzzleSummary {
    pub id: String,
    pub title: String,
    pub mode: Mode,
    pub difficulty: Option<String>,
    pub height: usize,
    pub width: usize,
    pub area: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PuzzleList {
    pub schema_version: u32,
    pub puzzles: Vec<PuzzleSummary>,
}

/// Exactly one of `puzzle_id` and `document` must be set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CreateSession {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub puzzle_id: Option<String>,
    /// A puzzle document in the text format.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub document: Option<String>,
    /// Noku only: the engine plays the side the human does not.
    #[serde(default)]
    pub vs_ai: bool,
    /// Noku vs-AI only: the human's side, `player1` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub human: Option<Player>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaceRequest {
    pub kind: Kind,
    pub row: usize,
    pub col: usize,
    /// Noku only: when set, the move is refused unless this side is to move.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub player: Option<Player>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RemoveRequest {
    pub tile_id: TileId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileView {
    pub id: TileId,
    pub kind: Kind,
    pub row: usize,
    pub col: usize,
    pub tag: Option<String>,
    pub given: bool,
}

impl TileView {
    pub fn of(t: &Tile, given: bool) -> TileView {
        TileView { id: t.id, kind: t.kind.into(), row: t.anchor.row, col: t.anchor.col, tag: t.tag.clone(), given }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineProgress {
    pub current: Triple,
    pub target: Triple,
    pub matched: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TomokuProgress {
    pub rows: Vec<LineProgress>,
    pub cols: Vec<LineProgress>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NokuStatus {
    pub to_move: Player,
    pub vs_ai: bool,
    pub human: Option<Player>,
    pub kinds: Vec<Kind>,
    pub legal_moves: usize,
    pub winner: Option<Player>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Status {
    /// Every cell is covered.
    pub complete: bool,
    /// The puzzle's goal is met; for Noku, the game is over.
    pub solved: bool,
    pub monominoes: usize,
    pub dominoes: usize,
    pub piece_budget: Option<PieceBudget>,
    pub tomoku: Option<TomokuProgress>,
    pub noku: Option<NokuStatus>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionState {
    pub schema_version: u32,
    pub session_id: String,
    pub puzzle_id: Option<String>,
    pub title: String,
    pub mode: Mode,
    pub height: usize,
    pub width: usize,
    /// `#` for cells of the region, `.` for holes.
    pub region: Vec<String>,
    /// Glyph rows: `•` monomino, `<>` and `^v` dominoes, `.` empty.
    pub board: Vec<String>,
    pub tiles: Vec<TileView>,
    pub moves: usize,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveView {
    pub player: Player,
    pub kind: Kind,
    pub row: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceResponse {
    pub schema_version: u32,
    pub verdict: PlacementVerdict,
    /// The engine's reply in a vs-AI Noku session.
    pub ai_move: Option<MoveView>,
    pub state: SessionState,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemoveResponse {
    pub schema_version: u32,
    pub removed: TileView,
    pub state: SessionState,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AiMoveResponse {
    pub schema_version: u32,
    pub ai_move: MoveView,
    pub state: SessionState,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeductionView {
    pub kind: Kind,
    pub row: usize,
    pub col: usize,
    pub cause: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Hint {
    Deductions { deductions: Vec<DeductionView> },
    Contradiction { contradiction: Contradiction },
    NoForcedMove,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HintResponse {
    pub schema_version: u32,
    pub hint: Hint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorDetail {
    pub code: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub schema_version: u32,
    pub error: ErrorDetail,
}
