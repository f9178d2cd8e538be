//! Noku: players alternately place legal tiles; the player who cannot move
//! loses.
//!
//! The game is impartial, so a position's value depends only on the tiles
//! on the board. Solving memoizes on the layout; the census counts the raw
//! game tree (move orders that transpose are counted separately) using
//! memoized subtree sizes.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::covering::{Covering, TileKind};
use crate::error::TatamiError;
use crate::geometry::{Cell, Region};

/// Bounding boxes up to this many cells fit the memo key.
pub const NOKU_AREA_LIMIT: usize = 42;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Player {
    #[serde(rename = "player1")]
    One,
    #[serde(rename = "player2")]
    Two,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::One => "Player 1",
            Player::Two => "Player 2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ruleset {
    allowed_kinds: Vec<TileKind>,
}

impl Ruleset {
    pub fn new<I: IntoIterator<Item = TileKind>>(kinds: I) -> Result<Ruleset, TatamiError> {
        let mut allowed_kinds: Vec<TileKind> = kinds.into_iter().collect();
        allowed_kinds.sort_by_key(|k| TileKind::ALL.iter().position(|a| a == k));
        allowed_kinds.dedup();
        if allowed_kinds.is_empty() {
            return Err(TatamiError::MalformedPuzzle("a ruleset needs at least one tile kind".into()));
        }
        Ok(Ruleset { allowed_kinds })
    }

    pub fn all_kinds() -> Ruleset {
        Ruleset { allowed_kinds: TileKind::ALL.to_vec() }
    }

    pub fn allowed_kinds(&self) -> &[TileKind] {
        &self.allowed_kinds
    }

    pub fn allows(&self, kind: TileKind) -> bool {
        self.allowed_kinds.contains(&kind)
    }

    /// Letters of the allowed kinds, e.g. `MHV`.
    pub fn letters(&self) -> String {
        self.allowed_kinds.iter().map(|k| k.letter()).collect()
    }
}

impl Default for Ruleset {
    fn default() -> Self {
        Ruleset::all_kinds()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameState {
    pub covering: Covering,
    pub to_move: Player,
}

impl GameState {
    pub fn new(region: Region) -> GameState {
        GameState { covering: Covering::new(region), to_move: Player::One }
    }

    /// Plays a move for the side to move.
    pub fn play(&self, ruleset: &Ruleset, kind: TileKind, anchor: Cell) -> Result<GameState, TatamiError> {
        if !ruleset.allows(kind) {
            return Err(TatamiError::MalformedPuzzle(format!("{kind:?} is not allowed in this game")));
        }
        Ok(GameState { covering: self.covering.place(kind, anchor)?, to_move: self.to_move.other() })
    }
}

pub type Move = (TileKind, Cell);

/// Legal placements of allowed kinds, grouped by kind (monomino,
/// horizontal, vertical) and row-major within a kind.
pub fn legal_moves(state: &GameState, ruleset: &Ruleset) -> Vec<Move> {
    moves_of(&state.covering, ruleset)
}

fn moves_of(c: &Covering, ruleset: &Ruleset) -> Vec<Move> {
    let cells: Vec<Cell> = c.region().cells().filter(|&cell| c.is_empty_cell(cell)).collect();
    let mut out = Vec::new();
    for &kind in ruleset.allowed_kinds() {
        out.extend(cells.iter().filter(|&&cell| c.is_legal(kind, cell)).map(|&cell| (kind, cell)));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameVerdict {
    pub winner: Player,
    pub best_move: Option<Move>,
    pub tree_nodes: Option<u128>,
}

/// Limits on how much work a solve may do.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NokuBudget {
    pub max_area: usize,
    /// Distinct positions the memo may hold.
    pub max_positions: usize,
}

impl Default for NokuBudget {
    fn default() -> Self {
        NokuBudget { max_area: 20, max_positions: 50_000_000 }
    }
}

impl NokuBudget {
    fn check(&self, region: &Region) -> Result<(), TatamiError> {
        let limit = self.max_area.min(NOKU_AREA_LIMIT);
        if region.area() > limit || region.bbox_len() > NOKU_AREA_LIMIT {
            return Err(TatamiError::RegionTooLarge { area: region.area(), limit });
        }
        Ok(())
    }
}

struct Solver<'a> {
    ruleset: &'a Ruleset,
    memo: HashMap<u128, bool>,
    budget: NokuBudget,
}

impl Solver<'_> {
    /// Whether the side to move wins.
    fn wins(&mut self, c: &mut Covering) -> Result<bool, TatamiError> {
        let key = c.layout_code();
        if let Some(&w) = self.memo.get(&key) {
            return Ok(w);
        }
        if self.memo.len() >= self.budget.max_positions {
            return Err(TatamiError::BudgetExceeded(format!("more than {} positions", self.budget.max_positions)));
        }
        let mut win = false;
        for (kind, cell) in moves_of(c, self.ruleset) {
            let id = c.place_unchecked(kind, cell, None);
            let child = self.wins(c);
            c.remove_mut(id).expect("tile just placed");
            if !child? {
                win = true;
                break;
            }
        }
        self.memo.insert(key, win);
        Ok(win)
    }
}

pub fn solve_noku(region: &Region, ruleset: &Ruleset) -> Result<GameVerdict, TatamiError> {
    solve_position(&GameState::new(region.clone()), ruleset, NokuBudget::default())
}

/// Solves from an arbitrary position. `best_move` is the first winning
/// move in canonical order, or the first legal move when every move loses.
pub fn solve_position(state: &GameState, ruleset: &Ruleset, budget: NokuBudget) -> Result<GameVerdict, TatamiError> {
    budget.check(state.covering.region())?;
    let mut solver = Solver { ruleset, memo: HashMap::new(), budget };
    let mut c = state.covering.clone();
    let moves = moves_of(&c, ruleset);
    let mut best = None;
    for &(kind, cell) in &moves {
        let id = c.place_unchecked(kind, cell, None);
        let child = solver.wins(&mut c);
        c.remove_mut(id).expect("tile just placed");
        if !child? {
            best = Some((kind, cell));
            break;
        }
    }
    let winner = if best.is_some() { state.to_move } else { state.to_move.other() };
    Ok(GameVerdict { winner, best_move: best.or_else(|| moves.first().copied()), tree_nodes: None })
}

/// Nodes of the full game tree from the empty board, root included. Move
/// sequences that reach the same position are counted separately;
/// `memoize` only caches subtree sizes and does not change the result.
pub fn game_tree_nodes(region: &Region, ruleset: &Ruleset, memoize: bool, budget: NokuBudget) -> Result<u128, TatamiError> {
    budget.check(region)?;
    let mut memo = HashMap::new();
    let mut c = Covering::new(region.clone());
    let mut visited = 0usize;
    subtree(&mut c, ruleset, memoize.then_some(&mut memo), &mut visited, budget.max_positions)
}

fn subtree(
    c: &mut Covering,
    ruleset: &Ruleset,
    mut memo: Option<&mut HashMap<u128, u128>>,
    visited: &mut usize,
    limit: usize,
) -> Result<u128, TatamiError> {
    let key = c.layout_code();
    if let Some(&n) = memo.as_ref().and_then(|m| m.get(&key)) {
        return Ok(n);
    }
    *visited += 1;
    if *visited > limit {
        return Err(TatamiError::BudgetExceeded(format!("more than {limit} positions")));
    }
    let mut total = 1u128;
    for (kind, cell) in moves_of(c, ruleset) {
        let id = c.place_unchecked(kind, cell, None);
        let n = subtree(c, ruleset, memo.as_deref_mut(), visited, limit);
        c.remove_mut(id).expect("tile just placed");
        total += n?;
    }
    if let Some(m) = memo {
        m.insert(key, total);
    }
    Ok(total)
}

/// [`game_tree_nodes`] with memoized subtree sizes and the default budget.
pub fn game_tree_stats(region: &Region, ruleset: &Ruleset) -> Result<u128, TatamiError> {
    game_tree_nodes(region, ruleset, true, NokuBudget::default())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeConvention {
    RootCounted,
    RootExcluded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub ruleset: Ruleset,
    pub convention: NodeConvention,
    pub nodes: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Calibration {
    Match { ruleset: Ruleset, convention: NodeConvention, census: Vec<CensusRow> },
    NoMatch { census: Vec<CensusRow> },
}

impl Calibration {
    pub fn census(&self) -> &[CensusRow] {
        match self {
            Calibration::Match { census, .. } | Calibration::NoMatch { census } => census,
        }
    }
}

/// Every nonempty set of kinds, in a fixed order.
pub fn ruleset_space() -> Vec<Ruleset> {
    (1u8..8)
        .map(|mask| Ruleset::new(TileKind::ALL.into_iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, k)| k)).expect("nonempty"))
        .collect()
}

/// Censuses `region` under every ruleset and node convention, and returns
/// the unique configuration whose count equals `target`. Rulesets are
/// counted in parallel on the current rayon pool.
pub fn calibrate_ruleset(region: &Region, target: u128) -> Result<Calibration, TatamiError> {
    use rayon::prelude::*;
    let counts: Vec<(Ruleset, u128)> = ruleset_space()
        .into_par_iter()
        .map(|r| game_tree_stats(region, &r).map(|n| (r, n)))
        .collect::<Result<_, _>>()?;
    let mut census = Vec::new();
    for (ruleset, nodes) in counts {
        census.push(CensusRow { ruleset: ruleset.clone(), convention: NodeConvention::RootCounted, nodes });
        census.push(CensusRow { ruleset, convention: NodeConvention::RootExcluded, nodes: nodes - 1 });
    }
    let hits: Vec<&CensusRow> = census.iter().filter(|r| r.nodes == target).collect();
    Ok(match hits.as_slice() {
        [one] => Calibration::Match { ruleset: one.ruleset.clone(), convention: one.convention, census: census.clone() },
        _ => Calibration::NoMatch { census },
    })
}
