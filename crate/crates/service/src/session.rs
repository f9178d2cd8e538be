use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use tatami_core::noku::{legal_moves, solve_position, GameState, NokuBudget, Player, Ruleset};
use tatami_core::solver::projections;
use tatami_core::structure::{forced_moves, Forcing};
use tatami_core::*;
use tatami_io::{parse_puzzle, render_puzzle, PuzzleDocument};

use crate::error::ApiError;
use crate::model::*;

/// One accepted mutation. Refused requests are not logged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum LogEvent {
    Place { kind: Kind, row: usize, col: usize },
    Remove { tile_id: TileId },
    AiMove { kind: Kind, row: usize, col: usize },
}

/// Everything needed to recreate a session before its first move.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionHeader {
    pub session_id: String,
    pub puzzle_id: Option<String>,
    pub document: String,
    pub vs_ai: bool,
    pub human: Option<Player>,
}

#[derive(Clone, Debug)]
struct NokuSide {
    ruleset: Ruleset,
    to_move: Player,
    vs_ai: bool,
    human: Option<Player>,
}

#[derive(Clone, Debug)]
pub struct Session {
    header: SessionHeader,
    spec: PuzzleSpec,
    given: BTreeSet<TileId>,
    covering: Covering,
    noku: Option<NokuSide>,
    log: Vec<LogEvent>,
}

fn schema(e: impl std::fmt::Display) -> ApiError {
    ApiError::Schema(e.to_string())
}

impl Session {
    pub fn create(
        session_id: String,
        puzzle_id: Option<String>,
        doc: &PuzzleDocument,
        vs_ai: bool,
        human: Option<Player>,
    ) -> Result<Session, ApiError> {
        let spec = doc.spec.clone();
        let covering = spec.validate().map_err(schema)?;
        let noku = if spec.mode == Mode::Noku {
            let ruleset = match &spec.noku_kinds {
                Some(kinds) => Ruleset::new(kinds.iter().copied()).map_err(schema)?,
                None => Ruleset::all_kinds(),
            };
            if vs_ai {
                let budget = NokuBudget::default();
                if spec.region.area() > budget.max_area {
                    return Err(ApiError::BudgetExceeded(format!(
                        "vs-AI play is limited to {} cells; this board has {}",
                        budget.max_area,
                        spec.region.area()
                    )));
                }
            }
            let human = vs_ai.then(|| human.unwrap_or(Player::One));
            Some(NokuSide { ruleset, to_move: Player::One, vs_ai, human })
        } else {
            if vs_ai || human.is_some() {
                return Err(ApiError::Schema("vs_ai and human apply to Noku only".into()));
            }
            None
        };
        let header = SessionHeader {
            session_id,
            puzzle_id,
            document: render_puzzle(doc),
            vs_ai,
            human: noku.as_ref().and_then(|n| n.human),
        };
        Ok(Session {
            header,
            given: spec.given_tiles.iter().map(|t| t.id).collect(),
            spec,
            covering,
            noku,
            log: Vec::new(),
        })
    }

    /// Rebuilds a session from its header and log.
    pub fn replay(header: &SessionHeader, events: &[LogEvent]) -> Result<Session, ApiError> {
        let doc = parse_puzzle(&header.document).map_err(schema)?;
        let mut s = Session::create(header.session_id.clone(), header.puzzle_id.clone(), &doc, header.vs_ai, header.human)?;
        for e in events {
            s.apply(e)?;
        }
        Ok(s)
    }

    pub fn id(&self) -> &str {
        &self.header.session_id
    }

    pub fn header(&self) -> &SessionHeader {
        &self.header
    }

    pub fn log(&self) -> &[LogEvent] {
        &self.log
    }

    pub fn covering(&self) -> &Covering {
        &self.covering
    }

    fn apply(&mut self, e: &LogEvent) -> Result<(), ApiError> {
        match *e {
            LogEvent::Place { kind, row, col } => {
                let verdict = self.place(&PlaceRequest { kind, row, col, player: None }, false)?.0;
                if !verdict.is_legal() {
                    return Err(ApiError::Internal(format!("logged placement refused: {verdict:?}")));
                }
            }
            LogEvent::Remove { tile_id } => {
                self.remove(tile_id)?;
            }
            LogEvent::AiMove { kind, row, col } => self.play_noku(kind.into(), Cell::new(row, col), true)?,
        }
        Ok(())
    }

    fn game(&self) -> Option<GameState> {
        self.noku.as_ref().map(|n| GameState { covering: self.covering.clone(), to_move: n.to_move })
    }

    fn winner(&self) -> Option<Player> {
        let n = self.noku.as_ref()?;
        let state = self.game()?;
        legal_moves(&state, &n.ruleset).is_empty().then(|| n.to_move.other())
    }

    pub fn is_solved(&self) -> bool {
        match self.spec.mode {
            Mode::Noku => self.winner().is_some(),
            Mode::Tomoku => {
                self.covering.is_complete()
                    && projections(&self.covering).ok().as_ref() == self.spec.projections.as_ref()
            }
            _ => self.covering.is_complete(),
        }
    }

    fn check_kind(&self, kind: TileKind) -> Result<(), ApiError> {
        let refuse = |m: String| Err(ApiError::KindNotAllowed(m));
        if let Some(n) = &self.noku {
            if !n.ruleset.allows(kind) {
                return refuse(format!("{kind:?} is not allowed in this game"));
            }
            return Ok(());
        }
        if self.spec.mode == Mode::LazyPaver && kind == TileKind::Monomino {
            return refuse("lazy paver uses dominoes only".into());
        }
        if let Some(b) = self.spec.piece_budget {
            let (used, cap) = if kind == TileKind::Monomino {
                (self.covering.count_kind(TileKind::Monomino), b.max_monominoes)
            } else {
                (self.covering.tile_count() - self.covering.count_kind(TileKind::Monomino), b.max_dominoes)
            };
            if cap.is_some_and(|cap| used >= cap) {
                return refuse(format!("the budget for {kind:?} is used up"));
            }
        }
        Ok(())
    }

    fn play_noku(&mut self, kind: TileKind, anchor: Cell, by_ai: bool) -> Result<(), ApiError> {
        let n = self.noku.as_mut().ok_or_else(|| ApiError::NotNoku("not a Noku session".into()))?;
        let ruleset = n.ruleset.clone();
        let state = GameState { covering: self.covering.clone(), to_move: n.to_move };
        let next = state.play(&ruleset, kind, anchor).map_err(|e| ApiError::Internal(e.to_string()))?;
        self.covering = next.covering;
        n.to_move = next.to_move;
        let (row, col, kind) = (anchor.row, anchor.col, Kind::from(kind));
        self.log.push(if by_ai { LogEvent::AiMove { kind, row, col } } else { LogEvent::Place { kind, row, col } });
        Ok(())
    }

    /// Attempts a placement. With `reply` set, a vs-AI Noku session also
    /// plays the engine's answer.
    pub fn place(&mut self, req: &PlaceRequest, reply: bool) -> Result<(PlacementVerdict, Option<MoveView>), ApiError> {
        if self.is_solved() {
            return Err(ApiError::PuzzleComplete);
        }
        let kind = TileKind::from(req.kind);
        let anchor = Cell::new(req.row, req.col);
        if let Some(n) = &self.noku {
            if let Some(p) = req.player.filter(|&p| p != n.to_move) {
                return Err(ApiError::NotYourTurn(format!("{} not {p}", n.to_move)));
            }
            if n.human.is_some_and(|h| h != n.to_move) {
                return Err(ApiError::NotYourTurn(format!("{} (the engine)", n.to_move)));
            }
        } else if req.player.is_some() {
            return Err(ApiError::Schema("player applies to Noku only".into()));
        }
        self.check_kind(kind)?;
        let verdict = self.covering.can_place(kind, anchor);
        if !verdict.is_legal() {
            return Ok((verdict, None));
        }
        if self.noku.is_some() {
            self.play_noku(kind, anchor, false)?;
        } else {
            self.covering = self.covering.place(kind, anchor).map_err(|e| ApiError::Internal(e.to_string()))?;
            self.log.push(LogEvent::Place { kind: req.kind, row: req.row, col: req.col });
        }
        let ai = match &self.noku {
            Some(n) if reply && n.vs_ai && self.winner().is_none() => Some(self.engine_move()?),
            _ => None,
        };
        Ok((verdict, ai))
    }

    pub fn remove(&mut self, tile_id: TileId) -> Result<TileView, ApiError> {
        if self.noku.is_some() {
            return Err(ApiError::RemovalForbidden);
        }
        if self.is_solved() {
            return Err(ApiError::PuzzleComplete);
        }
        if self.given.contains(&tile_id) {
            return Err(ApiError::GivenTile(tile_id));
        }
        let tile = self.covering.tile(tile_id).cloned().ok_or(ApiError::UnknownTile(tile_id))?;
        self.covering = self.covering.remove(tile_id).map_err(|e| ApiError::Internal(e.to_string()))?;
        self.log.push(LogEvent::Remove { tile_id });
        Ok(TileView::of(&tile, false))
    }

    pub fn hint(&self) -> Result<Hint, ApiError> {
        if self.noku.is_some() {
            return Err(ApiError::HintUnavailable("hints are not available in Noku".into()));
        }
        Ok(match forced_moves(&self.covering) {
            Forcing::Contradiction(contradiction) => Hint::Contradiction { contradiction },
            Forcing::Deductions(d) if d.is_empty() => Hint::NoForcedMove,
            Forcing::Deductions(d) => Hint::Deductions {
                deductions: d
                    .into_iter()
                    .map(|d| DeductionView { kind: d.kind.into(), row: d.anchor.row, col: d.anchor.col, cause: d.cause })
                    .collect(),
            },
        })
    }

    /// Plays the engine's move for the side to move.
    pub fn ai_move(&mut self) -> Result<MoveView, ApiError> {
        let n = self.noku.as_ref().ok_or_else(|| ApiError::NotNoku("not a Noku session".into()))?;
        if self.winner().is_some() {
            return Err(ApiError::PuzzleComplete);
        }
        if n.human == Some(n.to_move) {
            return Err(ApiError::NotYourTurn(format!("{} (the human)", n.to_move)));
        }
        self.engine_move()
    }

    fn engine_move(&mut self) -> Result<MoveView, ApiError> {
        let n = self.noku.as_ref().expect("noku session");
        let player = n.to_move;
        let state = self.game().expect("noku session");
        let verdict = solve_position(&state, &n.ruleset, NokuBudget::default()).map_err(|e| match e {
            TatamiError::RegionTooLarge { .. } | TatamiError::BudgetExceeded(_) => ApiError::BudgetExceeded(e.to_string()),
            other => ApiError::Internal(other.to_string()),
        })?;
        let (kind, cell) = verdict.best_move.ok_or(ApiError::PuzzleComplete)?;
        self.play_noku(kind, cell, true)?;
        Ok(MoveView { player, kind: kind.into(), row: cell.row, col: cell.col })
    }

    pub fn state(&self) -> SessionState {
        let region = self.covering.region();
        let monominoes = self.covering.count_kind(TileKind::Monomino);
        let tomoku = self.spec.projections.as_ref().map(|target| {
            let now = Projections::of_tiles(region.height(), region.width(), self.covering.tiles());
            let lines = |cur: &[Triple], want: &[Triple]| {
                cur.iter()
                    .zip(want)
                    .map(|(&current, &target)| LineProgress { current, target, matched: current == target })
                    .collect()
            };
            TomokuProgress { rows: lines(&now.rows, &target.rows), cols: lines(&now.cols, &target.cols) }
        });
        let noku = self.noku.as_ref().map(|n| {
            let moves = legal_moves(&self.game().expect("noku"), &n.ruleset).len();
            NokuStatus {
                to_move: n.to_move,
                vs_ai: n.vs_ai,
                human: n.human,
                kinds: n.ruleset.allowed_kinds().iter().map(|&k| k.into()).collect(),
                legal_moves: moves,
                winner: (moves == 0).then(|| n.to_move.other()),
            }
        });
        SessionState {
            schema_version: SCHEMA_VERSION,
            session_id: self.header.session_id.clone(),
            puzzle_id: self.header.puzzle_id.clone(),
            title: self.spec.meta.title.clone(),
            mode: self.spec.mode,
            height: region.height(),
            width: region.width(),
            region: region.to_ascii().lines().map(str::to_string).collect(),
            board: self.covering.glyph_rows(),
            tiles: self.covering.tiles().map(|t| TileView::of(t, self.given.contains(&t.id))).collect(),
            moves: self.log.len(),
            status: Status {
                complete: self.covering.is_complete(),
                solved: self.is_solved(),
                monominoes,
                dominoes: self.covering.tile_count() - monominoes,
                piece_budget: self.spec.piece_budget,
                tomoku,
                noku,
            },
        }
    }
}
