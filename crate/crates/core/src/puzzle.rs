//! Puzzle instances: the region, the mode and its side constraints.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::covering::{Covering, Tile, TileKind};
use crate::error::TatamiError;
use crate::geometry::Region;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Cover the region with any tiles.
    Oku,
    /// Reconstruct a covering of a rectangle from its row and column triples.
    Tomoku,
    /// Cover the region with dominoes only.
    LazyPaver,
    /// Complete a given partial covering.
    Consultant,
    /// Two players alternate placements; whoever cannot move loses.
    Noku,
}

impl Mode {
    pub const ALL: [Mode; 5] = [Mode::Oku, Mode::Tomoku, Mode::LazyPaver, Mode::Consultant, Mode::Noku];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Oku => "oku",
            Mode::Tomoku => "tomoku",
            Mode::LazyPaver => "lazy-paver",
            Mode::Consultant => "consultant",
            Mode::Noku => "noku",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = TatamiError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| TatamiError::Schema(format!("unknown mode {s:?}")))
    }
}

/// Squares of one row or column covered by vertical dominoes, horizontal
/// dominoes and monominoes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Triple {
    pub v: usize,
    pub h: usize,
    pub m: usize,
}

impl Triple {
    pub const fn new(v: usize, h: usize, m: usize) -> Triple {
        Triple { v, h, m }
    }

    pub fn total(self) -> usize {
        self.v + self.h + self.m
    }

    pub(crate) fn fits_within(self, target: Triple) -> bool {
        self.v <= target.v && self.h <= target.h && self.m <= target.m
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.v, self.h, self.m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Projections {
    pub rows: Vec<Triple>,
    pub cols: Vec<Triple>,
}

impl Projections {
    pub fn zeroed(height: usize, width: usize) -> Projections {
        Projections { rows: vec![Triple::default(); height], cols: vec![Triple::default(); width] }
    }

    /// Running triples of the tiles placed so far. Tiles are assumed to lie
    /// within `height` x `width`.
    pub fn of_tiles<'a, I: IntoIterator<Item = &'a Tile>>(height: usize, width: usize, tiles: I) -> Projections {
        let mut p = Projections::zeroed(height, width);
        for t in tiles {
            p.add(t.kind, t.anchor.row, t.anchor.col);
        }
        p
    }

    pub(crate) fn add(&mut self, kind: TileKind, row: usize, col: usize) {
        match kind {
            TileKind::VDomino => {
                self.rows[row].v += 1;
                self.rows[row + 1].v += 1;
                self.cols[col].v += 2;
            }
            TileKind::HDomino => {
                self.rows[row].h += 2;
                self.cols[col].h += 1;
                self.cols[col + 1].h += 1;
            }
            TileKind::Monomino => {
                self.rows[row].m += 1;
                self.cols[col].m += 1;
            }
        }
    }

    /// Checks the necessary conditions for an `height` x `width` instance:
    /// line totals, domino parity and matching row/column sums.
    pub fn is_consistent(&self, height: usize, width: usize) -> bool {
        if self.rows.len() != height || self.cols.len() != width {
            return false;
        }
        let rows_ok = self.rows.iter().all(|t| t.total() == width && t.h % 2 == 0);
        let cols_ok = self.cols.iter().all(|t| t.total() == height && t.v % 2 == 0);
        let sum = |ts: &[Triple], f: fn(&Triple) -> usize| ts.iter().map(f).sum::<usize>();
        rows_ok
            && cols_ok
            && sum(&self.rows, |t| t.v) == sum(&self.cols, |t| t.v)
            && sum(&self.rows, |t| t.h) == sum(&self.cols, |t| t.h)
            && sum(&self.rows, |t| t.m) == sum(&self.cols, |t| t.m)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PieceBudget {
    pub max_monominoes: Option<usize>,
    pub max_dominoes: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PuzzleMeta {
    pub id: String,
    pub title: String,
    pub difficulty: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuzzleSpec {
    pub mode: Mode,
    pub region: Region,
    pub given_tiles: Vec<Tile>,
    pub projections: Option<Projections>,
    pub piece_budget: Option<PieceBudget>,
    /// Tile kinds allowed in Noku; all kinds when absent.
    pub noku_kinds: Option<Vec<TileKind>>,
    pub meta: PuzzleMeta,
}

impl PuzzleSpec {
    pub fn new(mode: Mode, region: Region) -> PuzzleSpec {
        PuzzleSpec {
            mode,
            region,
            given_tiles: Vec::new(),
            projections: None,
            piece_budget: None,
            noku_kinds: None,
            meta: PuzzleMeta::default(),
        }
    }

    /// Checks that the fields the mode needs are present and that the given
    /// tiles form a legal partial covering, which is returned.
    pub fn validate(&self) -> Result<Covering, TatamiError> {
        let malformed = |m: &str| Err(TatamiError::MalformedPuzzle(m.to_string()));
        match self.mode {
            Mode::Tomoku => {
                if !self.region.is_rectangle() {
                    return malformed("tomoku needs a rectangular region");
                }
                match &self.projections {
                    None => return malformed("tomoku needs projections"),
                    Some(p) if p.rows.len() != self.region.height() || p.cols.len() != self.region.width() => {
                        return malformed("projection dimensions do not match the region");
                    }
                    Some(_) => {}
                }
            }
            Mode::Consultant if self.given_tiles.is_empty() => {
                return malformed("consultant needs given tiles");
            }
            Mode::Noku if self.noku_kinds.as_ref().is_some_and(|k| k.is_empty()) => {
                return malformed("noku needs at least one tile kind");
            }
            _ => {}
        }
        if self.mode == Mode::LazyPaver && self.given_tiles.iter().any(|t| t.kind == TileKind::Monomino) {
            return malformed("lazy paver forbids monominoes");
        }
        Covering::from_tiles(self.region.clone(), &self.given_tiles)
            .map_err(|e| TatamiError::MalformedPuzzle(format!("given tiles: {e}")))
    }
}
