//! Tiles, coverings and the tatami placement law.
//!
//! A placement is blocked exactly when it would complete a vertex whose four
//! incident cells are covered by four distinct tiles. Vertices with three
//! distinct tiles and one empty cell are allowed, the same way the board's
//! ball simply sits in the fourth quadrant.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::TatamiError;
use crate::geometry::{Cell, Region, Vertex};

pub type TileId = u32;

const NO_TILE: TileId = TileId::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TileKind {
    Monomino,
    HDomino,
    VDomino,
}

impl TileKind {
    pub const ALL: [TileKind; 3] = [TileKind::Monomino, TileKind::HDomino, TileKind::VDomino];

    /// Cells spanned by a tile of this kind anchored at its top-left cell.
    pub fn span(self, anchor: Cell) -> Span {
        match self {
            TileKind::Monomino => Span { first: anchor, second: None },
            TileKind::HDomino => Span { first: anchor, second: Some(anchor.right()) },
            TileKind::VDomino => Span { first: anchor, second: Some(anchor.down()) },
        }
    }

    pub fn is_domino(self) -> bool {
        self != TileKind::Monomino
    }

    pub fn letter(self) -> char {
        match self {
            TileKind::Monomino => 'M',
            TileKind::HDomino => 'H',
            TileKind::VDomino => 'V',
        }
    }

    pub fn from_letter(ch: char) -> Option<TileKind> {
        match ch.to_ascii_uppercase() {
            'M' => Some(TileKind::Monomino),
            'H' => Some(TileKind::HDomino),
            'V' => Some(TileKind::VDomino),
            _ => None,
        }
    }

    pub(crate) fn parts(self) -> (Part, Part) {
        match self {
            TileKind::Monomino => (Part::Mono, Part::Empty),
            TileKind::HDomino => (Part::Left, Part::Right),
            TileKind::VDomino => (Part::Top, Part::Bottom),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub first: Cell,
    pub second: Option<Cell>,
}

impl Span {
    pub fn iter(self) -> impl Iterator<Item = Cell> {
        std::iter::once(self.first).chain(self.second)
    }

    pub fn contains(self, cell: Cell) -> bool {
        self.first == cell || self.second == Some(cell)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tile {
    pub id: TileId,
    pub kind: TileKind,
    pub anchor: Cell,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<String>,
}

impl Tile {
    pub fn new(id: TileId, kind: TileKind, anchor: Cell) -> Tile {
        Tile { id, kind, anchor, tag: None }
    }

    pub fn span(&self) -> Span {
        self.kind.span(self.anchor)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> {
        self.span().iter()
    }

    pub fn placement(&self) -> (TileKind, Cell) {
        (self.kind, self.anchor)
    }
}

/// What each cell of the bounding box holds; enough to tell whether two
/// neighbouring cells belong to the same tile without looking up ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Part {
    Empty,
    Mono,
    Left,
    Right,
    Top,
    Bottom,
}

impl Part {
    pub(crate) fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PlacementVerdict {
    Legal,
    OutOfRegion { cells: Vec<Cell> },
    Overlap { tile_ids: Vec<TileId> },
    TatamiBlocked { vertices: Vec<Vertex> },
}

impl PlacementVerdict {
    pub fn is_legal(&self) -> bool {
        matches!(self, PlacementVerdict::Legal)
    }
}

/// Number of distinct tiles at a vertex given the four quadrant parts
/// (top-left, top-right, bottom-left, bottom-right), or `None` if any
/// quadrant is empty.
pub(crate) fn tiles_at(q: [Part; 4]) -> Option<usize> {
    if q.contains(&Part::Empty) {
        return None;
    }
    let [tl, tr, bl, _] = q;
    let merges = usize::from(tl == Part::Left)
        + usize::from(bl == Part::Left)
        + usize::from(tl == Part::Top)
        + usize::from(tr == Part::Top);
    Some(4 - merges)
}

/// An immutable set of disjoint tiles on a region that satisfies the tatami
/// law. Equality and hashing compare the layout only (which kinds cover which
/// cells), not tile ids or tags.
#[derive(Clone)]
pub struct Covering {
    region: Arc<Region>,
    parts: Vec<Part>,
    owner: Vec<TileId>,
    tiles: BTreeMap<TileId, Tile>,
    next_id: TileId,
}

impl Covering {
    pub fn new(region: Region) -> Covering {
        Covering::on(Arc::new(region))
    }

    pub fn on(region: Arc<Region>) -> Covering {
        let n = region.bbox_len();
        Covering {
            region,
            parts: vec![Part::Empty; n],
            owner: vec![NO_TILE; n],
            tiles: BTreeMap::new(),
            next_id: 0,
        }
    }

    /// Places the given tiles in order, failing on the first illegal one.
    pub fn from_placements<I>(region: Region, placements: I) -> Result<Covering, TatamiError>
    where
        I: IntoIterator<Item = (TileKind, Cell)>,
    {
        let mut covering = Covering::new(region);
        for (kind, anchor) in placements {
            covering.try_place_mut(kind, anchor, None)?;
        }
        Ok(covering)
    }

    /// Places tiles keeping their ids and tags. Fresh ids continue after the
    /// largest given id.
    pub fn from_tiles(region: Region, tiles: &[Tile]) -> Result<Covering, TatamiError> {
        let mut covering = Covering::new(region);
        for t in tiles {
            if covering.tiles.contains_key(&t.id) || t.id == NO_TILE {
                return Err(TatamiError::MalformedPuzzle(format!("duplicate tile id {}", t.id)));
            }
            match covering.can_place(t.kind, t.anchor) {
                PlacementVerdict::Legal => {}
                verdict => return Err(TatamiError::IllegalPlacement(verdict)),
            }
            covering.next_id = t.id;
            covering.place_unchecked(t.kind, t.anchor, t.tag.clone());
        }
        covering.next_id = tiles.iter().map(|t| t.id + 1).max().unwrap_or(0);
        Ok(covering)
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn shared_region(&self) -> Arc<Region> {
        Arc::clone(&self.region)
    }

    /// Tiles in id order.
    pub fn tiles(&self) -> impl Iterator<Item = &Tile> + '_ {
        self.tiles.values()
    }

    pub fn tile_count(&self) -> usize {
        self.tiles.len()
    }

    pub fn tile(&self, id: TileId) -> Option<&Tile> {
        self.tiles.get(&id)
    }

    pub fn tile_at(&self, cell: Cell) -> Option<&Tile> {
        if !self.region.contains(cell) {
            return None;
        }
        match self.owner[self.region.index(cell)] {
            NO_TILE => None,
            id => self.tiles.get(&id),
        }
    }

    pub fn is_covered(&self, cell: Cell) -> bool {
        self.region.contains(cell) && self.owner[self.region.index(cell)] != NO_TILE
    }

    pub fn is_empty_cell(&self, cell: Cell) -> bool {
        self.region.contains(cell) && self.owner[self.region.index(cell)] == NO_TILE
    }

    pub fn is_complete(&self) -> bool {
        self.uncovered_count() == 0
    }

    pub fn uncovered_count(&self) -> usize {
        self.region.area() - self.tiles.values().map(|t| t.span().iter().count()).sum::<usize>()
    }

    pub fn first_uncovered(&self) -> Option<Cell> {
        self.region.cells().find(|&c| !self.is_covered(c))
    }

    pub fn count_kind(&self, kind: TileKind) -> usize {
        self.tiles.values().filter(|t| t.kind == kind).count()
    }

    pub(crate) fn part(&self, cell: Cell) -> Part {
        if cell.row < self.region.height() && cell.col < self.region.width() {
            self.parts[self.region.index(cell)]
        } else {
            Part::Empty
        }
    }

    pub(crate) fn quadrant_parts(&self, v: Vertex) -> Option<[Part; 4]> {
        let q = v.quadrants()?;
        Some(q.map(|c| self.part(c)))
    }

    /// Number of distinct tiles meeting at an interior vertex whose four
    /// cells are covered.
    pub fn tiles_meeting_at(&self, v: Vertex) -> Option<usize> {
        if !self.region.is_interior(v) {
            return None;
        }
        tiles_at(self.quadrant_parts(v)?)
    }

    /// Whether placing `kind` at `anchor` is legal, and if not, why.
    pub fn can_place(&self, kind: TileKind, anchor: Cell) -> PlacementVerdict {
        let span = kind.span(anchor);
        let outside: Vec<Cell> = span.iter().filter(|&c| !self.region.contains(c)).collect();
        if !outside.is_empty() {
            return PlacementVerdict::OutOfRegion { cells: outside };
        }
        let mut overlap: Vec<TileId> = span
            .iter()
            .map(|c| self.owner[self.region.index(c)])
            .filter(|&id| id != NO_TILE)
            .collect();
        if !overlap.is_empty() {
            overlap.dedup();
            return PlacementVerdict::Overlap { tile_ids: overlap };
        }
        let blocked = self.blocked_vertices(kind, anchor);
        if blocked.is_empty() {
            PlacementVerdict::Legal
        } else {
            PlacementVerdict::TatamiBlocked { vertices: blocked }
        }
    }

    /// Fast legality test for search code: in-region, uncovered, unblocked.
    pub(crate) fn is_legal(&self, kind: TileKind, anchor: Cell) -> bool {
        let span = kind.span(anchor);
        span.iter().all(|c| self.is_empty_cell(c)) && !self.for_each_blocked(kind, anchor, |_| true)
    }

    fn blocked_vertices(&self, kind: TileKind, anchor: Cell) -> Vec<Vertex> {
        let mut vertices = Vec::new();
        self.for_each_blocked(kind, anchor, |v| {
            vertices.push(v);
            false
        });
        vertices.sort_unstable();
        vertices.dedup();
        vertices
    }

    /// Calls `visit` for each vertex the hypothetical tile would complete as
    /// a four-tile meeting; stops early and returns true once `visit` does.
    fn for_each_blocked(&self, kind: TileKind, anchor: Cell, mut visit: impl FnMut(Vertex) -> bool) -> bool {
        let span = kind.span(anchor);
        let (p1, p2) = kind.parts();
        let after = |c: Cell| {
            if c == span.first {
                p1
            } else if span.second == Some(c) {
                p2
            } else {
                self.part(c)
            }
        };
        let (r0, c0) = (anchor.row, anchor.col);
        let (r1, c1) = match kind {
            TileKind::Monomino => (r0 + 1, c0 + 1),
            TileKind::HDomino => (r0 + 1, c0 + 2),
            TileKind::VDomino => (r0 + 2, c0 + 1),
        };
        for r in r0..=r1 {
            for c in c0..=c1 {
                let v = Vertex::new(r, c);
                if !self.region.is_interior(v) {
                    continue;
                }
                let q = v.quadrants().expect("interior vertex has quadrants");
                if tiles_at(q.map(after)) == Some(4) && visit(v) {
                    return true;
                }
            }
        }
        false
    }

    pub fn place(&self, kind: TileKind, anchor: Cell) -> Result<Covering, TatamiError> {
        self.place_tagged(kind, anchor, None)
    }

    pub fn place_tagged(
        &self,
        kind: TileKind,
        anchor: Cell,
        tag: Option<String>,
    ) -> Result<Covering, TatamiError> {
        let mut next = self.clone();
        next.try_place_mut(kind, anchor, tag)?;
        Ok(next)
    }

    pub fn remove(&self, id: TileId) -> Result<Covering, TatamiError> {
        let mut next = self.clone();
        next.remove_mut(id)?;
        Ok(next)
    }

    pub(crate) fn try_place_mut(
        &mut self,
        kind: TileKind,
        anchor: Cell,
        tag: Option<String>,
    ) -> Result<TileId, TatamiError> {
        match self.can_place(kind, anchor) {
            PlacementVerdict::Legal => Ok(self.place_unchecked(kind, anchor, tag)),
            verdict => Err(TatamiError::IllegalPlacement(verdict)),
        }
    }

    /// Callers guarantee legality.
    pub(crate) fn place_unchecked(&mut self, kind: TileKind, anchor: Cell, tag: Option<String>) -> TileId {
        let id = self.next_id;
        self.next_id += 1;
        let span = kind.span(anchor);
        let (p1, p2) = kind.parts();
        let i = self.region.index(span.first);
        self.parts[i] = p1;
        self.owner[i] = id;
        if let Some(second) = span.second {
            let j = self.region.index(second);
            self.parts[j] = p2;
            self.owner[j] = id;
        }
        self.tiles.insert(id, Tile { id, kind, anchor, tag });
        id
    }

    pub(crate) fn remove_mut(&mut self, id: TileId) -> Result<Tile, TatamiError> {
        let tile = self.tiles.remove(&id).ok_or(TatamiError::UnknownTile(id))?;
        for c in tile.cells() {
            let i = self.region.index(c);
            self.parts[i] = Part::Empty;
            self.owner[i] = NO_TILE;
        }
        Ok(tile)
    }

    /// Compact layout code, three bits per bounding-box cell. Only defined
    /// for bounding boxes of at most 42 cells.
    pub(crate) fn layout_code(&self) -> u128 {
        debug_assert!(self.parts.len() <= 42);
        self.parts
            .iter()
            .fold(0u128, |acc, p| (acc << 3) | u128::from(p.code()))
    }

    /// Sorted `(kind, anchor)` list; a canonical id-free description.
    pub fn placements(&self) -> Vec<(TileKind, Cell)> {
        let mut v: Vec<(TileKind, Cell)> = self.tiles.values().map(Tile::placement).collect();
        v.sort_by_key(|&(k, c)| (c, k));
        v
    }

    /// One glyph per bounding-box cell: `•` monomino, `<>` horizontal
    /// domino, `^v` vertical domino, `.` empty, space outside the region.
    pub fn glyph_rows(&self) -> Vec<String> {
        (0..self.region.height())
            .map(|r| {
                (0..self.region.width())
                    .map(|c| {
                        let cell = Cell::new(r, c);
                        if !self.region.contains(cell) {
                            return ' ';
                        }
                        match self.part(cell) {
                            Part::Empty => '.',
                            Part::Mono => '•',
                            Part::Left => '<',
                            Part::Right => '>',
                            Part::Top => '^',
                            Part::Bottom => 'v',
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Parses the glyph form written by [`Covering::glyph_rows`]; `o` is
    /// also accepted for a monomino. The region is every non-space glyph.
    pub fn from_glyph_rows<S: AsRef<str>>(rows: &[S]) -> Result<Covering, TatamiError> {
        let grid: Vec<Vec<char>> = rows.iter().map(|r| r.as_ref().chars().collect()).collect();
        let syntax = |line: usize, message: String| TatamiError::Syntax { line: line + 1, message };
        let mut cells = Vec::new();
        for (r, row) in grid.iter().enumerate() {
            for (c, &ch) in row.iter().enumerate() {
                match ch {
                    ' ' => {}
                    '.' | '•' | 'o' | '<' | '>' | '^' | 'v' => cells.push(Cell::new(r, c)),
                    other => return Err(syntax(r, format!("unexpected glyph {other:?}"))),
                }
            }
        }
        let (r0, c0) = (
            cells.iter().map(|c| c.row).min().ok_or(TatamiError::EmptyRegion)?,
            cells.iter().map(|c| c.col).min().unwrap_or(0),
        );
        let region = Region::from_cells(cells.iter().copied())?;
        let mut covering = Covering::new(region);
        let at = |r: usize, c: usize| grid.get(r).and_then(|row| row.get(c)).copied();
        for (r, row) in grid.iter().enumerate() {
            for (c, &ch) in row.iter().enumerate() {
                let (kind, partner) = match ch {
                    '•' | 'o' => (TileKind::Monomino, None),
                    '<' => (TileKind::HDomino, Some((at(r, c + 1), '>'))),
                    '^' => (TileKind::VDomino, Some((at(r + 1, c), 'v'))),
                    '>' if c == 0 || at(r, c - 1) != Some('<') => return Err(syntax(r, "unpaired '>'".into())),
                    'v' if r == 0 || at(r - 1, c) != Some('^') => return Err(syntax(r, "unpaired 'v'".into())),
                    _ => continue,
                };
                if let Some((found, want)) = partner {
                    if found != Some(want) {
                        return Err(syntax(r, format!("{ch:?} at column {} is not followed by {want:?}", c + 1)));
                    }
                }
                covering
                    .try_place_mut(kind, Cell::new(r - r0, c - c0), None)
                    .map_err(|e| syntax(r, e.to_string()))?;
            }
        }
        Ok(covering)
    }
}

impl PartialEq for Covering {
    fn eq(&self, other: &Self) -> bool {
        self.region == other.region && self.parts == other.parts
    }
}

impl Eq for Covering {}

impl std::hash::Hash for Covering {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.region.hash(state);
        self.parts.hash(state);
    }
}

impl fmt::Debug for Covering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Covering({} tiles)", self.tiles.len())?;
        for row in self.glyph_rows() {
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

/// Every interior vertex at which four distinct tiles meet, row-major.
///
/// This works from tile ids alone and is used as the reference check for
/// arbitrary tile sets; tiles are assumed to lie in the region and be
/// pairwise disjoint.
pub fn violations(region: &Region, tiles: &[Tile]) -> Vec<Vertex> {
    let mut owner: HashMap<Cell, usize> = HashMap::new();
    for (i, t) in tiles.iter().enumerate() {
        for c in t.cells() {
            owner.insert(c, i);
        }
    }
    region
        .interior_vertices()
        .filter(|v| {
            let q = v.quadrants().expect("interior");
            let ids: Option<Vec<usize>> = q.iter().map(|c| owner.get(c).copied()).collect();
            match ids {
                Some(mut ids) => {
                    ids.sort_unstable();
                    ids.dedup();
                    ids.len() == 4
                }
                None => false,
            }
        })
        .collect()
}
