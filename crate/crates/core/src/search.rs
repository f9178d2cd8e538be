//! Depth-first search shared by the solvers, the enumerator and the puzzle
//! generator.
//!
//! The first uncovered cell in row-major order is always the anchor of the
//! tile that will cover it, so each node branches over at most three
//! placements: vertical domino, horizontal domino, monomino. Forced tiles are
//! propagated after every choice.

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

use crate::covering::{Covering, TileKind};
use crate::geometry::Cell;
use crate::puzzle::{Projections, Triple};
use crate::structure::{propagate_in_place, Rules};

pub(crate) const BRANCH_ORDER: [TileKind; 3] = [TileKind::VDomino, TileKind::HDomino, TileKind::Monomino];

/// Inclusive bounds on how many tiles of one kind a solution may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct CountRange {
    pub min: usize,
    pub max: usize,
}

impl CountRange {
    pub const ANY: CountRange = CountRange { min: 0, max: usize::MAX };

    pub fn exactly(n: usize) -> CountRange {
        CountRange { min: n, max: n }
    }

    pub fn at_most(n: usize) -> CountRange {
        CountRange { min: 0, max: n }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Limits {
    pub monominoes: CountRange,
    pub vertical: CountRange,
    pub horizontal: CountRange,
    pub dominoes: CountRange,
    pub projections: Option<Projections>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            monominoes: CountRange::ANY,
            vertical: CountRange::ANY,
            horizontal: CountRange::ANY,
            dominoes: CountRange::ANY,
            projections: None,
        }
    }
}

impl Limits {
    fn rules(&self) -> Rules {
        Rules { allow_monomino: self.monominoes.max > 0 }
    }

    /// Cheap checks made before a candidate is placed: the kind is allowed,
    /// the placement is legal, and the tile's own squares still fit the
    /// target projections. Candidates failing these are never placed, so
    /// they do not count as backtracks.
    fn admits(&self, c: &Covering, kind: TileKind, anchor: Cell) -> bool {
        if !self.allows(kind) || !c.is_legal(kind, anchor) {
            return false;
        }
        match &self.projections {
            Some(target) => {
                let region = c.region();
                let mut now = Projections::of_tiles(region.height(), region.width(), c.tiles());
                now.add(kind, anchor.row, anchor.col);
                let span = kind.span(anchor);
                span.iter().all(|cell| {
                    now.rows[cell.row].fits_within(target.rows[cell.row]) && now.cols[cell.col].fits_within(target.cols[cell.col])
                })
            }
            None => true,
        }
    }

    fn allows(&self, kind: TileKind) -> bool {
        match kind {
            TileKind::Monomino => self.monominoes.max > 0,
            TileKind::VDomino => self.vertical.max > 0 && self.dominoes.max > 0,
            TileKind::HDomino => self.horizontal.max > 0 && self.dominoes.max > 0,
        }
    }

    /// Whether the partial covering can still be extended to a solution
    /// (necessary conditions only). With `complete` set, checks the exact
    /// requirements instead.
    fn feasible(&self, c: &Covering, complete: bool) -> bool {
        let m = c.count_kind(TileKind::Monomino);
        let v = c.count_kind(TileKind::VDomino);
        let h = c.count_kind(TileKind::HDomino);
        let free = c.uncovered_count();
        let in_range = |n: usize, r: CountRange, room: usize| n <= r.max && n + room >= r.min;
        if complete {
            let exact = |n: usize, r: CountRange| n >= r.min && n <= r.max;
            if !(exact(m, self.monominoes) && exact(v, self.vertical) && exact(h, self.horizontal) && exact(v + h, self.dominoes)) {
                return false;
            }
        } else if !(in_range(m, self.monominoes, free)
            && in_range(v, self.vertical, free / 2)
            && in_range(h, self.horizontal, free / 2)
            && in_range(v + h, self.dominoes, free / 2))
        {
            return false;
        }
        // Monominoes can make up any shortfall of dominoes, but not beyond
        // their own cap.
        if !complete {
            let min_dominoes = self.dominoes.min.max(self.vertical.min + self.horizontal.min);
            let dominoes_left = min_dominoes.saturating_sub(v + h);
            if 2 * dominoes_left > free {
                return false;
            }
            let max_dom = self.dominoes.max.min(self.vertical.max.saturating_add(self.horizontal.max));
            let dominoes_room = max_dom.saturating_sub(v + h).min(free / 2);
            let monos_room = self.monominoes.max.saturating_sub(m);
            if free > (2 * dominoes_room).saturating_add(monos_room) {
                return false;
            }
        }
        match &self.projections {
            Some(target) => projections_feasible(c, target, complete),
            None => true,
        }
    }
}

fn projections_feasible(c: &Covering, target: &Projections, complete: bool) -> bool {
    let region = c.region();
    let (height, width) = (region.height(), region.width());
    let now = Projections::of_tiles(height, width, c.tiles());
    if complete {
        return &now == target;
    }
    let within = |a: &[Triple], b: &[Triple]| a.iter().zip(b).all(|(x, y)| x.fits_within(*y));
    if !within(&now.rows, &target.rows) || !within(&now.cols, &target.cols) {
        return false;
    }
    // Free cells in a line that could still take a horizontal (resp.
    // vertical) domino bound the remaining h (resp. v) deficit.
    let free = |r: usize, col: usize| c.is_empty_cell(Cell::new(r, col));
    for r in 0..height {
        let mut h_room = 0;
        let mut v_room = 0;
        for col in 0..width {
            if !free(r, col) {
                continue;
            }
            if (col > 0 && free(r, col - 1)) || (col + 1 < width && free(r, col + 1)) {
                h_room += 1;
            }
            if (r > 0 && free(r - 1, col)) || (r + 1 < height && free(r + 1, col)) {
                v_room += 1;
            }
        }
        if target.rows[r].h - now.rows[r].h > h_room || target.rows[r].v - now.rows[r].v > v_room {
            return false;
        }
    }
    for col in 0..width {
        let mut h_room = 0;
        let mut v_room = 0;
        for r in 0..height {
            if !free(r, col) {
                continue;
            }
            if (col > 0 && free(r, col - 1)) || (col + 1 < width && free(r, col + 1)) {
                h_room += 1;
            }
            if (r > 0 && free(r - 1, col)) || (r + 1 < height && free(r + 1, col)) {
                v_room += 1;
            }
        }
        if target.cols[col].h - now.cols[col].h > h_room || target.cols[col].v - now.cols[col].v > v_room {
            return false;
        }
    }
    true
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Choice placements made (propagated tiles not counted).
    pub nodes: u64,
    /// Choice placements later retracted.
    pub backtracks: u64,
    /// Retractions made before the first solution was found.
    pub backtracks_to_first: Option<u64>,
    pub solutions: u64,
}

struct Frame {
    covering: Covering,
    anchor: Cell,
    order: [TileKind; 3],
    next: usize,
}

/// Lazy depth-first enumeration of the completions of a partial covering.
pub(crate) struct Search {
    stack: Vec<Frame>,
    pending_root: Option<Covering>,
    limits: Limits,
    rng: Option<ChaCha8Rng>,
    pub stats: SearchStats,
}

impl Search {
    pub fn new(start: Covering, limits: Limits, rng: Option<ChaCha8Rng>) -> Search {
        Search { stack: Vec::new(), pending_root: Some(start), limits, rng, stats: SearchStats::default() }
    }

    fn order(&mut self) -> [TileKind; 3] {
        let mut order = BRANCH_ORDER;
        if let Some(rng) = self.rng.as_mut() {
            order.shuffle(rng);
        }
        order
    }

    /// Propagates and checks `covering`; returns a solution if it is one,
    /// pushes a frame if it needs more choices, and reports whether it
    /// survived.
    fn settle(&mut self, mut covering: Covering) -> (bool, Option<Covering>) {
        let mut trace = Vec::new();
        if propagate_in_place(&mut covering, self.limits.rules(), &mut trace).is_err() {
            return (false, None);
        }
        match covering.first_uncovered() {
            None => {
                if self.limits.feasible(&covering, true) {
                    (true, Some(covering))
                } else {
                    (false, None)
                }
            }
            Some(anchor) => {
                if !self.limits.feasible(&covering, false) {
                    return (false, None);
                }
                let order = self.order();
                self.stack.push(Frame { covering, anchor, order, next: 0 });
                (true, None)
            }
        }
    }

    fn record_solution(&mut self) {
        self.stats.solutions += 1;
        if self.stats.backtracks_to_first.is_none() {
            self.stats.backtracks_to_first = Some(self.stats.backtracks);
        }
    }
}

impl Iterator for Search {
    type Item = Covering;

    fn next(&mut self) -> Option<Covering> {
        if let Some(root) = self.pending_root.take() {
            if let (_, Some(solution)) = self.settle(root) {
                self.record_solution();
                return Some(solution);
            }
        }
        loop {
            let frame = self.stack.last_mut()?;
            if frame.next == frame.order.len() {
                self.stack.pop();
                if !self.stack.is_empty() {
                    self.stats.backtracks += 1;
                }
                continue;
            }
            let kind = frame.order[frame.next];
            frame.next += 1;
            if !self.limits.admits(&frame.covering, kind, frame.anchor) {
                continue;
            }
            let mut child = frame.covering.clone();
            let anchor = frame.anchor;
            child.place_unchecked(kind, anchor, None);
            self.stats.nodes += 1;
            match self.settle(child) {
                (false, _) => self.stats.backtracks += 1,
                (true, Some(solution)) => {
                    self.record_solution();
                    // Moving on from here retracts the choice.
                    self.stats.backtracks += 1;
                    return Some(solution);
                }
                (true, None) => {}
            }
        }
    }
}

/// Expands the search tree `depth` choices deep and returns the surviving
/// nodes in depth-first order. Searching each node separately and
/// concatenating the results reproduces the serial order.
pub(crate) fn frontier(start: Covering, limits: &Limits, depth: usize) -> Vec<Covering> {
    let mut level = vec![start];
    for _ in 0..depth {
        let mut next = Vec::new();
        for node in level {
            let mut probe = Search::new(node, limits.clone(), None);
            let mut covering = probe.pending_root.take().expect("fresh search");
            let mut trace = Vec::new();
            if propagate_in_place(&mut covering, limits.rules(), &mut trace).is_err() {
                continue;
            }
            let Some(anchor) = covering.first_uncovered() else {
                next.push(covering);
                continue;
            };
            if !limits.feasible(&covering, false) {
                continue;
            }
            for kind in BRANCH_ORDER {
                if limits.admits(&covering, kind, anchor) {
                    let mut child = covering.clone();
                    child.place_unchecked(kind, anchor, None);
                    next.push(child);
                }
            }
        }
        level = next;
    }
    level
}
