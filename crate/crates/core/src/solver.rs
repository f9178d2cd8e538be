//! Solvers for the single-player modes.

use crate::covering::{Covering, Tile};
use crate::error::TatamiError;
use crate::puzzle::{Mode, Projections, PuzzleMeta, PuzzleSpec};
use crate::search::{CountRange, Limits, Search};

pub use crate::search::SearchStats;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Solutions(Vec<Covering>),
    Unsatisfiable,
    /// The search stopped after finding `limit` solutions; more may exist.
    LimitReached(Vec<Covering>),
}

impl SolveOutcome {
    pub fn solutions(&self) -> &[Covering] {
        match self {
            SolveOutcome::Solutions(s) | SolveOutcome::LimitReached(s) => s,
            SolveOutcome::Unsatisfiable => &[],
        }
    }

    pub fn is_unsatisfiable(&self) -> bool {
        matches!(self, SolveOutcome::Unsatisfiable)
    }
}

/// Row and column triples of a complete covering of a rectangle.
pub fn projections(covering: &Covering) -> Result<Projections, TatamiError> {
    let region = covering.region();
    if !region.is_rectangle() {
        return Err(TatamiError::NonRectangular);
    }
    if !covering.is_complete() {
        return Err(TatamiError::IncompleteCovering);
    }
    Ok(Projections::of_tiles(region.height(), region.width(), covering.tiles()))
}

pub fn tomoku_from_covering(covering: &Covering) -> Result<PuzzleSpec, TatamiError> {
    let p = projections(covering)?;
    let region = covering.region();
    let mut spec = PuzzleSpec::new(Mode::Tomoku, region.clone());
    spec.projections = Some(p);
    spec.meta = PuzzleMeta {
        id: format!("tomoku-{}x{}", region.height(), region.width()),
        title: format!("Tomoku {}x{}", region.height(), region.width()),
        difficulty: None,
    };
    Ok(spec)
}

pub(crate) fn limits_for(puzzle: &PuzzleSpec) -> Limits {
    let mut limits = Limits::default();
    if let Some(b) = puzzle.piece_budget {
        if let Some(m) = b.max_monominoes {
            limits.monominoes = CountRange::at_most(m);
        }
        if let Some(d) = b.max_dominoes {
            limits.dominoes = CountRange::at_most(d);
        }
    }
    match puzzle.mode {
        Mode::LazyPaver => limits.monominoes = CountRange::exactly(0),
        Mode::Tomoku => limits.projections = puzzle.projections.clone(),
        _ => {}
    }
    limits
}

/// Checks the puzzle and sets up the search, or returns `None` when the
/// instance is unsatisfiable on its face.
fn prepare(puzzle: &PuzzleSpec) -> Result<Option<Search>, TatamiError> {
    if puzzle.mode == Mode::Noku {
        return Err(TatamiError::MalformedPuzzle("noku is a two-player game, use the noku engine".into()));
    }
    let start = puzzle.validate()?;
    if let (Mode::Tomoku, Some(p)) = (puzzle.mode, &puzzle.projections) {
        if !p.is_consistent(puzzle.region.height(), puzzle.region.width()) {
            return Ok(None);
        }
    }
    Ok(Some(Search::new(start, limits_for(puzzle), None)))
}

/// Depth-first search in the fixed branch order, returning at most `limit`
/// solutions. Solutions come out in the same order as from [`solve_all`].
pub fn solve(puzzle: &PuzzleSpec, limit: usize) -> Result<SolveOutcome, TatamiError> {
    solve_with_stats(puzzle, limit).map(|(outcome, _)| outcome)
}

pub fn solve_with_stats(puzzle: &PuzzleSpec, limit: usize) -> Result<(SolveOutcome, SearchStats), TatamiError> {
    let limit = limit.max(1);
    let Some(mut search) = prepare(puzzle)? else {
        return Ok((SolveOutcome::Unsatisfiable, SearchStats::default()));
    };
    let mut found = Vec::new();
    for solution in search.by_ref() {
        found.push(solution);
        if found.len() == limit {
            return Ok((SolveOutcome::LimitReached(found), search.stats));
        }
    }
    let outcome = if found.is_empty() { SolveOutcome::Unsatisfiable } else { SolveOutcome::Solutions(found) };
    Ok((outcome, search.stats))
}

pub fn solve_all(puzzle: &PuzzleSpec) -> Result<SolveOutcome, TatamiError> {
    solve(puzzle, usize::MAX)
}

/// Retractions the fixed-strategy solver makes before its first solution,
/// or `None` if the instance has no solution.
pub fn backtracks_to_first_solution(puzzle: &PuzzleSpec) -> Result<Option<u64>, TatamiError> {
    let (_, stats) = solve_with_stats(puzzle, 1)?;
    Ok(stats.backtracks_to_first)
}

/// Whether every given tile appears, with the same id, kind and anchor.
pub fn contains_givens(solution: &Covering, givens: &[Tile]) -> bool {
    givens.iter().all(|g| {
        solution
            .tile(g.id)
            .is_some_and(|t| t.kind == g.kind && t.anchor == g.anchor && t.tag == g.tag)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::{violations, TileKind};
    use crate::geometry::{Cell, Region};
    use crate::puzzle::{PieceBudget, Triple};

    fn monomino_free(c: &Covering) -> bool {
        c.count_kind(TileKind::Monomino) == 0
    }

    fn tiles(c: &Covering) -> Vec<Tile> {
        c.tiles().cloned().collect()
    }

    #[test]
    fn single_tile_projections() {
        let h = Covering::from_placements(Region::rectangle(1, 2).unwrap(), [(TileKind::HDomino, Cell::new(0, 0))]).unwrap();
        let p = projections(&h).unwrap();
        assert_eq!(p.rows, vec![Triple::new(0, 2, 0)]);
        assert_eq!(p.cols, vec![Triple::new(0, 1, 0); 2]);
        let v = Covering::from_placements(Region::rectangle(2, 1).unwrap(), [(TileKind::VDomino, Cell::new(0, 0))]).unwrap();
        let p = projections(&v).unwrap();
        assert_eq!(p.rows, vec![Triple::new(1, 0, 0); 2]);
        assert_eq!(p.cols, vec![Triple::new(2, 0, 0)]);
    }

    #[test]
    fn projections_need_rectangles() {
        let r = Region::from_ascii("##\n#.").unwrap();
        let c = Covering::from_placements(r, [(TileKind::HDomino, Cell::new(0, 0)), (TileKind::Monomino, Cell::new(1, 0))]).unwrap();
        assert_eq!(projections(&c), Err(TatamiError::NonRectangular));
    }

    #[test]
    fn oku_rectangles_are_solvable() {
        for (h, w) in [(2, 3), (3, 4), (4, 4), (1, 6), (5, 2)] {
            let spec = PuzzleSpec::new(Mode::Oku, Region::rectangle(h, w).unwrap());
            let out = solve(&spec, 1).unwrap();
            let s = &out.solutions()[0];
            assert!(s.is_complete());
            assert!(violations(s.region(), &tiles(s)).is_empty());
        }
    }

    #[test]
    fn two_by_two_without_monominoes() {
        let mut spec = PuzzleSpec::new(Mode::Oku, Region::rectangle(2, 2).unwrap());
        spec.piece_budget = Some(PieceBudget { max_monominoes: Some(0), max_dominoes: None });
        assert_eq!(solve_all(&spec).unwrap().solutions().len(), 2);
    }

    #[test]
    fn inconsistent_triples_are_unsatisfiable_without_search() {
        let mut spec = PuzzleSpec::new(Mode::Tomoku, Region::rectangle(1, 2).unwrap());
        spec.projections = Some(Projections { rows: vec![Triple::new(0, 1, 1)], cols: vec![Triple::new(0, 1, 0), Triple::new(0, 0, 1)] });
        let (out, stats) = solve_with_stats(&spec, 1).unwrap();
        assert_eq!(out, SolveOutcome::Unsatisfiable);
        assert_eq!(stats.nodes, 0);
    }

    #[test]
    fn one_by_one_tomoku() {
        let c = Covering::from_placements(Region::rectangle(1, 1).unwrap(), [(TileKind::Monomino, Cell::new(0, 0))]).unwrap();
        let spec = tomoku_from_covering(&c).unwrap();
        let p = spec.projections.clone().unwrap();
        assert_eq!(p.rows, vec![Triple::new(0, 0, 1)]);
        assert_eq!(p.cols, vec![Triple::new(0, 0, 1)]);
        assert_eq!(solve_all(&spec).unwrap(), SolveOutcome::Solutions(vec![c]));
    }

    #[test]
    fn lazy_paver_has_no_monominoes() {
        let spec = PuzzleSpec::new(Mode::LazyPaver, Region::rectangle(4, 5).unwrap());
        let out = solve_all(&spec).unwrap();
        assert!(!out.solutions().is_empty());
        assert!(out.solutions().iter().all(monomino_free));
        let odd = PuzzleSpec::new(Mode::LazyPaver, Region::rectangle(3, 3).unwrap());
        assert!(solve_all(&odd).unwrap().is_unsatisfiable());
    }

    #[test]
    fn limit_gives_a_prefix() {
        let spec = PuzzleSpec::new(Mode::Oku, Region::rectangle(3, 4).unwrap());
        let all = solve_all(&spec).unwrap();
        let some = solve(&spec, 3).unwrap();
        assert!(matches!(some, SolveOutcome::LimitReached(_)));
        assert_eq!(some.solutions(), &all.solutions()[..3]);
    }

    #[test]
    fn consultant_keeps_givens() {
        let mut spec = PuzzleSpec::new(Mode::Consultant, Region::rectangle(3, 4).unwrap());
        let mut given = Tile::new(5, TileKind::VDomino, Cell::new(0, 1));
        given.tag = Some("given".into());
        spec.given_tiles = vec![given.clone()];
        let out = solve_all(&spec).unwrap();
        assert!(!out.solutions().is_empty());
        assert!(out.solutions().iter().all(|s| contains_givens(s, &[given.clone()])));
    }

    #[test]
    fn noku_is_not_a_solver_mode() {
        let spec = PuzzleSpec::new(Mode::Noku, Region::rectangle(2, 2).unwrap());
        assert!(matches!(solve(&spec, 1), Err(TatamiError::MalformedPuzzle(_))));
    }
}
