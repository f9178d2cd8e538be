//! Exhaustive generation and counting of tatami coverings.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::covering::Covering;
use crate::error::TatamiError;
use crate::geometry::Region;
use crate::search::{frontier, CountRange, Limits, Search};

/// Exhaustive counting refuses regions larger than this.
pub const ENUMERATION_AREA_LIMIT: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumConstraints {
    pub monomino_count: Option<usize>,
    pub vertical_domino_count: Option<usize>,
    pub horizontal_domino_count: Option<usize>,
    pub allow_monominoes: bool,
}

impl Default for EnumConstraints {
    fn default() -> Self {
        EnumConstraints {
            monomino_count: None,
            vertical_domino_count: None,
            horizontal_domino_count: None,
            allow_monominoes: true,
        }
    }
}

impl EnumConstraints {
    pub fn monominoes(m: usize) -> EnumConstraints {
        EnumConstraints { monomino_count: Some(m), ..Default::default() }
    }

    fn check(&self, area: usize) -> Result<Limits, TatamiError> {
        let bad = |m: String| Err(TatamiError::InconsistentConstraints(m));
        if !self.allow_monominoes && self.monomino_count.is_some_and(|m| m > 0) {
            return bad("monominoes requested but not allowed".into());
        }
        let m = self.monomino_count.unwrap_or(0);
        let v = self.vertical_domino_count.unwrap_or(0);
        let h = self.horizontal_domino_count.unwrap_or(0);
        if m + 2 * (v + h) > area {
            return bad(format!("{m} monominoes and {} dominoes exceed area {area}", v + h));
        }
        let fully = self.monomino_count.is_some() || !self.allow_monominoes;
        if fully && self.vertical_domino_count.is_some() && self.horizontal_domino_count.is_some() && m + 2 * (v + h) != area {
            return bad(format!("tile counts cover {} cells, region has {area}", m + 2 * (v + h)));
        }
        let monominoes = match (self.allow_monominoes, self.monomino_count) {
            (false, _) => CountRange::exactly(0),
            (true, Some(m)) => CountRange::exactly(m),
            (true, None) => CountRange::ANY,
        };
        let mut limits = Limits { monominoes, ..Limits::default() };
        if let Some(v) = self.vertical_domino_count {
            limits.vertical = CountRange::exactly(v);
        }
        if let Some(h) = self.horizontal_domino_count {
            limits.horizontal = CountRange::exactly(h);
        }
        Ok(limits)
    }

    /// Whether a complete covering meets these constraints exactly.
    pub fn admits(&self, c: &Covering) -> bool {
        use crate::covering::TileKind::*;
        let m = c.count_kind(Monomino);
        (self.allow_monominoes || m == 0)
            && self.monomino_count.is_none_or(|x| x == m)
            && self.vertical_domino_count.is_none_or(|x| x == c.count_kind(VDomino))
            && self.horizontal_domino_count.is_none_or(|x| x == c.count_kind(HDomino))
    }
}

/// Lazily yields every complete tatami covering of a region that meets the
/// constraints, each once, in the solver's branch order.
pub struct Coverings(Search);

impl Iterator for Coverings {
    type Item = Covering;

    fn next(&mut self) -> Option<Covering> {
        self.0.next()
    }
}

pub fn enumerate_coverings(region: &Region, constraints: EnumConstraints) -> Result<Coverings, TatamiError> {
    let limits = constraints.check(region.area())?;
    Ok(Coverings(Search::new(Covering::new(region.clone()), limits, None)))
}

/// Same coverings and order as [`enumerate_coverings`], computed with the
/// subtrees spread over rayon's thread pool.
pub fn enumerate_parallel(region: &Region, constraints: EnumConstraints) -> Result<Vec<Covering>, TatamiError> {
    let limits = constraints.check(region.area())?;
    let roots = frontier(Covering::new(region.clone()), &limits, 4);
    let parts: Vec<Vec<Covering>> = roots
        .into_par_iter()
        .map(|root| Search::new(root, limits.clone(), None).collect())
        .collect();
    Ok(parts.into_iter().flatten().collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    Formula,
    Enumeration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountResult {
    pub count: u128,
    pub method: CountMethod,
}

/// Closed form for the number of tatami coverings of the `n` x `n` square
/// with exactly `m` monominoes. Returns zero when `n` and `m` differ in
/// parity, since `n*n - m` cells cannot then be paired into dominoes.
pub fn count_square_coverings(n: u32, m: u32) -> CountResult {
    let count = if n % 2 != m % 2 || m > n {
        0
    } else if m < n {
        u128::from(m) * (1u128 << m) + u128::from(m + 1) * (1u128 << (m + 1))
    } else {
        u128::from(n) * (1u128 << (n - 1))
    };
    CountResult { count, method: CountMethod::Formula }
}

pub fn count_by_enumeration(region: &Region, m: usize) -> Result<CountResult, TatamiError> {
    if region.area() > ENUMERATION_AREA_LIMIT {
        return Err(TatamiError::RegionTooLarge { area: region.area(), limit: ENUMERATION_AREA_LIMIT });
    }
    if m > region.area() {
        return Ok(CountResult { count: 0, method: CountMethod::Enumeration });
    }
    let count = enumerate_coverings(region, EnumConstraints::monominoes(m))?.count();
    Ok(CountResult { count: count as u128, method: CountMethod::Enumeration })
}

/// The first covering found by a search whose branch order is shuffled at
/// every node from `seed`. Deterministic for a given seed.
pub fn random_covering(region: &Region, constraints: EnumConstraints, seed: u64) -> Result<Option<Covering>, TatamiError> {
    use rand::SeedableRng;
    let limits = constraints.check(region.area())?;
    let rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    Ok(Search::new(Covering::new(region.clone()), limits, Some(rng)).next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::TileKind;
    use std::collections::HashSet;

    fn rect(h: usize, w: usize) -> Region {
        Region::rectangle(h, w).unwrap()
    }

    #[test]
    fn two_by_two_without_monominoes() {
        let all: Vec<Covering> = enumerate_coverings(&rect(2, 2), EnumConstraints::monominoes(0)).unwrap().collect();
        assert_eq!(all.len(), 2);
        // Vertical first, per branch order.
        assert_eq!(all[0].count_kind(TileKind::VDomino), 2);
        assert_eq!(all[1].count_kind(TileKind::HDomino), 2);
    }

    #[test]
    fn one_by_three() {
        assert_eq!(enumerate_coverings(&rect(1, 3), EnumConstraints::monominoes(1)).unwrap().count(), 2);
        assert_eq!(enumerate_coverings(&rect(1, 3), EnumConstraints::monominoes(3)).unwrap().count(), 1);
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_by_enumeration(&rect(1, 2), 0).unwrap().count, 1);
        // 2x3 without monominoes: three verticals, or two horizontals beside
        // a vertical on either side.
        assert_eq!(count_by_enumeration(&rect(2, 3), 0).unwrap().count, 3);
    }

    #[test]
    fn formula_spot_values() {
        assert_eq!(count_square_coverings(2, 0).count, 2);
        assert_eq!(count_square_coverings(8, 8).count, 1024);
        assert_eq!(count_square_coverings(3, 5).count, 0);
        assert_eq!(count_square_coverings(4, 1).count, 0);
        assert_eq!(count_square_coverings(2, 0).method, CountMethod::Formula);
    }

    #[test]
    fn inconsistent_constraints() {
        let c = EnumConstraints { monomino_count: Some(1), allow_monominoes: false, ..Default::default() };
        assert!(matches!(enumerate_coverings(&rect(2, 2), c), Err(TatamiError::InconsistentConstraints(_))));
        let c = EnumConstraints {
            monomino_count: Some(0),
            vertical_domino_count: Some(1),
            horizontal_domino_count: Some(0),
            allow_monominoes: true,
        };
        assert!(enumerate_coverings(&rect(2, 2), c).is_err());
    }

    #[test]
    fn too_large_for_enumeration() {
        assert!(matches!(count_by_enumeration(&rect(9, 9), 1), Err(TatamiError::RegionTooLarge { .. })));
    }

    #[test]
    fn stream_is_distinct_and_constrained() {
        let c = EnumConstraints { vertical_domino_count: Some(2), ..Default::default() };
        let all: Vec<Covering> = enumerate_coverings(&rect(4, 5), c).unwrap().collect();
        assert!(!all.is_empty());
        let set: HashSet<&Covering> = all.iter().collect();
        assert_eq!(set.len(), all.len());
        assert!(all.iter().all(|x| c.admits(x) && x.is_complete()));
    }

    #[test]
    fn parallel_matches_serial() {
        let serial: Vec<Covering> = enumerate_coverings(&rect(5, 6), EnumConstraints::default()).unwrap().collect();
        assert_eq!(enumerate_parallel(&rect(5, 6), EnumConstraints::default()).unwrap(), serial);
    }
}

