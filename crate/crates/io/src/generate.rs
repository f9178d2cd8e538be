use tatami_core::enumeration::{random_covering, EnumConstraints};
use tatami_core::solver::{backtracks_to_first_solution, tomoku_from_covering};
use tatami_core::{Region, TatamiError};

use crate::document::PuzzleDocument;

/// Coverings sampled before giving up on a NoBacktrack instance.
pub const GENERATION_ATTEMPTS: u64 = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Difficulty {
    /// The fixed-order solver finds a solution without retracting a choice.
    NoBacktrack,
    Any,
}

impl Difficulty {
    pub fn name(self) -> &'static str {
        match self {
            Difficulty::NoBacktrack => "no-backtrack",
            Difficulty::Any => "any",
        }
    }
}

/// A Tomoku instance built from a seeded random covering, which is kept as
/// the reference solution.
pub fn generate_tomoku(rows: usize, cols: usize, seed: u64, difficulty: Difficulty) -> Result<PuzzleDocument, TatamiError> {
    let region = Region::rectangle(rows, cols)?;
    for attempt in 0..GENERATION_ATTEMPTS {
        let sample_seed = seed ^ attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let Some(covering) = random_covering(&region, EnumConstraints::default(), sample_seed)? else {
            continue;
        };
        let mut spec = tomoku_from_covering(&covering)?;
        if difficulty == Difficulty::NoBacktrack && backtracks_to_first_solution(&spec)? != Some(0) {
            continue;
        }
        spec.meta.id = format!("tomoku-{rows}x{cols}-{seed}");
        spec.meta.title = format!("Tomoku {rows}x{cols} #{seed}");
        spec.meta.difficulty = Some(difficulty.name().to_string());
        return PuzzleDocument::new(spec).with_solution(&covering, false);
    }
    Err(TatamiError::BudgetExceeded(format!(
        "no {} instance of {rows}x{cols} in {GENERATION_ATTEMPTS} samples",
        difficulty.name()
    )))
}
