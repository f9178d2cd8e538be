//! Puzzle documents, renderers and the Tomoku generator.

mod ascii;
mod document;
mod generate;
mod svg;

pub use ascii::render_ascii;
pub use document::{parse_puzzle, render_puzzle, ExtraField, PuzzleDocument, FORMAT_VERSION};
pub use generate::{generate_tomoku, Difficulty, GENERATION_ATTEMPTS};
pub use svg::{render_gallery, render_svg};
