//! Cells, lattice vertices and rectilinear regions.
//!
//! Coordinates are row-major with the origin at the top-left. Vertex
//! `(r, c)` is the top-left corner of cell `(r, c)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::TatamiError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    pub fn right(self) -> Cell {
        Cell::new(self.row, self.col + 1)
    }

    pub fn down(self) -> Cell {
        Cell::new(self.row + 1, self.col)
    }

    pub fn left(self) -> Option<Cell> {
        self.col.checked_sub(1).map(|col| Cell::new(self.row, col))
    }

    pub fn up(self) -> Option<Cell> {
        self.row.checked_sub(1).map(|row| Cell::new(row, self.col))
    }

    /// Edge-adjacent cells that have non-negative coordinates.
    pub fn neighbours(self) -> impl Iterator<Item = Cell> {
        [self.up(), self.left(), Some(self.right()), Some(self.down())]
            .into_iter()
            .flatten()
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub row: usize,
    pub col: usize,
}

impl Vertex {
    pub const fn new(row: usize, col: usize) -> Self {
        Vertex { row, col }
    }

    /// The four incident cells in the order top-left, top-right,
    /// bottom-left, bottom-right. `None` for vertices on the outer frame of
    /// the coordinate plane.
    pub fn quadrants(self) -> Option<[Cell; 4]> {
        if self.row == 0 || self.col == 0 {
            return None;
        }
        let (r, c) = (self.row, self.col);
        Some([
            Cell::new(r - 1, c - 1),
            Cell::new(r - 1, c),
            Cell::new(r, c - 1),
            Cell::new(r, c),
        ])
    }

    /// The vertices at the four corners of `cell`.
    pub fn corners_of(cell: Cell) -> [Vertex; 4] {
        let (r, c) = (cell.row, cell.col);
        [
            Vertex::new(r, c),
            Vertex::new(r, c + 1),
            Vertex::new(r + 1, c),
            Vertex::new(r + 1, c + 1),
        ]
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.row, self.col)
    }
}

/// A finite nonempty set of cells, normalised so that its bounding box
/// starts at `(0, 0)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Region {
    height: usize,
    width: usize,
    mask: Vec<bool>,
    area: usize,
}

impl Region {
    pub fn rectangle(height: usize, width: usize) -> Result<Region, TatamiError> {
        if height == 0 || width == 0 {
            return Err(TatamiError::EmptyRegion);
        }
        Ok(Region {
            height,
            width,
            mask: vec![true; height * width],
            area: height * width,
        })
    }

    /// Builds a region from arbitrary cells, translating it so the bounding
    /// box starts at the origin.
    pub fn from_cells<I: IntoIterator<Item = Cell>>(cells: I) -> Result<Region, TatamiError> {
        let cells: Vec<Cell> = cells.into_iter().collect();
        let min_row = cells.iter().map(|c| c.row).min().ok_or(TatamiError::EmptyRegion)?;
        let min_col = cells.iter().map(|c| c.col).min().unwrap_or(0);
        let height = cells.iter().map(|c| c.row).max().unwrap_or(0) - min_row + 1;
        let width = cells.iter().map(|c| c.col).max().unwrap_or(0) - min_col + 1;
        let mut mask = vec![false; height * width];
        for c in &cells {
            mask[(c.row - min_row) * width + (c.col - min_col)] = true;
        }
        let area = mask.iter().filter(|&&m| m).count();
        Ok(Region { height, width, mask, area })
    }

    /// Parses the ASCII form: `#` marks a cell, `.` or space a hole. Short
    /// lines are padded with holes.
    pub fn from_ascii(text: &str) -> Result<Region, TatamiError> {
        let cells = text.lines().enumerate().flat_map(|(r, line)| {
            line.chars()
                .enumerate()
                .filter(|&(_, ch)| ch == '#')
                .map(move |(c, _)| Cell::new(r, c))
        });
        Region::from_cells(cells)
    }

    pub fn to_ascii(&self) -> String {
        let mut out = String::with_capacity(self.height * (self.width + 1));
        for r in 0..self.height {
            for c in 0..self.width {
                out.push(if self.contains(Cell::new(r, c)) { '#' } else { '.' });
            }
            out.push('\n');
        }
        out
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn area(&self) -> usize {
        self.area
    }

    pub fn is_rectangle(&self) -> bool {
        self.area == self.height * self.width
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row < self.height && cell.col < self.width && self.mask[cell.row * self.width + cell.col]
    }

    /// Row-major index into the bounding box. Only meaningful for cells
    /// inside the bounding box.
    pub(crate) fn index(&self, cell: Cell) -> usize {
        cell.row * self.width + cell.col
    }

    pub(crate) fn cell_at(&self, index: usize) -> Cell {
        Cell::new(index / self.width, index % self.width)
    }

    pub(crate) fn bbox_len(&self) -> usize {
        self.mask.len()
    }

    /// All cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.mask.len())
            .filter(|&i| self.mask[i])
            .map(|i| self.cell_at(i))
    }

    /// Vertices whose four incident cells all lie in the region, row-major.
    pub fn interior_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (1..self.height).flat_map(move |r| {
            (1..self.width)
                .map(move |c| Vertex::new(r, c))
                .filter(|v| self.is_interior(*v))
        })
    }

    pub fn is_interior(&self, v: Vertex) -> bool {
        v.quadrants()
            .map(|q| q.iter().all(|&c| self.contains(c)))
            .unwrap_or(false)
    }

    /// A cell is on the boundary when one of its four sides is not shared
    /// with another region cell.
    pub fn is_boundary_cell(&self, cell: Cell) -> bool {
        if !self.contains(cell) {
            return false;
        }
        let up = cell.up().map(|c| self.contains(c)).unwrap_or(false);
        let left = cell.left().map(|c| self.contains(c)).unwrap_or(false);
        !(up && left && self.contains(cell.right()) && self.contains(cell.down()))
    }
}

impl fmt::Debug for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Region({}x{}, area {})\n{}", self.height, self.width, self.area, self.to_ascii())
    }
}
