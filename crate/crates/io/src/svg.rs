use std::fmt::Write as _;

use tatami_core::{Covering, TileKind};

const CELL: usize = 24;
const MARGIN: usize = 8;
const GAP: usize = 16;

fn panel(out: &mut String, c: &Covering, x: usize, y: usize) {
    let region = c.region();
    let (w, h) = (region.width() * CELL, region.height() * CELL);
    let _ = writeln!(out, r##"<g transform="translate({x},{y})">"##);
    for cell in region.cells() {
        let _ = writeln!(
            out,
            r##"<rect x="{}" y="{}" width="{CELL}" height="{CELL}" fill="#f4efe1" stroke="#d8d0bc" stroke-width="0.5"/>"##,
            cell.col * CELL,
            cell.row * CELL
        );
    }
    for t in c.tiles() {
        let (rows, cols) = match t.kind {
            TileKind::Monomino => (1, 1),
            TileKind::HDomino => (1, 2),
            TileKind::VDomino => (2, 1),
        };
        let (tx, ty) = (t.anchor.col * CELL + 2, t.anchor.row * CELL + 2);
        let (tw, th) = (cols * CELL - 4, rows * CELL - 4);
        if t.kind == TileKind::Monomino {
            let _ = writeln!(out, r##"<rect x="{tx}" y="{ty}" width="{tw}" height="{th}" rx="5" fill="#2f5d62" stroke="#1b3437"/>"##);
            let _ = writeln!(out, r##"<circle cx="{}" cy="{}" r="3" fill="#f4efe1"/>"##, tx + tw / 2, ty + th / 2);
        } else {
            let _ = writeln!(out, r##"<rect x="{tx}" y="{ty}" width="{tw}" height="{th}" rx="5" fill="#a7c4a0" stroke="#4f6d4a"/>"##);
        }
    }
    let _ = writeln!(out, r##"<rect x="0" y="0" width="{w}" height="{h}" fill="none" stroke="#333333" stroke-width="1.5"/>"##);
    out.push_str("</g>\n");
}

fn document(width: usize, height: usize, body: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n{body}</svg>\n"
    )
}

/// One covering. Tiles are rounded rectangles; monominoes are dark with a
/// dot, dominoes light.
pub fn render_svg(covering: &Covering) -> String {
    let region = covering.region();
    let mut body = String::new();
    panel(&mut body, covering, MARGIN, MARGIN);
    document(region.width() * CELL + 2 * MARGIN, region.height() * CELL + 2 * MARGIN, &body)
}

/// A sheet of coverings laid out row by row, `columns` per row (about the
/// square root of the count when `None`). Panels are sized by the largest
/// bounding box.
pub fn render_gallery(coverings: &[Covering], columns: Option<usize>) -> String {
    let n = coverings.len();
    let columns = columns.unwrap_or_else(|| (1..).find(|c| c * c >= n).unwrap_or(1)).max(1);
    let pw = coverings.iter().map(|c| c.region().width()).max().unwrap_or(0) * CELL;
    let ph = coverings.iter().map(|c| c.region().height()).max().unwrap_or(0) * CELL;
    let rows = n.div_ceil(columns);
    let mut body = String::new();
    for (i, c) in coverings.iter().enumerate() {
        let (r, col) = (i / columns, i % columns);
        panel(&mut body, c, MARGIN + col * (pw + GAP), MARGIN + r * (ph + GAP));
    }
    let width = 2 * MARGIN + columns.min(n.max(1)) * (pw + GAP) - if n > 0 { GAP } else { 0 };
    let height = 2 * MARGIN + rows * (ph + GAP) - if n > 0 { GAP } else { 0 };
    document(width, height, &body)
}
