use tatami_core::Covering;

/// The covering's glyph rows inside a `+--+` frame.
pub fn render_ascii(covering: &Covering) -> String {
    let width = covering.region().width();
    let edge = format!("+{}+\n", "-".repeat(width));
    let mut out = edge.clone();
    for row in covering.glyph_rows() {
        out.push('|');
        out.push_str(&row);
        out.push_str("|\n");
    }
    out.push_str(&edge);
    out
}
