//! The puzzle document format.
//!
//! ```text
//! tatami-puzzle 1
//! id: tomoku-2x3
//! title: A small Tomoku
//! mode: tomoku
//! size: 2x3
//! rows:
//!   2 2 0
//!   2 0 1
//! cols:
//!   ...
//! given:
//!   0 V 0 1 optional tag
//! solution:
//!   ^<>
//!   v•.
//! ```
//!
//! The first line names the format and its version. Every other entry is
//! `key: value` or `key:` followed by a block of lines indented by two
//! spaces. Blank lines and top-level lines starting with `#` are ignored.
//!
//! Keys: `id`, `title`, `mode`, `difficulty`, `size` (`HxW`, for
//! rectangles) or `region` (block of `#` cells and `.` holes),
//! `max-monominoes`, `max-dominoes`, `noku-kinds` (letters from `MHV`),
//! `rows` and `cols` (blocks of `v h m` triples), `given` (block of
//! `id kind row col [tag]`, kind one of `M`, `H`, `V`), `solution` (block
//! of glyph rows, see [`Covering::glyph_rows`]) and `features`.
//!
//! The `features` block describes the solution, whose tiles are numbered
//! from 0 in reading order of their top-left cells:
//!
//! ```text
//! features:
//!   loner 7
//!   vee 9 10
//!   bidimer 0 1
//!   vortex cw 2 3 4 5 6
//!   ray 12 31
//!   bond 0,0 0,1 0,2
//! ```
//!
//! A vortex lists its centre and then its top, right, bottom and left
//! dominoes. Other keys are kept, in order, and written back unchanged.

use std::fmt::Write as _;

use tatami_core::structure::{classify_features, Chirality, FeatureReport, Vortex};
use tatami_core::{
    Cell, Covering, Mode, PieceBudget, Projections, PuzzleSpec, Region, TatamiError, Tile, TileId, TileKind, Triple,
};

pub const FORMAT_VERSION: u32 = 1;
const HEADER: &str = "tatami-puzzle";

/// A key this version does not know, with its scalar value and block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtraField {
    pub key: String,
    pub value: String,
    pub block: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuzzleDocument {
    pub format_version: u32,
    pub spec: PuzzleSpec,
    pub solution: Option<Covering>,
    pub features: Option<FeatureReport>,
    pub extra: Vec<ExtraField>,
}

impl PuzzleDocument {
    pub fn new(spec: PuzzleSpec) -> PuzzleDocument {
        PuzzleDocument { format_version: FORMAT_VERSION, spec, solution: None, features: None, extra: Vec::new() }
    }

    /// Attaches a solution, renumbered in reading order, and optionally its
    /// feature report.
    pub fn with_solution(mut self, solution: &Covering, features: bool) -> Result<PuzzleDocument, TatamiError> {
        let solution = Covering::from_glyph_rows(&solution.glyph_rows())?;
        self.features = if features { Some(classify_features(&solution)?) } else { None };
        self.solution = Some(solution);
        Ok(self)
    }
}

struct Entry {
    line: usize,
    key: String,
    value: String,
    block: Vec<(usize, String)>,
}

fn syntax(line: usize, message: impl Into<String>) -> TatamiError {
    TatamiError::Syntax { line, message: message.into() }
}

fn schema(message: impl Into<String>) -> TatamiError {
    TatamiError::Schema(message.into())
}

fn split_entries(text: &str) -> Result<(u32, Vec<Entry>), TatamiError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r'))).peekable();
    let is_skippable = |l: &str| l.trim().is_empty() || l.starts_with('#');
    let version = loop {
        let Some((n, line)) = lines.next() else {
            return Err(syntax(1, "missing header line"));
        };
        if is_skippable(line) {
            continue;
        }
        let mut words = line.split_whitespace();
        if words.next() != Some(HEADER) {
            return Err(syntax(n, format!("expected '{HEADER} <version>'")));
        }
        let version: u32 = words
            .next()
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| syntax(n, "missing or malformed version"))?;
        if words.next().is_some() {
            return Err(syntax(n, "unexpected text after the version"));
        }
        break version;
    };
    if version != FORMAT_VERSION {
        return Err(schema(format!("unsupported format version {version}")));
    }
    let mut entries: Vec<Entry> = Vec::new();
    while let Some((n, line)) = lines.next() {
        if is_skippable(line) {
            continue;
        }
        if line.starts_with(' ') {
            return Err(syntax(n, "indented line outside a block"));
        }
        let (key, value) = line.split_once(':').ok_or_else(|| syntax(n, "expected 'key: value'"))?;
        let key = key.trim();
        if key.is_empty() || key.contains(char::is_whitespace) {
            return Err(syntax(n, format!("malformed key {key:?}")));
        }
        if entries.iter().any(|e| e.key == key) {
            return Err(syntax(n, format!("duplicate key {key:?}")));
        }
        let mut block = Vec::new();
        while let Some(&(m, next)) = lines.peek() {
            match next.strip_prefix("  ") {
                Some(rest) => {
                    block.push((m, rest.to_string()));
                    lines.next();
                }
                None => break,
            }
        }
        entries.push(Entry { line: n, key: key.to_string(), value: value.trim().to_string(), block });
    }
    Ok((version, entries))
}

fn number<T: std::str::FromStr>(line: usize, word: &str, what: &str) -> Result<T, TatamiError> {
    word.parse().map_err(|_| syntax(line, format!("{what}: expected a number, found {word:?}")))
}

fn scalar(e: &Entry) -> Result<&str, TatamiError> {
    if !e.block.is_empty() {
        return Err(syntax(e.block[0].0, format!("{} takes a value, not a block", e.key)));
    }
    Ok(&e.value)
}

fn block(e: &Entry) -> Result<&[(usize, String)], TatamiError> {
    if !e.value.is_empty() {
        return Err(syntax(e.line, format!("{} takes a block, not a value", e.key)));
    }
    Ok(&e.block)
}

fn parse_size(e: &Entry) -> Result<Region, TatamiError> {
    let v = scalar(e)?;
    let (h, w) = v.split_once('x').ok_or_else(|| syntax(e.line, "size must look like HxW"))?;
    Region::rectangle(number(e.line, h.trim(), "size")?, number(e.line, w.trim(), "size")?)
        .map_err(|_| schema("size must be positive"))
}

fn parse_region(e: &Entry) -> Result<Region, TatamiError> {
    let rows = block(e)?;
    for (n, row) in rows {
        if let Some(bad) = row.chars().find(|c| !matches!(c, '#' | '.')) {
            return Err(syntax(*n, format!("unexpected region character {bad:?}")));
        }
    }
    let text: Vec<&str> = rows.iter().map(|(_, r)| r.as_str()).collect();
    Region::from_ascii(&text.join("\n")).map_err(|_| schema("region has no cells"))
}

fn parse_triples(e: &Entry) -> Result<Vec<Triple>, TatamiError> {
    block(e)?
        .iter()
        .map(|(n, row)| {
            let words: Vec<&str> = row.split_whitespace().collect();
            if words.len() != 3 {
                return Err(syntax(*n, "expected three numbers: v h m"));
            }
            Ok(Triple::new(number(*n, words[0], "v")?, number(*n, words[1], "h")?, number(*n, words[2], "m")?))
        })
        .collect()
}

fn parse_kind(n: usize, word: &str) -> Result<TileKind, TatamiError> {
    let mut chars = word.chars();
    match (chars.next().and_then(TileKind::from_letter), chars.next()) {
        (Some(k), None) => Ok(k),
        _ => Err(syntax(n, format!("unknown tile kind {word:?}"))),
    }
}

fn parse_given(e: &Entry) -> Result<Vec<Tile>, TatamiError> {
    block(e)?
        .iter()
        .map(|(n, row)| {
            let mut parts = row.trim().splitn(5, ' ');
            let mut next = |what: &str| parts.next().filter(|w| !w.is_empty()).ok_or_else(|| syntax(*n, format!("missing {what}")));
            let id: TileId = number(*n, next("tile id")?, "tile id")?;
            let kind = parse_kind(*n, next("tile kind")?)?;
            let row_ix = number(*n, next("row")?, "row")?;
            let col_ix = number(*n, next("column")?, "column")?;
            let mut tile = Tile::new(id, kind, Cell::new(row_ix, col_ix));
            tile.tag = parts.next().map(str::trim).filter(|t| !t.is_empty()).map(str::to_string);
            Ok(tile)
        })
        .collect()
}

fn parse_solution(e: &Entry) -> Result<Covering, TatamiError> {
    let rows = block(e)?;
    let first = rows.first().map(|(n, _)| *n).unwrap_or(e.line);
    let text: Vec<&str> = rows.iter().map(|(_, r)| r.as_str()).collect();
    Covering::from_glyph_rows(&text).map_err(|err| match err {
        TatamiError::Syntax { line, message } => syntax(first + line - 1, message),
        other => schema(format!("solution: {other}")),
    })
}

fn parse_features(e: &Entry, solution: &Covering) -> Result<FeatureReport, TatamiError> {
    let mut report = FeatureReport::default();
    for (n, row) in block(e)? {
        let n = *n;
        let mut words = row.split_whitespace();
        let what = words.next().ok_or_else(|| syntax(n, "empty feature line"))?;
        let rest: Vec<&str> = words.collect();
        let ids = |words: &[&str]| -> Result<Vec<TileId>, TatamiError> {
            words
                .iter()
                .map(|w| {
                    let id: TileId = number(n, w, "tile id")?;
                    solution.tile(id).map(|_| id).ok_or_else(|| schema(format!("line {n}: no solution tile {id}")))
                })
                .collect()
        };
        let pair = |words: &[&str]| -> Result<[TileId; 2], TatamiError> {
            let v = ids(words)?;
            <[TileId; 2]>::try_from(v).map_err(|_| syntax(n, format!("{what} takes two tile ids")))
        };
        match what {
            "loner" => match ids(&rest)?.as_slice() {
                [id] => report.loners.push(*id),
                _ => return Err(syntax(n, "loner takes one tile id")),
            },
            "vee" => report.vees.push(pair(&rest)?),
            "bidimer" => report.bidimers.push(pair(&rest)?),
            "vortex" => {
                let chirality = match rest.first() {
                    Some(&"cw") => Chirality::Clockwise,
                    Some(&"ccw") => Chirality::CounterClockwise,
                    _ => return Err(syntax(n, "vortex needs cw or ccw")),
                };
                match ids(&rest[1..])?.as_slice() {
                    &[centre, a, b, c, d] => report.vortices.push(Vortex { centre, dominoes: [a, b, c, d], chirality }),
                    _ => return Err(syntax(n, "vortex takes five tile ids")),
                }
            }
            "ray" if !rest.is_empty() => report.rays.push(ids(&rest)?),
            "bond" => {
                for w in rest {
                    let (r, c) = w.split_once(',').ok_or_else(|| syntax(n, format!("bond cell {w:?} must look like row,col")))?;
                    report.bond_cells.push(Cell::new(number(n, r, "row")?, number(n, c, "column")?));
                }
            }
            other => return Err(syntax(n, format!("unknown feature {other:?}"))),
        }
    }
    Ok(report)
}

pub fn parse_puzzle(text: &str) -> Result<PuzzleDocument, TatamiError> {
    let (format_version, entries) = split_entries(text)?;
    let mut mode = None;
    let mut region = None;
    let mut spec_fields: Vec<&Entry> = Vec::new();
    let mut solution = None;
    let mut features_entry = None;
    let mut extra = Vec::new();
    for e in &entries {
        match e.key.as_str() {
            "mode" => mode = Some(scalar(e)?.parse::<Mode>()?),
            "size" | "region" => {
                if region.is_some() {
                    return Err(schema("give either size or region, not both"));
                }
                region = Some(if e.key == "size" { parse_size(e)? } else { parse_region(e)? });
            }
            "id" | "title" | "difficulty" | "max-monominoes" | "max-dominoes" | "noku-kinds" | "rows" | "cols" | "given" => {
                spec_fields.push(e)
            }
            "solution" => solution = Some(parse_solution(e)?),
            "features" => features_entry = Some(e),
            _ => extra.push(ExtraField {
                key: e.key.clone(),
                value: e.value.clone(),
                block: e.block.iter().map(|(_, l)| l.clone()).collect(),
            }),
        }
    }
    let mode = mode.ok_or_else(|| schema("missing field: mode"))?;
    let region = region.ok_or_else(|| schema("missing field: size or region"))?;
    let mut spec = PuzzleSpec::new(mode, region);
    let mut rows = None;
    let mut cols = None;
    let mut budget = PieceBudget::default();
    for e in spec_fields {
        match e.key.as_str() {
            "id" => spec.meta.id = scalar(e)?.to_string(),
            "title" => spec.meta.title = scalar(e)?.to_string(),
            "difficulty" => spec.meta.difficulty = Some(scalar(e)?.to_string()),
            "max-monominoes" => budget.max_monominoes = Some(number(e.line, scalar(e)?, "max-monominoes")?),
            "max-dominoes" => budget.max_dominoes = Some(number(e.line, scalar(e)?, "max-dominoes")?),
            "noku-kinds" => {
                let kinds = scalar(e)?
                    .chars()
                    .map(|ch| TileKind::from_letter(ch).ok_or_else(|| syntax(e.line, format!("unknown tile kind {ch:?}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                spec.noku_kinds = Some(kinds);
            }
            "rows" => rows = Some(parse_triples(e)?),
            "cols" => cols = Some(parse_triples(e)?),
            "given" => spec.given_tiles = parse_given(e)?,
            _ => unreachable!("filtered above"),
        }
    }
    if budget != PieceBudget::default() {
        spec.piece_budget = Some(budget);
    }
    spec.projections = match (rows, cols) {
        (Some(rows), Some(cols)) => Some(Projections { rows, cols }),
        (None, None) => None,
        _ => return Err(schema("rows and cols must be given together")),
    };
    spec.validate().map_err(|e| match e {
        TatamiError::MalformedPuzzle(m) => schema(m),
        other => other,
    })?;
    if let Some(s) = &solution {
        if s.region() != &spec.region {
            return Err(schema("solution does not match the region"));
        }
    }
    let features = match (features_entry, &solution) {
        (Some(e), Some(s)) => Some(parse_features(e, s)?),
        (Some(_), None) => return Err(schema("features need a solution")),
        (None, _) => None,
    };
    Ok(PuzzleDocument { format_version, spec, solution, features, extra })
}

fn write_block<I: IntoIterator<Item = S>, S: AsRef<str>>(out: &mut String, key: &str, lines: I) {
    let _ = writeln!(out, "{key}:");
    for l in lines {
        let _ = writeln!(out, "  {}", l.as_ref());
    }
}

fn feature_lines(f: &FeatureReport) -> Vec<String> {
    let join = |ids: &[TileId]| ids.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ");
    let mut out = Vec::new();
    out.extend(f.loners.iter().map(|id| format!("loner {id}")));
    out.extend(f.vees.iter().map(|p| format!("vee {}", join(p))));
    out.extend(f.bidimers.iter().map(|p| format!("bidimer {}", join(p))));
    for v in &f.vortices {
        let c = match v.chirality {
            Chirality::Clockwise => "cw",
            Chirality::CounterClockwise => "ccw",
        };
        out.push(format!("vortex {c} {} {}", v.centre, join(&v.dominoes)));
    }
    out.extend(f.rays.iter().map(|r| format!("ray {}", join(r))));
    for chunk in f.bond_cells.chunks(12) {
        let cells: Vec<String> = chunk.iter().map(|c| format!("{},{}", c.row, c.col)).collect();
        out.push(format!("bond {}", cells.join(" ")));
    }
    out
}

/// Writes `doc` with a fixed field order; unknown fields come last.
pub fn render_puzzle(doc: &PuzzleDocument) -> String {
    let spec = &doc.spec;
    let mut out = format!("{HEADER} {}\n", doc.format_version);
    let mut field = |key: &str, value: &str| {
        let _ = writeln!(out, "{key}: {value}");
    };
    if !spec.meta.id.is_empty() {
        field("id", &spec.meta.id);
    }
    if !spec.meta.title.is_empty() {
        field("title", &spec.meta.title);
    }
    field("mode", spec.mode.name());
    if let Some(d) = &spec.meta.difficulty {
        field("difficulty", d);
    }
    if spec.region.is_rectangle() {
        field("size", &format!("{}x{}", spec.region.height(), spec.region.width()));
    }
    if let Some(b) = spec.piece_budget {
        if let Some(m) = b.max_monominoes {
            field("max-monominoes", &m.to_string());
        }
        if let Some(d) = b.max_dominoes {
            field("max-dominoes", &d.to_string());
        }
    }
    if let Some(kinds) = &spec.noku_kinds {
        field("noku-kinds", &kinds.iter().map(|k| k.letter()).collect::<String>());
    }
    if !spec.region.is_rectangle() {
        write_block(&mut out, "region", spec.region.to_ascii().lines());
    }
    if let Some(p) = &spec.projections {
        write_block(&mut out, "rows", p.rows.iter().map(Triple::to_string));
        write_block(&mut out, "cols", p.cols.iter().map(Triple::to_string));
    }
    if !spec.given_tiles.is_empty() {
        let lines = spec.given_tiles.iter().map(|t| {
            let base = format!("{} {} {} {}", t.id, t.kind.letter(), t.anchor.row, t.anchor.col);
            match &t.tag {
                Some(tag) => format!("{base} {tag}"),
                None => base,
            }
        });
        write_block(&mut out, "given", lines);
    }
    if let Some(s) = &doc.solution {
        write_block(&mut out, "solution", s.glyph_rows().iter().map(|r| r.trim_end()));
    }
    if let Some(f) = &doc.features {
        write_block(&mut out, "features", feature_lines(f));
    }
    for e in &doc.extra {
        if e.value.is_empty() {
            let _ = writeln!(out, "{}:", e.key);
        } else {
            let _ = writeln!(out, "{}: {}", e.key, e.value);
        }
        for l in &e.block {
            let _ = writeln!(out, "  {l}");
        }
    }
    out
}
