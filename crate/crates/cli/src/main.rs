//! `tatami`: solve, count, enumerate, generate, render and serve tatami
//! puzzles.
//!
//! Exit codes: 0 on success, 1 when the answer is "unsatisfiable" or "no
//! match", 2 for usage errors and unreadable input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use tatami_core::enumeration::{count_by_enumeration, count_square_coverings, enumerate_coverings, enumerate_parallel, EnumConstraints};
use tatami_core::noku::{calibrate_ruleset, game_tree_stats, solve_noku, Calibration, NodeConvention, Ruleset};
use tatami_core::solver::{solve, SolveOutcome};
use tatami_core::{Covering, Mode, Region, TileKind};
use tatami_io::{generate_tomoku, parse_puzzle, render_ascii, render_gallery, render_puzzle, render_svg, Difficulty, PuzzleDocument};

#[derive(Parser)]
#[command(name = "tatami", version, about = "Tatami coverings: puzzles, counting and Noku")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Worker threads for enumeration and census work.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Render {
    Ascii,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a puzzle file (or the id of a puzzle in the puzzle directory).
    Solve {
        puzzle: String,
        /// Find every solution.
        #[arg(long, conflicts_with = "limit")]
        all: bool,
        /// Stop after this many solutions.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum)]
        render: Option<Render>,
        #[arg(long, env = "TATAMI_PUZZLES", default_value = "puzzles")]
        puzzles: PathBuf,
    },
    /// Coverings of the n x n square with m monominoes.
    Count {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        /// Also count by exhaustive enumeration and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Write every covering of a rectangle as text and as an SVG gallery.
    Enumerate {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        monominoes: Option<usize>,
        /// Number of vertical dominoes.
        #[arg(long)]
        vertical: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print a Tomoku instance built from a seeded random covering.
    GenerateTomoku {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Only accept instances the solver finishes without backtracking.
        #[arg(long)]
        no_backtrack: bool,
    },
    /// Solve Noku on a rectangle, optionally with a game-tree census.
    Noku {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        /// Allowed tile kinds as letters, e.g. MHV or HV.
        #[arg(long, default_value = "MHV")]
        kinds: String,
        /// Count the nodes of the full game tree.
        #[arg(long)]
        census: bool,
        /// Find the ruleset and node convention giving this many nodes.
        #[arg(long)]
        calibrate: Option<u128>,
    },
    /// Draw a puzzle's solution, or its starting position.
    Render {
        puzzle: String,
        #[arg(long, value_enum, default_value = "ascii")]
        render: Render,
        #[arg(long, env = "TATAMI_PUZZLES", default_value = "puzzles")]
        puzzles: PathBuf,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, env = "TATAMI_PUZZLES", default_value = "puzzles")]
        puzzles: PathBuf,
        /// Directory for session logs; sessions found there are restored.
        #[arg(long)]
        log_dir: Option<PathBuf>,
    },
}

/// What a command produced: text, the same as JSON, and an exit code.
struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Output {
        Output { text, json, code: 0 }
    }
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure(e.to_string())
    }
}

fn load(arg: &str, dir: &Path) -> Result<PuzzleDocument, Failure> {
    let direct = PathBuf::from(arg);
    let path = if direct.exists() {
        direct
    } else {
        let by_id = dir.join(format!("{arg}.tatami"));
        if !by_id.exists() {
            return Err(Failure(format!("no puzzle file {arg} (also looked for {})", by_id.display())));
        }
        by_id
    };
    let text = std::fs::read_to_string(&path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    parse_puzzle(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn draw(c: &Covering, render: Render) -> String {
    match render {
        Render::Ascii => render_ascii(c),
        Render::Svg => render_svg(c),
    }
}

fn layout(c: &Covering) -> Value {
    json!(c.glyph_rows())
}

fn cmd_solve(puzzle: &str, all: bool, limit: Option<usize>, render: Option<Render>, dir: &Path) -> Result<Output, Failure> {
    let doc = load(puzzle, dir)?;
    if doc.spec.mode == Mode::Noku {
        return Err(Failure("noku is a two-player game; use `tatami noku`".into()));
    }
    let limit = if all { usize::MAX } else { limit.unwrap_or(1) };
    let outcome = solve(&doc.spec, limit)?;
    let (status, complete) = match &outcome {
        SolveOutcome::Unsatisfiable => ("unsatisfiable", true),
        SolveOutcome::Solutions(_) => ("solved", true),
        SolveOutcome::LimitReached(_) => ("solved", false),
    };
    let sols = outcome.solutions();
    let mut text = if outcome.is_unsatisfiable() {
        "unsatisfiable\n".to_string()
    } else {
        let more = if complete { "" } else { " (limit reached)" };
        format!("{} solution{}{more}\n", sols.len(), if sols.len() == 1 { "" } else { "s" })
    };
    if let Some(r) = render {
        for s in sols {
            text.push_str(&draw(s, r));
        }
    }
    let json = json!({
        "puzzle": doc.spec.meta.id,
        "status": status,
        "exhaustive": complete,
        "count": sols.len(),
        "solutions": sols.iter().map(layout).collect::<Vec<_>>(),
    });
    Ok(Output { text, json, code: u8::from(outcome.is_unsatisfiable()) })
}

fn cmd_count(n: u32, m: u32, oracle: bool) -> Result<Output, Failure> {
    let formula = count_square_coverings(n, m).count;
    if !oracle {
        return Ok(Output::ok(format!("{formula}\n"), json!({"n": n, "m": m, "count": formula.to_string(), "method": "formula"})));
    }
    let region = Region::rectangle(n as usize, n as usize)?;
    let counted = count_by_enumeration(&region, m as usize)?.count;
    let agree = counted == formula;
    Ok(Output {
        text: format!("{formula}\nenumeration: {counted} ({})\n", if agree { "agrees" } else { "DISAGREES" }),
        json: json!({"n": n, "m": m, "count": formula.to_string(), "enumeration": counted.to_string(), "agree": agree}),
        code: u8::from(!agree),
    })
}

fn cmd_enumerate(rows: usize, cols: usize, monominoes: Option<usize>, vertical: Option<usize>, out: &Path, parallel: bool) -> Result<Output, Failure> {
    let region = Region::rectangle(rows, cols)?;
    let constraints = EnumConstraints { monomino_count: monominoes, vertical_domino_count: vertical, ..Default::default() };
    let all: Vec<Covering> = if parallel {
        enumerate_parallel(&region, constraints)?
    } else {
        enumerate_coverings(&region, constraints)?.collect()
    };
    std::fs::create_dir_all(out)?;
    let listing = out.join("coverings.txt");
    let gallery = out.join("gallery.svg");
    std::fs::write(&listing, all.iter().map(render_ascii).collect::<Vec<_>>().join("\n"))?;
    std::fs::write(&gallery, render_gallery(&all, None))?;
    Ok(Output::ok(
        format!("{} coverings\nwrote {} and {}\n", all.len(), listing.display(), gallery.display()),
        json!({"count": all.len(), "listing": listing, "gallery": gallery}),
    ))
}

fn cmd_generate(rows: usize, cols: usize, seed: u64, no_backtrack: bool) -> Result<Output, Failure> {
    let difficulty = if no_backtrack { Difficulty::NoBacktrack } else { Difficulty::Any };
    let doc = generate_tomoku(rows, cols, seed, difficulty)?;
    let text = render_puzzle(&doc);
    Ok(Output::ok(text.clone(), json!({"id": doc.spec.meta.id, "document": text})))
}

fn ruleset_from(letters: &str) -> Result<Ruleset, Failure> {
    let kinds: Option<Vec<TileKind>> = letters.chars().map(TileKind::from_letter).collect();
    let kinds = kinds.ok_or_else(|| Failure(format!("bad kinds {letters:?}; use letters M, H and V")))?;
    Ok(Ruleset::new(kinds)?)
}

fn convention_name(c: NodeConvention) -> &'static str {
    match c {
        NodeConvention::RootCounted => "root counted",
        NodeConvention::RootExcluded => "root excluded",
    }
}

fn cmd_noku(rows: usize, cols: usize, kinds: &str, census: bool, calibrate: Option<u128>) -> Result<Output, Failure> {
    let region = Region::rectangle(rows, cols)?;
    let ruleset = ruleset_from(kinds)?;
    let verdict = solve_noku(&region, &ruleset)?;
    let mut text = format!("{rows}x{cols} ({}): {} wins\n", ruleset.letters(), verdict.winner);
    if let Some((k, c)) = verdict.best_move {
        text.push_str(&format!("first move: {} at ({}, {})\n", k.letter(), c.row, c.col));
    }
    let mut json = json!({
        "rows": rows,
        "cols": cols,
        "kinds": ruleset.letters(),
        "winner": verdict.winner,
        "best_move": verdict.best_move.map(|(k, c)| json!({"kind": k.letter().to_string(), "row": c.row, "col": c.col})),
    });
    let mut code = 0;
    if census {
        let nodes = game_tree_stats(&region, &ruleset)?;
        text.push_str(&format!("game tree: {nodes} nodes (root counted)\n"));
        json["census"] = json!({"nodes": nodes.to_string(), "convention": "root_counted"});
    }
    if let Some(target) = calibrate {
        let cal = calibrate_ruleset(&region, target)?;
        text.push_str(&format!("census of {rows}x{cols}:\n"));
        for row in cal.census() {
            text.push_str(&format!("  {:<3} {:<13} {}\n", row.ruleset.letters(), convention_name(row.convention), row.nodes));
        }
        let rows_json: Vec<Value> = cal
            .census()
            .iter()
            .map(|r| json!({"kinds": r.ruleset.letters(), "convention": r.convention, "nodes": r.nodes.to_string()}))
            .collect();
        match &cal {
            Calibration::Match { ruleset, convention, .. } => {
                text.push_str(&format!("match: {} with the {}\n", ruleset.letters(), convention_name(*convention)));
                json["calibration"] = json!({"target": target.to_string(), "result": "match", "kinds": ruleset.letters(), "convention": convention, "census": rows_json});
            }
            Calibration::NoMatch { .. } => {
                text.push_str(&format!("no match for {target}\n"));
                json["calibration"] = json!({"target": target.to_string(), "result": "no_match", "census": rows_json});
                code = 1;
            }
        }
    }
    Ok(Output { text, json, code })
}

fn cmd_render(puzzle: &str, render: Render, dir: &Path) -> Result<Output, Failure> {
    let doc = load(puzzle, dir)?;
    let c = match &doc.solution {
        Some(s) => s.clone(),
        None => doc.spec.validate()?,
    };
    let text = draw(&c, render);
    Ok(Output::ok(text.clone(), json!({"puzzle": doc.spec.meta.id, "output": text})))
}

fn cmd_serve(port: u16, puzzles: &Path, log_dir: Option<&Path>) -> Result<Output, Failure> {
    let library = tatami_service::Library::load_dir(puzzles).map_err(|e| Failure(format!("{}: {e}", puzzles.display())))?;
    let service = match log_dir {
        Some(d) => tatami_service::Service::with_log_dir(library, d)?,
        None => tatami_service::Service::new(library),
    };
    let addr = std::net::SocketAddr::from(([127, 0, 0, 1], port));
    eprintln!("listening on http://{addr}");
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(tatami_service::serve(addr, Arc::new(service)))?;
    Ok(Output::ok(String::new(), json!({})))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("tatami: {e}");
            return ExitCode::from(2);
        }
    }
    let parallel = cli.jobs.is_some_and(|n| n > 1);
    let result = match &cli.command {
        Command::Solve { puzzle, all, limit, render, puzzles } => cmd_solve(puzzle, *all, *limit, *render, puzzles),
        Command::Count { n, m, oracle } => cmd_count(*n, *m, *oracle),
        Command::Enumerate { rows, cols, monominoes, vertical, out } => cmd_enumerate(*rows, *cols, *monominoes, *vertical, out, parallel),
        Command::GenerateTomoku { rows, cols, seed, no_backtrack } => cmd_generate(*rows, *cols, *seed, *no_backtrack),
        Command::Noku { rows, cols, kinds, census, calibrate } => cmd_noku(*rows, *cols, kinds, *census, *calibrate),
        Command::Render { puzzle, render, puzzles } => cmd_render(puzzle, *render, puzzles),
        Command::Serve { port, puzzles, log_dir } => cmd_serve(*port, puzzles, log_dir.as_deref()),
    };
    match result {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", out.json),
            }
            ExitCode::from(out.code)
        }
        Err(Failure(message)) => {
            match cli.format {
                Format::Text => eprintln!("tatami: {message}"),
                Format::Json => println!("{}", json!({"error": message})),
            }
            ExitCode::from(2)
        }
    }
}
