use std::collections::{BTreeMap, HashMap};
use std::fs::{self, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};

use tatami_io::{parse_puzzle, PuzzleDocument};

use crate::error::ApiError;
use crate::model::*;
use crate::session::{LogEvent, Session, SessionHeader};

/// Read-only puzzle documents keyed by id.
#[derive(Clone, Debug, Default)]
pub struct Library {
    docs: BTreeMap<String, PuzzleDocument>,
}

impl Library {
    pub fn from_documents<I: IntoIterator<Item = PuzzleDocument>>(docs: I) -> Library {
        Library { docs: docs.into_iter().map(|d| (d.spec.meta.id.clone(), d)).collect() }
    }

    /// Loads every `*.tatami` file in `dir`.
    pub fn load_dir(dir: &Path) -> io::Result<Library> {
        let mut docs = Vec::new();
        for entry in fs::read_dir(dir)? {
            let path = entry?.path();
            if path.extension().is_some_and(|e| e == "tatami") {
                let text = fs::read_to_string(&path)?;
                let doc = parse_puzzle(&text)
                    .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, format!("{}: {e}", path.display())))?;
                docs.push(doc);
            }
        }
        Ok(Library::from_documents(docs))
    }

    pub fn get(&self, id: &str) -> Option<&PuzzleDocument> {
        self.docs.get(id)
    }

    pub fn summaries(&self) -> Vec<PuzzleSummary> {
        self.docs
            .values()
            .map(|d| PuzzleSummary {
                id: d.spec.meta.id.clone(),
                title: d.spec.meta.title.clone(),
                mode: d.spec.mode,
                difficulty: d.spec.meta.difficulty.clone(),
                height: d.spec.region.height(),
                width: d.spec.region.width(),
                area: d.spec.region.area(),
            })
            .collect()
    }
}

/// Sessions in memory, each behind its own lock, with an optional
/// directory of append-only logs (one JSON-lines file per session: the
/// header, then one event per line).
pub struct Service {
    library: Library,
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    log_dir: Option<PathBuf>,
}

fn internal(e: impl std::fmt::Display) -> ApiError {
    ApiError::Internal(e.to_string())
}

impl Service {
    pub fn new(library: Library) -> Service {
        Service { library, sessions: RwLock::new(HashMap::new()), log_dir: None }
    }

    /// Uses `dir` for logs, replaying any sessions already there.
    pub fn with_log_dir(library: Library, dir: &Path) -> io::Result<Service> {
        fs::create_dir_all(dir)?;
        let mut sessions = HashMap::new();
        let mut paths: Vec<PathBuf> = fs::read_dir(dir)?
            .map(|e| e.map(|e| e.path()))
            .collect::<io::Result<_>>()?;
        paths.retain(|p| p.extension().is_some_and(|e| e == "jsonl"));
        paths.sort();
        for path in paths {
            let session = read_log(&path)?;
            sessions.insert(session.id().to_string(), Arc::new(Mutex::new(session)));
        }
        Ok(Service { library, sessions: RwLock::new(sessions), log_dir: Some(dir.to_path_buf()) })
    }

    pub fn library(&self) -> &Library {
        &self.library
    }

    pub fn list_puzzles(&self) -> PuzzleList {
        PuzzleList { schema_version: SCHEMA_VERSION, puzzles: self.library.summaries() }
    }

    pub fn create_session(&self, req: &CreateSession) -> Result<SessionState, ApiError> {
        let (puzzle_id, doc) = match (&req.puzzle_id, &req.document) {
            (Some(id), None) => {
                let doc = self.library.get(id).ok_or_else(|| ApiError::UnknownPuzzle(id.clone()))?;
                (Some(id.clone()), doc.clone())
            }
            (None, Some(text)) => (None, parse_puzzle(text).map_err(|e| ApiError::Schema(e.to_string()))?),
            _ => return Err(ApiError::Schema("give exactly one of puzzle_id and document".into())),
        };
        let id = uuid::Uuid::new_v4().simple().to_string();
        let session = Session::create(id.clone(), puzzle_id, &doc, req.vs_ai, req.human)?;
        if let Some(dir) = &self.log_dir {
            let line = serde_json::to_string(session.header()).map_err(internal)?;
            fs::write(log_path(dir, &id), format!("{line}\n")).map_err(internal)?;
        }
        let state = session.state();
        self.sessions.write().expect("session map").insert(id, Arc::new(Mutex::new(session)));
        Ok(state)
    }

    fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        self.sessions
            .read()
            .expect("session map")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::SessionNotFound(id.to_string()))
    }

    /// Runs `op` under the session's lock and appends whatever it logged.
    fn with_session<T>(&self, id: &str, op: impl FnOnce(&mut Session) -> Result<T, ApiError>) -> Result<T, ApiError> {
        let handle = self.session(id)?;
        let mut s = handle.lock().expect("session lock");
        let before = s.log().len();
        let result = op(&mut s);
        if let Some(dir) = &self.log_dir {
            let fresh = &s.log()[before..];
            if !fresh.is_empty() {
                let mut f = OpenOptions::new().append(true).open(log_path(dir, id)).map_err(internal)?;
                for e in fresh {
                    writeln!(f, "{}", serde_json::to_string(e).map_err(internal)?).map_err(internal)?;
                }
            }
        }
        result
    }

    pub fn state(&self, id: &str) -> Result<SessionState, ApiError> {
        self.with_session(id, |s| Ok(s.state()))
    }

    pub fn place(&self, id: &str, req: &PlaceRequest) -> Result<PlaceResponse, ApiError> {
        self.with_session(id, |s| {
            let (verdict, ai_move) = s.place(req, true)?;
            Ok(PlaceResponse { schema_version: SCHEMA_VERSION, verdict, ai_move, state: s.state() })
        })
    }

    pub fn remove(&self, id: &str, req: &RemoveRequest) -> Result<RemoveResponse, ApiError> {
        self.with_session(id, |s| {
            let removed = s.remove(req.tile_id)?;
            Ok(RemoveResponse { schema_version: SCHEMA_VERSION, removed, state: s.state() })
        })
    }

    pub fn hint(&self, id: &str) -> Result<HintResponse, ApiError> {
        self.with_session(id, |s| Ok(HintResponse { schema_version: SCHEMA_VERSION, hint: s.hint()? }))
    }

    pub fn ai_move(&self, id: &str) -> Result<AiMoveResponse, ApiError> {
        self.with_session(id, |s| {
            let ai_move = s.ai_move()?;
            Ok(AiMoveResponse { schema_version: SCHEMA_VERSION, ai_move, state: s.state() })
        })
    }

    /// The session's header and event log.
    pub fn export(&self, id: &str) -> Result<(SessionHeader, Vec<LogEvent>), ApiError> {
        self.with_session(id, |s| Ok((s.header().clone(), s.log().to_vec())))
    }
}

fn log_path(dir: &Path, id: &str) -> PathBuf {
    dir.join(format!("{id}.jsonl"))
}

fn read_log(path: &Path) -> io::Result<Session> {
    let bad = |m: String| io::Error::new(io::ErrorKind::InvalidData, format!("{}: {m}", path.display()));
    let mut lines = BufReader::new(fs::File::open(path)?).lines();
    let header: SessionHeader = match lines.next() {
        Some(line) => serde_json::from_str(&line?).map_err(|e| bad(e.to_string()))?,
        None => return Err(bad("empty log".into())),
    };
    let mut events = Vec::new();
    for line in lines {
        let line = line?;
        if !line.trim().is_empty() {
            events.push(serde_json::from_str(&line).map_err(|e| bad(e.to_string()))?);
        }
    }
    Session::replay(&header, &events).map_err(|e| bad(e.to_string()))
}
