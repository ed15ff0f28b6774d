use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::{Arc, Mutex, RwLock};

use bwythoff::{parse_beta_spec, Move, Outcome, OutcomeGrid, Position, RuleSet};
use serde::{Deserialize, Serialize};

use crate::error::{ApiError, ApiResult};
use crate::grids::GridCache;
use crate::session::{engine_move, EnginePlays, GameSession, HistoryEntry, Mover, Status};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CreateSession {
    pub beta: String,
    pub x: u64,
    pub y: u64,
    pub engine_plays: EnginePlays,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegalSummary {
    pub nim_x: u64,
    pub nim_y: u64,
    pub diagonal: u64,
    pub total: u64,
}

/// Session state as returned to clients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionView {
    pub id: String,
    pub beta: String,
    pub k: u64,
    pub start: Position,
    pub position: Position,
    pub status: Status,
    pub engine_plays: EnginePlays,
    pub to_move: Option<Mover>,
    pub restricted: bool,
    pub legal_moves: LegalSummary,
    pub history: Vec<HistoryEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Hint {
    #[serde(rename = "move")]
    pub mv: Option<Move>,
    pub classification: Outcome,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
enum Event {
    Create {
        id: String,
        #[serde(flatten)]
        request: CreateSession,
    },
    Move {
        id: String,
        #[serde(rename = "move")]
        mv: Move,
    },
}

struct Slot {
    session: GameSession,
    grid: Arc<OutcomeGrid>,
}

/// In-memory session store. Requests on one session are serialized by its
/// own lock; distinct sessions proceed independently.
pub struct SessionService {
    grids: GridCache,
    sessions: RwLock<HashMap<String, Arc<Mutex<Slot>>>>,
    snapshot: Option<Mutex<File>>,
}

fn new_id() -> String {
    format!("{:032x}", rand::random::<u128>())
}

impl SessionService {
    pub fn new(grids: GridCache) -> Self {
        SessionService {
            grids,
            sessions: RwLock::new(HashMap::new()),
            snapshot: None,
        }
    }

    /// Replays the JSON-lines snapshot at `path` (if any), then appends every
    /// later create and human move to it.
    pub fn with_snapshot(grids: GridCache, path: &Path) -> ApiResult<Self> {
        let mut service = SessionService::new(grids);
        if path.exists() {
            for line in BufReader::new(File::open(path)?).lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let event: Event = serde_json::from_str(&line)
                    .map_err(|e| ApiError::BadRequest(format!("corrupt snapshot line: {e}")))?;
                match event {
                    Event::Create { id, request } => {
                        service.insert(id, &request)?;
                    }
                    Event::Move { id, mv } => {
                        service.submit_move(&id, mv)?;
                    }
                }
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        service.snapshot = Some(Mutex::new(file));
        Ok(service)
    }

    pub fn grids(&self) -> &GridCache {
        &self.grids
    }

    fn record(&self, event: &Event) -> ApiResult<()> {
        if let Some(file) = &self.snapshot {
            let mut line = serde_json::to_string(event).expect("event serializes");
            line.push('\n');
            file.lock().unwrap().write_all(line.as_bytes())?;
        }
        Ok(())
    }

    fn slot(&self, id: &str) -> ApiResult<Arc<Mutex<Slot>>> {
        self.sessions
            .read()
            .unwrap()
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::UnknownSession(id.to_owned()))
    }

    fn insert(&self, id: String, request: &CreateSession) -> ApiResult<SessionView> {
        let rules = RuleSet::variant(parse_beta_spec(&request.beta)?)?;
        let start = Position::new(request.x, request.y);
        let grid = self.grids.grid(&rules, start.x.max(start.y))?;
        let mut session = GameSession::new(
            id.clone(),
            rules.beta().expect("variant").render(),
            rules,
            start,
            request.engine_plays,
        );
        if session.to_move() == Some(Mover::Engine) {
            let mv = engine_move(&grid, session.current)?;
            session.push(Mover::Engine, mv)?;
        }
        let slot = Slot { session, grid };
        let view = view(&slot)?;
        self.sessions
            .write()
            .unwrap()
            .insert(id, Arc::new(Mutex::new(slot)));
        Ok(view)
    }

    pub fn create_session(&self, request: &CreateSession) -> ApiResult<SessionView> {
        let id = new_id();
        let view = self.insert(id.clone(), request)?;
        self.record(&Event::Create {
            id,
            request: request.clone(),
        })?;
        Ok(view)
    }

    pub fn session(&self, id: &str) -> ApiResult<SessionView> {
        let slot = self.slot(id)?;
        let slot = slot.lock().unwrap();
        view(&slot)
    }

    /// The full session record, for replay checks.
    pub fn snapshot_of(&self, id: &str) -> ApiResult<GameSession> {
        Ok(self.slot(id)?.lock().unwrap().session.clone())
    }

    /// Applies a human move and the engine's reply.
    pub fn submit_move(&self, id: &str, mv: Move) -> ApiResult<SessionView> {
        let slot = self.slot(id)?;
        let mut slot = slot.lock().unwrap();
        match slot.session.to_move() {
            Some(Mover::Human) => {}
            Some(Mover::Engine) => return Err(ApiError::NotYourTurn("engine to move".into())),
            None => return Err(ApiError::NotYourTurn("game is over".into())),
        }
        slot.session.push(Mover::Human, mv)?;
        if slot.session.to_move() == Some(Mover::Engine) {
            let reply = engine_move(&slot.grid, slot.session.current)?;
            slot.session.push(Mover::Engine, reply)?;
        }
        let view = view(&slot)?;
        drop(slot);
        self.record(&Event::Move {
            id: id.to_owned(),
            mv,
        })?;
        Ok(view)
    }

    pub fn hint(&self, id: &str) -> ApiResult<Hint> {
        let slot = self.slot(id)?;
        let slot = slot.lock().unwrap();
        let pos = slot.session.current;
        Ok(Hint {
            mv: slot.grid.best_move(pos)?,
            classification: slot.grid.classify(pos)?,
        })
    }

    pub fn len(&self) -> usize {
        self.sessions.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Default for SessionService {
    fn default() -> Self {
        SessionService::new(GridCache::default())
    }
}

fn view(slot: &Slot) -> ApiResult<SessionView> {
    let s = &slot.session;
    let pos = s.current;
    let mut summary = LegalSummary {
        nim_x: 0,
        nim_y: 0,
        diagonal: 0,
        total: 0,
    };
    for mv in s.rules.legal_moves(pos)? {
        match mv {
            Move::NimX(_) => summary.nim_x += 1,
            Move::NimY(_) => summary.nim_y += 1,
            Move::Diagonal(..) => summary.diagonal += 1,
        }
        summary.total += 1;
    }
    Ok(SessionView {
        id: s.id.clone(),
        beta: s.beta.clone(),
        k: s.rules.k(),
        start: s.start,
        position: pos,
        status: s.status,
        engine_plays: s.engine_plays,
        to_move: s.to_move(),
        restricted: s.rules.is_restricted(pos)?,
        legal_moves: summary,
        history: s.history.clone(),
    })
}
