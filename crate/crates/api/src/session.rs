use bwythoff::{apply_move, Move, OutcomeGrid, Position, Result, RuleSet};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mover {
    Human,
    Engine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnginePlays {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    InProgress,
    HumanWon,
    EngineWon,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub mover: Mover,
    #[serde(rename = "move")]
    pub mv: Move,
    pub position: Position,
}

#[derive(Debug, Clone)]
pub struct GameSession {
    pub id: String,
    pub beta: String,
    pub rules: RuleSet,
    pub start: Position,
    pub current: Position,
    pub history: Vec<HistoryEntry>,
    pub status: Status,
    pub engine_plays: EnginePlays,
}

/// The engine's choice: a winning move when one exists, otherwise the
/// legal move leaving the fewest tokens, earliest in move order.
pub fn engine_move(grid: &OutcomeGrid, pos: Position) -> Result<Move> {
    if let Some(mv) = grid.best_move(pos)? {
        return Ok(mv);
    }
    let moves = grid.rules().legal_moves(pos)?;
    Ok(moves
        .into_iter()
        .min_by_key(|&mv| apply_move(pos, mv).map(Position::total).unwrap_or(u64::MAX))
        .expect("non-terminal positions have moves"))
}

impl GameSession {
    pub(crate) fn new(
        id: String,
        beta: String,
        rules: RuleSet,
        start: Position,
        engine_plays: EnginePlays,
    ) -> Self {
        let status = if start.is_terminal() {
            match engine_plays {
                EnginePlays::First => Status::HumanWon,
                EnginePlays::Second => Status::EngineWon,
            }
        } else {
            Status::InProgress
        };
        GameSession {
            id,
            beta,
            rules,
            start,
            current: start,
            history: Vec::new(),
            status,
            engine_plays,
        }
    }

    /// Whose turn it is, or `None` once the game is over.
    pub fn to_move(&self) -> Option<Mover> {
        if self.status != Status::InProgress {
            return None;
        }
        let engine_first = self.engine_plays == EnginePlays::First;
        let engine_turn = self.history.len().is_multiple_of(2) == engine_first;
        Some(if engine_turn {
            Mover::Engine
        } else {
            Mover::Human
        })
    }

    pub(crate) fn push(&mut self, mover: Mover, mv: Move) -> Result<()> {
        self.rules.validate(self.current, mv)?;
        self.current = apply_move(self.current, mv)?;
        self.history.push(HistoryEntry {
            mover,
            mv,
            position: self.current,
        });
        if self.current.is_terminal() {
            self.status = match mover {
                Mover::Human => Status::HumanWon,
                Mover::Engine => Status::EngineWon,
            };
        }
        Ok(())
    }

    /// Replays the history from the start position and returns the
    /// resulting position and status.
    pub fn replay(&self) -> Result<(Position, Status)> {
        let mut fresh = GameSession::new(
            self.id.clone(),
            self.beta.clone(),
            self.rules.clone(),
            self.start,
            self.engine_plays,
        );
        for entry in &self.history {
            fresh.push(entry.mover, entry.mv)?;
        }
        Ok((fresh.current, fresh.status))
    }
}
