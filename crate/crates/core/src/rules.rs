//! Positions, moves and move generation for k-Wythoff Nim and its
//! β-restricted variant.

use std::fmt;
use std::sync::{Arc, RwLock};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, IllegalReason, Result};
use crate::exact::IrrationalSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Position {
    pub x: u64,
    pub y: u64,
}

impl Position {
    pub const fn new(x: u64, y: u64) -> Self {
        Position { x, y }
    }

    pub const fn is_terminal(self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub const fn mirrored(self) -> Self {
        Position {
            x: self.y,
            y: self.x,
        }
    }

    pub const fn total(self) -> u64 {
        self.x + self.y
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(u64, u64)> for Position {
    fn from((x, y): (u64, u64)) -> Self {
        Position { x, y }
    }
}

/// A move, by the amounts removed from each pile.
///
/// Serialises as `{"type": "nim_x", "t": 4}` or
/// `{"type": "diagonal", "s": 3, "t": 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "MoveRepr", try_from = "MoveRepr")]
pub enum Move {
    /// Take `t` from the first pile.
    NimX(u64),
    /// Take `t` from the second pile.
    NimY(u64),
    /// Take `s` from the first pile and `t` from the second.
    Diagonal(u64, u64),
}

#[derive(Serialize, Deserialize)]
struct MoveRepr {
    #[serde(rename = "type")]
    kind: MoveKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    s: Option<u64>,
    t: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum MoveKind {
    NimX,
    NimY,
    Diagonal,
}

impl From<Move> for MoveRepr {
    fn from(mv: Move) -> Self {
        match mv {
            Move::NimX(t) => MoveRepr {
                kind: MoveKind::NimX,
                s: None,
                t,
            },
            Move::NimY(t) => MoveRepr {
                kind: MoveKind::NimY,
                s: None,
                t,
            },
            Move::Diagonal(s, t) => MoveRepr {
                kind: MoveKind::Diagonal,
                s: Some(s),
                t,
            },
        }
    }
}

impl TryFrom<MoveRepr> for Move {
    type Error = String;

    fn try_from(r: MoveRepr) -> std::result::Result<Self, String> {
        match (r.kind, r.s) {
            (MoveKind::NimX, None) => Ok(Move::NimX(r.t)),
            (MoveKind::NimY, None) => Ok(Move::NimY(r.t)),
            (MoveKind::Diagonal, Some(s)) => Ok(Move::Diagonal(s, r.t)),
            (MoveKind::Diagonal, None) => Err("diagonal move requires `s`".into()),
            (_, Some(_)) => Err("nim moves take only `t`".into()),
        }
    }
}

impl Move {
    /// Amounts removed from `(x, y)`.
    pub const fn amounts(self) -> (u64, u64) {
        match self {
            Move::NimX(t) => (t, 0),
            Move::NimY(t) => (0, t),
            Move::Diagonal(s, t) => (s, t),
        }
    }

    /// The same move with the piles exchanged.
    pub const fn mirrored(self) -> Move {
        match self {
            Move::NimX(t) => Move::NimY(t),
            Move::NimY(t) => Move::NimX(t),
            Move::Diagonal(s, t) => Move::Diagonal(t, s),
        }
    }

    /// The move that takes `from` to `to`, if `to` is coordinatewise below.
    pub fn between(from: Position, to: Position) -> Option<Move> {
        if to.x > from.x || to.y > from.y || from == to {
            return None;
        }
        let (s, t) = (from.x - to.x, from.y - to.y);
        Some(match (s, t) {
            (s, 0) => Move::NimX(s),
            (0, t) => Move::NimY(t),
            (s, t) => Move::Diagonal(s, t),
        })
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::NimX(t) => write!(f, "NimX({t})"),
            Move::NimY(t) => write!(f, "NimY({t})"),
            Move::Diagonal(s, t) => write!(f, "Diagonal({s}, {t})"),
        }
    }
}

/// Applies a move, checking only coordinate bounds.
pub fn apply_move(pos: Position, mv: Move) -> Result<Position> {
    let (s, t) = mv.amounts();
    match (pos.x.checked_sub(s), pos.y.checked_sub(t)) {
        (Some(x), Some(y)) => Ok(Position { x, y }),
        _ => Err(Error::IllegalMove(IllegalReason::OutOfBounds)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Plain k-Wythoff Nim: every move legal everywhere.
    Invariant,
    /// β-Wythoff Nim: diagonal moves are banned from positions with a
    /// coordinate in the β-Beatty set.
    Variant,
}

/// Memoised membership in `{⌊nβ⌋ : n ≥ 1}`, shared by clones of a rule set.
#[derive(Debug, Default)]
struct MembershipCache {
    table: RwLock<Vec<bool>>,
}

const CACHE_CHUNK: u64 = 1024;
/// Lookups past this bound go straight to exact arithmetic.
const CACHE_MAX: u64 = 1 << 26;

impl MembershipCache {
    fn lookup(&self, beta: &IrrationalSpec, x: u64) -> Result<bool> {
        {
            let table = self.table.read().expect("membership cache poisoned");
            if let Some(&hit) = table.get(x as usize) {
                return Ok(hit);
            }
        }
        self.extend(beta, x)?;
        let table = self.table.read().expect("membership cache poisoned");
        Ok(table[x as usize])
    }

    fn extend(&self, beta: &IrrationalSpec, x: u64) -> Result<()> {
        let mut table = self.table.write().expect("membership cache poisoned");
        if (x as usize) < table.len() {
            return Ok(());
        }
        let wanted = (x / CACHE_CHUNK + 1) * CACHE_CHUNK - 1;
        let limit = wanted.max(2 * table.len() as u64);
        // A generous limit can hit undecidable floors that `x` itself does
        // not need; retry with the exact bound before giving up.
        let (limit, members) = match beta.beatty_up_to(limit) {
            Ok(m) => (limit, m),
            Err(Error::PrecisionExhausted(_)) => (x, beta.beatty_up_to(x)?),
            Err(e) => return Err(e),
        };
        let mut fresh = vec![false; limit as usize + 1];
        for m in members {
            fresh[m as usize] = true;
        }
        *table = fresh;
        Ok(())
    }
}

/// Game parameters. Cloning is cheap and clones share the membership cache.
#[derive(Debug, Clone)]
pub struct RuleSet {
    mode: Mode,
    k: u64,
    beta: Option<Arc<IrrationalSpec>>,
    cache: Arc<MembershipCache>,
}

impl PartialEq for RuleSet {
    fn eq(&self, other: &Self) -> bool {
        self.mode == other.mode && self.k == other.k && self.beta == other.beta
    }
}

impl Eq for RuleSet {}

impl RuleSet {
    /// β-Wythoff Nim with `k = ⌊β⌋`.
    pub fn variant(beta: IrrationalSpec) -> Result<Self> {
        if !beta.exceeds(&BigRational::from_integer(2.into())) {
            return Err(Error::BetaOutOfRange(format!(
                "{beta} is not provably greater than 2"
            )));
        }
        let k = beta.floor_mul(1)?;
        Ok(RuleSet {
            mode: Mode::Variant,
            k,
            beta: Some(Arc::new(beta)),
            cache: Arc::default(),
        })
    }

    /// k-Wythoff Nim. Panics if `k == 0`.
    pub fn invariant(k: u64) -> Self {
        assert!(k >= 1, "k-Wythoff Nim needs k >= 1");
        RuleSet {
            mode: Mode::Invariant,
            k,
            beta: None,
            cache: Arc::default(),
        }
    }

    /// The invariant game with the same `k` (and β, for reference).
    pub fn to_invariant(&self) -> Self {
        RuleSet {
            mode: Mode::Invariant,
            k: self.k,
            beta: self.beta.clone(),
            cache: self.cache.clone(),
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn beta(&self) -> Option<&IrrationalSpec> {
        self.beta.as_deref()
    }

    pub fn is_variant(&self) -> bool {
        self.mode == Mode::Variant
    }

    /// Whether `v` is some `⌊nβ⌋`, `n ≥ 1`. Always false without a β.
    pub fn in_beatty_set(&self, v: u64) -> Result<bool> {
        match &self.beta {
            Some(beta) if v < CACHE_MAX => self.cache.lookup(beta, v),
            Some(beta) => Ok(beta.beatty_member(v)?.is_some()),
            None => Ok(false),
        }
    }

    /// Same as [`in_beatty_set`](Self::in_beatty_set) without the cache.
    pub fn in_beatty_set_uncached(&self, v: u64) -> Result<bool> {
        match &self.beta {
            Some(beta) => Ok(beta.beatty_member(v)?.is_some()),
            None => Ok(false),
        }
    }

    /// True when only Nim moves are allowed from `pos`.
    pub fn is_restricted(&self, pos: Position) -> Result<bool> {
        if self.mode == Mode::Invariant {
            return Ok(false);
        }
        Ok(self.in_beatty_set(pos.x)? || self.in_beatty_set(pos.y)?)
    }

    /// Every legal move from `pos`: `NimX` ascending, then `NimY` ascending,
    /// then `Diagonal` in lexicographic `(s, t)` order.
    pub fn legal_moves(&self, pos: Position) -> Result<Vec<Move>> {
        let mut moves: Vec<Move> = (1..=pos.x).map(Move::NimX).collect();
        moves.extend((1..=pos.y).map(Move::NimY));
        if !self.is_restricted(pos)? {
            let k = self.k;
            for s in 1..=pos.x {
                // |s - t| < k  <=>  s - k < t < s + k
                let lo = s.saturating_sub(k - 1).max(1);
                let hi = s.saturating_add(k - 1).min(pos.y);
                moves.extend((lo..=hi).map(|t| Move::Diagonal(s, t)));
            }
        }
        Ok(moves)
    }

    /// Checks `mv` against the rules at `pos`, reporting why it fails.
    pub fn validate(&self, pos: Position, mv: Move) -> Result<()> {
        let (s, t) = mv.amounts();
        let illegal = |r| Err(Error::IllegalMove(r));
        if s == 0 && t == 0 || matches!(mv, Move::Diagonal(s, t) if s == 0 || t == 0) {
            return illegal(IllegalReason::ZeroAmount);
        }
        if s > pos.x || t > pos.y {
            return illegal(IllegalReason::OutOfBounds);
        }
        if let Move::Diagonal(s, t) = mv {
            if self.is_restricted(pos)? {
                return illegal(IllegalReason::RestrictionActive);
            }
            if s.abs_diff(t) >= self.k {
                return illegal(IllegalReason::DiagonalWidth);
            }
        }
        Ok(())
    }

    /// Membership of `mv` in [`legal_moves`](Self::legal_moves) without
    /// building the list.
    pub fn is_legal(&self, pos: Position, mv: Move) -> Result<bool> {
        match self.validate(pos, mv) {
            Ok(()) => Ok(true),
            Err(Error::IllegalMove(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.mode, &self.beta) {
            (Mode::Variant, Some(beta)) => {
                write!(f, "beta-Wythoff Nim (beta = {beta}, k = {})", self.k)
            }
            _ => write!(f, "{}-Wythoff Nim", self.k),
        }
    }
}
