//! Retrograde P/N classification on a finite grid.
//!
//! Every move strictly lowers `x + y`, so cells are filled one
//! anti-diagonal at a time. A cell is N when some already-classified P
//! cell is reachable:
//!
//! * along its row or column (a Nim move), tracked by one P index per row
//!   and per column, or
//! * by a diagonal move, which reaches `(x', y')` from `(x, y)` exactly when
//!   `x' < x`, `y' < y` and `|(x - y) - (x' - y')| < k`. For a fixed
//!   difference `x' - y'` the earliest P found has the smallest `x'`, so one
//!   record per difference is enough.

mod export;
mod naive;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use export::{write_csv, GridExport};
pub use naive::solve_grid_naive;

use crate::error::{Error, Result};
use crate::rules::{apply_move, Move, Position, RuleSet};

/// Default upper bound on `n_max`.
pub const DEFAULT_CAPACITY: u64 = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    /// The player to move loses.
    P,
    /// The player to move wins.
    N,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::P => "P",
            Outcome::N => "N",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub capacity: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            capacity: DEFAULT_CAPACITY,
        }
    }
}

const NONE: u32 = u32::MAX;

/// Dense P/N map over `[0, n_max]²`, one bit per cell, plus the P column of
/// every row.
#[derive(Clone)]
pub struct OutcomeGrid {
    n_max: u64,
    side: usize,
    bits: Vec<u64>,
    p_in_row: Vec<u32>,
    rules: RuleSet,
}

impl PartialEq for OutcomeGrid {
    fn eq(&self, other: &Self) -> bool {
        self.n_max == other.n_max && self.bits == other.bits
    }
}

impl Eq for OutcomeGrid {}

impl fmt::Debug for OutcomeGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OutcomeGrid")
            .field("n_max", &self.n_max)
            .field("rules", &self.rules.to_string())
            .field("p_positions", &self.p_count())
            .finish()
    }
}

impl OutcomeGrid {
    fn empty(rules: RuleSet, n_max: u64) -> Self {
        let side = n_max as usize + 1;
        OutcomeGrid {
            n_max,
            side,
            bits: vec![0; (side * side).div_ceil(64)],
            p_in_row: vec![NONE; side],
            rules,
        }
    }

    fn mark_p(&mut self, x: usize, y: usize) {
        let i = x * self.side + y;
        self.bits[i / 64] |= 1 << (i % 64);
        if self.p_in_row[x] == NONE {
            self.p_in_row[x] = y as u32;
        }
    }

    fn is_p_unchecked(&self, x: usize, y: usize) -> bool {
        let i = x * self.side + y;
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    pub fn rules(&self) -> &RuleSet {
        &self.rules
    }

    pub fn contains(&self, pos: Position) -> bool {
        pos.x <= self.n_max && pos.y <= self.n_max
    }

    pub fn classify(&self, pos: Position) -> Result<Outcome> {
        if !self.contains(pos) {
            return Err(Error::OutOfBounds {
                x: pos.x,
                y: pos.y,
                n_max: self.n_max,
            });
        }
        Ok(if self.is_p_unchecked(pos.x as usize, pos.y as usize) {
            Outcome::P
        } else {
            Outcome::N
        })
    }

    /// P positions in lexicographic order.
    pub fn p_positions(&self) -> Vec<Position> {
        let mut out = Vec::new();
        for x in 0..self.side {
            for y in 0..self.side {
                if self.is_p_unchecked(x, y) {
                    out.push(Position::new(x as u64, y as u64));
                }
            }
        }
        out
    }

    pub fn p_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// The P column of row `x`, if the row has one.
    pub fn p_in_row(&self, x: u64) -> Option<u64> {
        self.p_in_row
            .get(x as usize)
            .copied()
            .filter(|&y| y != NONE)
            .map(u64::from)
    }

    /// First legal move (in the rules' move order) that reaches a P
    /// position; `None` from P positions.
    pub fn best_move(&self, pos: Position) -> Result<Option<Move>> {
        if self.classify(pos)? == Outcome::P {
            return Ok(None);
        }
        for mv in self.rules.legal_moves(pos)? {
            let next = apply_move(pos, mv)?;
            if self.classify(next)? == Outcome::P {
                return Ok(Some(mv));
            }
        }
        unreachable!("N position {pos} has no move to a P position")
    }

    pub(crate) fn from_cells(rules: RuleSet, n_max: u64, is_p: &[bool]) -> Self {
        let mut grid = OutcomeGrid::empty(rules, n_max);
        let side = grid.side;
        for x in 0..side {
            for y in 0..side {
                if is_p[x * side + y] {
                    grid.mark_p(x, y);
                }
            }
        }
        grid
    }
}

/// Free-function form of [`OutcomeGrid::best_move`].
pub fn best_move(grid: &OutcomeGrid, pos: Position) -> Result<Option<Move>> {
    grid.best_move(pos)
}

pub(crate) fn check_capacity(n_max: u64, config: &SolverConfig) -> Result<()> {
    if n_max > config.capacity || n_max >= u32::MAX as u64 {
        return Err(Error::CapacityExceeded {
            requested: n_max,
            limit: config.capacity,
        });
    }
    Ok(())
}

/// Beatty-set membership for `0..=n_max`; all false in invariant mode.
pub(crate) fn restriction_table(rules: &RuleSet, n_max: u64) -> Result<Vec<bool>> {
    let mut table = vec![false; n_max as usize + 1];
    if rules.is_variant() {
        let beta = rules.beta().expect("variant rules carry beta");
        for v in beta.beatty_up_to(n_max)? {
            table[v as usize] = true;
        }
    }
    Ok(table)
}

pub fn solve_grid(rules: &RuleSet, n_max: u64) -> Result<OutcomeGrid> {
    solve_grid_with(rules, n_max, &SolverConfig::default())
}

pub fn solve_grid_with(rules: &RuleSet, n_max: u64, config: &SolverConfig) -> Result<OutcomeGrid> {
    check_capacity(n_max, config)?;
    let restricted = restriction_table(rules, n_max)?;
    let n = n_max as usize;
    let mut grid = OutcomeGrid::empty(rules.clone(), n_max);
    let mut p_in_col = vec![NONE; n + 1];
    // Indexed by x - y + n.
    let mut first_on_diff = vec![NONE; 2 * n + 1];
    let reach = rules.k().saturating_sub(1).min(2 * n as u64) as isize;

    for sum in 0..=2 * n {
        for x in sum.saturating_sub(n)..=sum.min(n) {
            let y = sum - x;
            if grid.p_in_row[x] != NONE || p_in_col[y] != NONE {
                continue;
            }
            if !(restricted[x] || restricted[y]) {
                let diff = x as isize - y as isize + n as isize;
                let lo = (diff - reach).max(0);
                let hi = (diff + reach).min(2 * n as isize);
                let hit = (lo..=hi).any(|idx| {
                    let px = first_on_diff[idx as usize];
                    if px == NONE {
                        return false;
                    }
                    let px = px as isize;
                    let py = px - (idx - n as isize);
                    px < x as isize && py < y as isize
                });
                if hit {
                    continue;
                }
            }
            grid.mark_p(x, y);
            p_in_col[y] = x as u32;
            let idx = x + n - y;
            if first_on_diff[idx] == NONE {
                first_on_diff[idx] = x as u32;
            }
        }
    }
    Ok(grid)
}
