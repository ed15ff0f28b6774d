//! β-Wythoff Nim: a two-pile take-away game whose P-positions are the
//! complementary Beatty pairs `(⌊nα⌋, ⌊nβ⌋)` with `α = β/(β−1)`.
//!
//! * [`exact`]: floors of `n·β` without floating point.
//! * [`rules`]: positions, moves and the β restriction.
//! * [`solver`]: retrograde P/N grids and optimal moves.
//! * [`verify`]: checks of the closed-form P-set.

pub mod error;
pub mod exact;
pub mod rules;
pub mod solver;
pub mod verify;

pub use error::{Error, IllegalReason, Result};
pub use exact::{parse_beta_spec, BeattyPair, IrrationalSpec};
pub use rules::{apply_move, Mode, Move, Position, RuleSet};
pub use solver::{
    best_move, solve_grid, solve_grid_naive, solve_grid_with, Outcome, OutcomeGrid, SolverConfig,
};
pub use verify::{formula_positions, verify_theorem, FormulaSet, VerificationReport};
