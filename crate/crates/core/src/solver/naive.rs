//! Reference solver: materialises every legal move of every cell.

use super::{check_capacity, OutcomeGrid, SolverConfig};
use crate::error::Result;
use crate::rules::{apply_move, Position, RuleSet};

/// Cubic-time reference for [`solve_grid`](super::solve_grid). Shares
/// nothing with it beyond the rules module.
pub fn solve_grid_naive(rules: &RuleSet, n_max: u64) -> Result<OutcomeGrid> {
    check_capacity(n_max, &SolverConfig::default())?;
    let side = n_max as usize + 1;
    let mut is_p = vec![false; side * side];
    for sum in 0..=2 * n_max {
        for x in sum.saturating_sub(n_max)..=sum.min(n_max) {
            let pos = Position::new(x, sum - x);
            let mut wins = false;
            for mv in rules.legal_moves(pos)? {
                let next = apply_move(pos, mv)?;
                if is_p[next.x as usize * side + next.y as usize] {
                    wins = true;
                    break;
                }
            }
            is_p[pos.x as usize * side + pos.y as usize] = !wins;
        }
    }
    Ok(OutcomeGrid::from_cells(rules.clone(), n_max, &is_p))
}
