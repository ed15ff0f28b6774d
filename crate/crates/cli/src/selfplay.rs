use bwythoff::{apply_move, solve_grid_with, Outcome, Position, Result, RuleSet, SolverConfig};
use bwythoff_api::engine_move;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelfPlaySummary {
    pub games: u64,
    pub engine_wins: u64,
    pub within_ply_bound: bool,
    pub rng_seed: u64,
    pub losses: Vec<Position>,
}

/// Engine (moving first) against a uniformly random opponent, from random
/// N positions with `x + y <= max_total`.
pub fn selfplay(rules: &RuleSet, games: u64, max_total: u64, seed: u64) -> Result<SelfPlaySummary> {
    let grid = solve_grid_with(rules, max_total, &SolverConfig::default())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = SelfPlaySummary {
        games,
        engine_wins: 0,
        within_ply_bound: true,
        rng_seed: seed,
        losses: Vec::new(),
    };
    let mut played = 0;
    while played < games {
        let x = rng.gen_range(0..=max_total);
        let start = Position::new(x, rng.gen_range(0..=max_total - x));
        if grid.classify(start)? != Outcome::N {
            continue;
        }
        played += 1;
        let mut pos = start;
        let mut engine_turn = true;
        let mut plies = 0;
        while !pos.is_terminal() {
            let mv = if engine_turn {
                engine_move(&grid, pos)?
            } else {
                *rules
                    .legal_moves(pos)?
                    .choose(&mut rng)
                    .expect("moves exist")
            };
            rules.validate(pos, mv)?;
            pos = apply_move(pos, mv)?;
            engine_turn = !engine_turn;
            plies += 1;
        }
        summary.within_ply_bound &= plies <= start.total();
        if engine_turn {
            summary.losses.push(start);
        } else {
            summary.engine_wins += 1;
        }
    }
    Ok(summary)
}
