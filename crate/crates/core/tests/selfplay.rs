use bwythoff::exact::IrrationalSpec;
use bwythoff::{apply_move, solve_grid, Outcome, OutcomeGrid, Position, RuleSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Plays one game and returns whether the engine made the last move, plus
/// the number of plies.
fn play(
    grid: &OutcomeGrid,
    start: Position,
    engine_first: bool,
    rng: &mut ChaCha8Rng,
) -> (bool, u64) {
    let rules = grid.rules();
    let mut pos = start;
    let mut engine_to_move = engine_first;
    let mut plies = 0;
    while !pos.is_terminal() {
        let mv = if engine_to_move {
            match grid.best_move(pos).unwrap() {
                Some(mv) => mv,
                None => rules.legal_moves(pos).unwrap()[0],
            }
        } else {
            *rules.legal_moves(pos).unwrap().choose(rng).unwrap()
        };
        assert!(rules.is_legal(pos, mv).unwrap());
        pos = apply_move(pos, mv).unwrap();
        engine_to_move = !engine_to_move;
        plies += 1;
    }
    (!engine_to_move, plies)
}

fn starts(grid: &OutcomeGrid, want: Outcome, rng: &mut ChaCha8Rng, count: usize) -> Vec<Position> {
    let mut out = Vec::new();
    while out.len() < count {
        let x = rng.gen_range(0..=200);
        let y = rng.gen_range(0..=200 - x);
        let pos = Position::new(x, y);
        if !pos.is_terminal() && grid.classify(pos).unwrap() == want {
            out.push(pos);
        }
    }
    out
}

#[test]
fn engine_wins_every_game_from_n_positions() {
    let grid = solve_grid(&RuleSet::variant(IrrationalSpec::pi()).unwrap(), 200).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for start in starts(&grid, Outcome::N, &mut rng, 100) {
        let (engine_won, plies) = play(&grid, start, true, &mut rng);
        assert!(engine_won, "lost from {start}");
        assert!(plies <= start.total());
    }
}

#[test]
fn random_mover_loses_every_game_from_p_positions() {
    let grid = solve_grid(&RuleSet::variant(IrrationalSpec::pi()).unwrap(), 200).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for start in starts(&grid, Outcome::P, &mut rng, 100) {
        let (engine_won, plies) = play(&grid, start, false, &mut rng);
        assert!(engine_won, "lost from {start}");
        assert!(plies <= start.total());
    }
}
