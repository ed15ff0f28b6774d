use std::collections::HashMap;
use std::sync::Arc;
use std::thread;

use bwythoff::verify::FIXTURE_SPECS;
use bwythoff::{parse_beta_spec, solve_grid, Move, Outcome, OutcomeGrid, Position, RuleSet};
use bwythoff_api::{ApiError, CreateSession, EnginePlays, Mover, SessionService, Status};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SIDE: u64 = 40;

fn reference_grids() -> HashMap<&'static str, OutcomeGrid> {
    FIXTURE_SPECS
        .iter()
        .map(|&s| {
            let rules = RuleSet::variant(parse_beta_spec(s).unwrap()).unwrap();
            (s, solve_grid(&rules, SIDE).unwrap())
        })
        .collect()
}

fn random_move(rng: &mut ChaCha8Rng, pos: Position) -> Move {
    let t = rng.gen_range(0..=pos.x.max(pos.y) + 2);
    match rng.gen_range(0..3) {
        0 => Move::NimX(t),
        1 => Move::NimY(t),
        _ => Move::Diagonal(rng.gen_range(0..=pos.x + 1), t),
    }
}

#[test]
fn fuzzed_traces_never_see_an_illegal_or_losing_engine() {
    let grids = reference_grids();
    let svc = SessionService::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut engine_wins_from_n = 0;
    for _ in 0..10_000 {
        let beta = *FIXTURE_SPECS.choose(&mut rng).unwrap();
        let grid = &grids[beta];
        let rules = grid.rules();
        let request = CreateSession {
            beta: beta.to_owned(),
            x: rng.gen_range(0..=SIDE),
            y: rng.gen_range(0..=SIDE),
            engine_plays: if rng.gen() {
                EnginePlays::First
            } else {
                EnginePlays::Second
            },
        };
        let mut view = svc.create_session(&request).unwrap();
        while view.status == Status::InProgress {
            assert_eq!(view.to_move, Some(Mover::Human));
            let pos = view.position;
            if rng.gen_bool(0.2) {
                let mv = random_move(&mut rng, pos);
                if !rules.is_legal(pos, mv).unwrap() {
                    let err = svc.submit_move(&view.id, mv).unwrap_err();
                    assert!(matches!(
                        err,
                        ApiError::Core(bwythoff::Error::IllegalMove(_))
                    ));
                    assert_eq!(svc.session(&view.id).unwrap(), view);
                    continue;
                }
            }
            let mv = *rules.legal_moves(pos).unwrap().choose(&mut rng).unwrap();
            view = svc.submit_move(&view.id, mv).unwrap();
        }

        let session = svc.snapshot_of(&view.id).unwrap();
        let mut pos = session.start;
        let mut engine_held_n = false;
        for entry in &session.history {
            assert!(rules.is_legal(pos, entry.mv).unwrap(), "{pos} {}", entry.mv);
            if entry.mover == Mover::Engine && grid.classify(pos).unwrap() == Outcome::N {
                engine_held_n = true;
            }
            pos = bwythoff::apply_move(pos, entry.mv).unwrap();
            assert_eq!(pos, entry.position);
        }
        if engine_held_n {
            assert_eq!(session.status, Status::EngineWon, "{:?}", session.history);
            engine_wins_from_n += 1;
        }
        assert_eq!(session.replay().unwrap(), (session.current, session.status));
    }
    assert!(engine_wins_from_n > 1_000);
}

#[test]
fn replaying_the_human_moves_rebuilds_the_session() {
    let a = SessionService::default();
    let b = SessionService::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let request = CreateSession {
            beta: "pi".into(),
            x: rng.gen_range(0..=60),
            y: rng.gen_range(0..=60),
            engine_plays: EnginePlays::Second,
        };
        let mut va = a.create_session(&request).unwrap();
        let mut vb = b.create_session(&request).unwrap();
        let rules = RuleSet::variant(parse_beta_spec("pi").unwrap()).unwrap();
        while va.status == Status::InProgress {
            let mv = *rules
                .legal_moves(va.position)
                .unwrap()
                .choose(&mut rng)
                .unwrap();
            va = a.submit_move(&va.id, mv).unwrap();
            vb = b.submit_move(&vb.id, mv).unwrap();
        }
        assert_eq!(va.history, vb.history);
        assert_eq!(va.status, vb.status);
    }
}

#[test]
fn snapshot_restores_every_session() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sessions.jsonl");
    let mut views = Vec::new();
    {
        let svc = SessionService::with_snapshot(Default::default(), &path).unwrap();
        for (x, y, side) in [
            (10, 12, EnginePlays::Second),
            (3, 5, EnginePlays::First),
            (0, 0, EnginePlays::First),
        ] {
            let request = CreateSession {
                beta: "surd:(1+1*sqrt(3))/1".into(),
                x,
                y,
                engine_plays: side,
            };
            views.push(svc.create_session(&request).unwrap());
        }
        let first = views[0].id.clone();
        svc.submit_move(&first, Move::NimX(1)).unwrap();
        assert!(svc.submit_move(&first, Move::Diagonal(0, 0)).is_err());
        views[0] = svc.session(&first).unwrap();
    }
    let restored = SessionService::with_snapshot(Default::default(), &path).unwrap();
    assert_eq!(restored.len(), 3);
    for v in &views {
        assert_eq!(&restored.session(&v.id).unwrap(), v);
    }
}

#[test]
fn concurrent_moves_on_one_session_are_serialized() {
    let svc = Arc::new(SessionService::default());
    let request = CreateSession {
        beta: "pi".into(),
        x: 200,
        y: 190,
        engine_plays: EnginePlays::Second,
    };
    let id = svc.create_session(&request).unwrap().id;
    let handles: Vec<_> = (0..8)
        .map(|_| {
            let svc = svc.clone();
            let id = id.clone();
            thread::spawn(move || {
                let mut ok = 0;
                for _ in 0..20 {
                    if svc.submit_move(&id, Move::NimX(1)).is_ok() {
                        ok += 1;
                    }
                }
                ok
            })
        })
        .collect();
    let accepted: usize = handles.into_iter().map(|h| h.join().unwrap()).sum();
    let session = svc.snapshot_of(&id).unwrap();
    let human = session
        .history
        .iter()
        .filter(|e| e.mover == Mover::Human)
        .count();
    assert_eq!(human, accepted);
    assert_eq!(session.replay().unwrap(), (session.current, session.status));
}

#[test]
fn independent_sessions_run_in_parallel() {
    let svc = Arc::new(SessionService::default());
    let handles: Vec<_> = FIXTURE_SPECS
        .iter()
        .map(|&beta| {
            let svc = svc.clone();
            thread::spawn(move || {
                let request = CreateSession {
                    beta: beta.into(),
                    x: 30,
                    y: 31,
                    engine_plays: EnginePlays::First,
                };
                let mut view = svc.create_session(&request).unwrap();
                while view.status == Status::InProgress {
                    view = svc
                        .submit_move(&view.id, first_legal(&view.beta, view.position))
                        .unwrap();
                }
                view.status
            })
        })
        .collect();
    for h in handles {
        assert_eq!(h.join().unwrap(), Status::EngineWon);
    }
    assert_eq!(svc.len(), FIXTURE_SPECS.len());
}

fn first_legal(beta: &str, pos: Position) -> Move {
    let rules = RuleSet::variant(parse_beta_spec(beta).unwrap()).unwrap();
    rules.legal_moves(pos).unwrap()[0]
}
