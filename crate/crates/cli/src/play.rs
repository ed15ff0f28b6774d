use std::io::{BufRead, Write};

use bwythoff::{Move, Position};
use bwythoff_api::{CreateSession, EnginePlays, Mover, SessionService, SessionView, Status};

use crate::CliError;

fn parse_amounts(line: &str) -> Option<Move> {
    let mut it = line.split_whitespace().map(str::parse::<u64>);
    let (s, t) = match (it.next(), it.next(), it.next()) {
        (Some(Ok(s)), Some(Ok(t)), None) => (s, t),
        _ => return None,
    };
    Some(match (s, t) {
        (s, 0) => Move::NimX(s),
        (0, t) => Move::NimY(t),
        (s, t) => Move::Diagonal(s, t),
    })
}

fn report(svc: &SessionService, view: &SessionView, out: &mut dyn Write) -> Result<(), CliError> {
    let start = view
        .history
        .iter()
        .rposition(|e| e.mover == Mover::Human)
        .map_or(0, |i| i + 1);
    for e in &view.history[start..] {
        if e.mover == Mover::Engine {
            let p = e.position;
            writeln!(out, "engine plays {} -> {}", e.mv, p)?;
        }
    }
    let hint = svc.hint(&view.id)?;
    let restricted = if view.restricted {
        ", nim moves only"
    } else {
        ""
    };
    writeln!(
        out,
        "position {} is {}{restricted}",
        view.position, hint.classification
    )?;
    Ok(())
}

/// Line-based game: the human enters `s t`, the engine answers.
pub fn play(
    beta: &str,
    x: u64,
    y: u64,
    engine_first: bool,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    let svc = SessionService::default();
    let request = CreateSession {
        beta: beta.to_owned(),
        x,
        y,
        engine_plays: if engine_first {
            EnginePlays::First
        } else {
            EnginePlays::Second
        },
    };
    let mut view = svc.create_session(&request)?;
    writeln!(
        out,
        "beta = {}, k = {}, start {}",
        view.beta,
        view.k,
        Position::new(x, y)
    )?;
    report(&svc, &view, out)?;
    let mut line = String::new();
    while view.status == Status::InProgress {
        write!(out, "> ")?;
        out.flush()?;
        line.clear();
        if input.read_line(&mut line)? == 0 || matches!(line.trim(), "q" | "quit") {
            writeln!(out, "abandoned")?;
            return Ok(view.status);
        }
        let Some(mv) = parse_amounts(&line) else {
            writeln!(out, "enter two amounts: `s t`")?;
            continue;
        };
        match svc.submit_move(&view.id, mv) {
            Ok(next) => {
                view = next;
                report(&svc, &view, out)?;
            }
            Err(bwythoff_api::ApiError::Core(bwythoff::Error::IllegalMove(reason))) => {
                writeln!(out, "illegal: {}", reason.as_str())?;
            }
            Err(e) => return Err(e.into()),
        }
    }
    writeln!(
        out,
        "{}",
        match view.status {
            Status::HumanWon => "you win",
            _ => "engine wins",
        }
    )?;
    Ok(view.status)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn amounts_map_to_moves() {
        assert_eq!(parse_amounts("3 0"), Some(Move::NimX(3)));
        assert_eq!(parse_amounts(" 0 4 "), Some(Move::NimY(4)));
        assert_eq!(parse_amounts("2 1"), Some(Move::Diagonal(2, 1)));
        assert_eq!(parse_amounts("2"), None);
        assert_eq!(parse_amounts("a b"), None);
        assert_eq!(parse_amounts("1 2 3"), None);
    }

    #[test]
    fn scripted_game() {
        let mut input = "1 1\n0 3\n1 0\n".as_bytes();
        let mut out = Vec::new();
        let status = play("pi", 3, 5, false, &mut input, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("illegal: restriction-active"), "{text}");
        assert!(
            text.contains("position (3, 5) is N, nim moves only"),
            "{text}"
        );
        assert_eq!(status, Status::EngineWon, "{text}");
    }
}
