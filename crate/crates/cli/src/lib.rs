//! Command-line front end: grid export, theorem reports, formula tables,
//! terminal play and the HTTP service.

mod play;
mod selfplay;

use std::fs::File;
use std::io::{self, BufRead, BufWriter, Write};
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use bwythoff::solver::{solve_grid_with, write_csv, GridExport};
use bwythoff::verify::verify_theorem_with;
use bwythoff::{formula_positions, parse_beta_spec, BeattyPair, RuleSet, SolverConfig};
use bwythoff_api::{GridCache, SessionService};
use clap::{Args, Parser, Subcommand, ValueEnum};

pub use play::play;
pub use selfplay::{selfplay, SelfPlaySummary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_THEOREM_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCES: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "bwythoff",
    version,
    about = "β-Wythoff Nim solver, verifier and engine"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the P/N grid and export it.
    Solve {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the closed-form P-set against the solver and print a JSON report.
    Verify {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the formula positions `n, a_n, b_n` with entries up to `--n`.
    Ptable {
        #[arg(long)]
        beta: String,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Play against the engine. Enter `s t` to take `s` from the first pile
    /// and `t` from the second.
    Play {
        #[arg(long)]
        beta: String,
        #[arg(long)]
        x: u64,
        #[arg(long)]
        y: u64,
        /// Let the engine make the first move.
        #[arg(long)]
        engine_first: bool,
    },
    /// Engine against a seeded random opponent from random N positions.
    Selfplay {
        #[arg(long)]
        beta: String,
        #[arg(long, default_value_t = 100)]
        games: u64,
        /// Largest `x + y` of a start position.
        #[arg(long, default_value_t = 200)]
        max_total: u64,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
    },
    /// Start the HTTP session service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// JSON-lines file used to persist and restore sessions.
        #[arg(long)]
        snapshot: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct GameArgs {
    #[arg(long)]
    pub beta: Option<String>,
    /// Diagonal width for the invariant game.
    #[arg(long, requires = "invariant")]
    pub k: Option<u64>,
    /// Play k-Wythoff Nim without the β restriction.
    #[arg(long)]
    pub invariant: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] bwythoff::Error),
    #[error(transparent)]
    Api(#[from] bwythoff_api::ApiError),
    #[error("io: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use bwythoff::Error as E;
        match self {
            CliError::Core(
                E::PrecisionExhausted(_) | E::CapacityExceeded { .. } | E::Overflow(_),
            )
            | CliError::Api(bwythoff_api::ApiError::Core(
                E::PrecisionExhausted(_) | E::CapacityExceeded { .. } | E::Overflow(_),
            )) => EXIT_RESOURCES,
            _ => EXIT_USAGE,
        }
    }
}

impl GameArgs {
    pub fn rules(&self) -> Result<RuleSet, CliError> {
        match (self.invariant, &self.beta, self.k) {
            (false, Some(beta), _) => Ok(RuleSet::variant(parse_beta_spec(beta)?)?),
            (false, None, _) => Err(CliError::Usage("--beta is required".into())),
            (true, None, Some(0)) | (true, Some(_), Some(0)) => {
                Err(CliError::Usage("--k must be at least 1".into()))
            }
            (true, _, Some(k)) => Ok(RuleSet::invariant(k)),
            (true, Some(beta), None) => {
                Ok(RuleSet::variant(parse_beta_spec(beta)?)?.to_invariant())
            }
            (true, None, None) => Err(CliError::Usage("--invariant needs --k or --beta".into())),
        }
    }
}

fn sink<'a>(
    out: &Option<PathBuf>,
    stdout: &'a mut dyn Write,
) -> Result<Box<dyn Write + 'a>, CliError> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(stdout),
    })
}

/// Runs one command and returns the process exit code. Diagnostics go to
/// `stderr`.
pub fn run(
    cli: Cli,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    match dispatch(cli, stdin, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli, stdin: &mut dyn BufRead, stdout: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Solve {
            game,
            n,
            format,
            out,
        } => {
            let rules = game.rules()?;
            let grid = solve_grid_with(&rules, n, &SolverConfig::default())?;
            let mut w = sink(&out, stdout)?;
            match format {
                Format::Csv => write_csv(&grid, &mut w)?,
                Format::Json => {
                    serde_json::to_writer(&mut w, &GridExport::from_grid(&grid))
                        .map_err(io::Error::from)?;
                    writeln!(w)?;
                }
            }
            w.flush()?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            game,
            n,
            format,
            out,
        } => {
            if format != Format::Json {
                return Err(CliError::Usage("verify reports are JSON only".into()));
            }
            let rules = game.rules()?;
            let report = verify_theorem_with(&rules, n, &SolverConfig::default())?;
            let mut w = sink(&out, stdout)?;
            serde_json::to_writer_pretty(&mut w, &report).map_err(io::Error::from)?;
            writeln!(w)?;
            w.flush()?;
            Ok(if report.theorem_holds {
                EXIT_OK
            } else {
                EXIT_THEOREM_FAILED
            })
        }
        Command::Ptable {
            beta,
            n,
            format,
            out,
        } => {
            let pair = BeattyPair::new(parse_beta_spec(&beta)?)?;
            let fs = formula_positions(&pair, n)?;
            let mut w = sink(&out, stdout)?;
            match format {
                Format::Csv => {
                    writeln!(w, "n,a_n,b_n")?;
                    for e in fs.entries() {
                        writeln!(w, "{},{},{}", e.n, e.a, e.b)?;
                    }
                }
                Format::Json => {
                    serde_json::to_writer(&mut w, fs.entries()).map_err(io::Error::from)?;
                    writeln!(w)?;
                }
            }
            w.flush()?;
            Ok(EXIT_OK)
        }
        Command::Play {
            beta,
            x,
            y,
            engine_first,
        } => {
            play(&beta, x, y, engine_first, stdin, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Selfplay {
            beta,
            games,
            max_total,
            rng_seed,
        } => {
            let rules = RuleSet::variant(parse_beta_spec(&beta)?)?;
            let summary = selfplay(&rules, games, max_total, rng_seed)?;
            serde_json::to_writer_pretty(&mut *stdout, &summary).map_err(io::Error::from)?;
            writeln!(stdout)?;
            Ok(
                if summary.engine_wins == summary.games && summary.within_ply_bound {
                    EXIT_OK
                } else {
                    EXIT_THEOREM_FAILED
                },
            )
        }
        Command::Serve { port, snapshot } => {
            let service = match snapshot {
                Some(path) => SessionService::with_snapshot(GridCache::default(), &path)?,
                None => SessionService::default(),
            };
            let addr = SocketAddr::from(([127, 0, 0, 1], port));
            writeln!(stdout, "listening on http://{addr}")?;
            stdout.flush()?;
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(bwythoff_api::serve(addr, Arc::new(service)))?;
            Ok(EXIT_OK)
        }
    }
}
