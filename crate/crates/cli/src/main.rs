//! `opgame`: solve, normalise, compare and build open parity games.

mod input;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use opgame_core::config::OutputFormat;
use opgame_core::fixpoint::{normalize, normalize_game, winner_of};
use opgame_core::format::{game_to_json, write_pgsolver};
use opgame_core::game::{compose, tensor};
use opgame_core::oracle::{positional_semantics, random_closed_game, random_game, selftest, RandomGameParams};
use opgame_core::{Guards, NormalForm, OpenParityGame, Player, RewriteTrace, RunConfig};

use input::{load, Input};

#[derive(Parser)]
#[command(name = "opgame", version, about = "Open parity games by equational normal forms")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Largest priority a game may use.
    #[arg(long, global = true, default_value_t = 12)]
    max_priority: u32,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the rewrite trace as JSON lines to this file.
    #[arg(long, global = true)]
    trace: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Winner at every entry of a closed game (PGSolver or JSON).
    Solve {
        path: PathBuf,
        /// Solve by positional strategy enumeration instead of normal forms.
        #[arg(long)]
        experimental_positional: bool,
    },
    /// Canonical normal form of every entry of a game, or of a term.
    Normalize { path: PathBuf },
    /// Whether two games (or terms) have the same normal forms.
    Equiv { a: PathBuf, b: PathBuf },
    /// Sequential composition `a ; b`, as JSON.
    Compose { a: PathBuf, b: PathBuf },
    /// Parallel composition, as JSON.
    Tensor { a: PathBuf, b: PathBuf },
    /// A random game: open-game JSON, or PGSolver with `--closed`.
    Random {
        #[arg(long, default_value_t = 6)]
        nodes: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 1)]
        entries: usize,
        #[arg(long, default_value_t = 1)]
        exits: usize,
        #[arg(long)]
        acyclic: bool,
        /// A plain parity game with every position an entry.
        #[arg(long, conflicts_with_all = ["entries", "exits", "acyclic"])]
        closed: bool,
    },
    /// Axiom harness and solver differentials; exits 1 on any failure.
    Selftest {
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

/// Outcome of a command that ran to completion.
enum Status {
    Ok,
    Inequivalent,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Inequivalent) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let resource = e
                .chain()
                .any(|c| c.downcast_ref::<opgame_core::Error>().is_some_and(|e| e.is_resource()));
            ExitCode::from(if resource { 3 } else { 2 })
        }
    }
}

fn run(cli: Cli) -> Result<Status> {
    let config = RunConfig {
        max_priority: cli.global.max_priority,
        guards: Guards::from_env()?,
        seed: cli.global.seed,
        format: match cli.global.format {
            Format::Text => OutputFormat::Text,
            Format::Json => OutputFormat::Json,
        },
        trace_path: cli.global.trace,
    };
    config.validate()?;
    let mut out = std::io::stdout().lock();
    match cli.command {
        Command::Solve {
            path,
            experimental_positional,
        } => solve(&config, &path, experimental_positional, &mut out),
        Command::Normalize { path } => normalize_cmd(&config, &path, &mut out),
        Command::Equiv { a, b } => equiv(&config, &a, &b, &mut out),
        Command::Compose { a, b } => {
            let g = compose(&load_game(&config, &a)?, &load_game(&config, &b)?)?;
            writeln!(out, "{}", game_to_json(&g))?;
            Ok(Status::Ok)
        }
        Command::Tensor { a, b } => {
            let g = tensor(&load_game(&config, &a)?, &load_game(&config, &b)?);
            writeln!(out, "{}", game_to_json(&g))?;
            Ok(Status::Ok)
        }
        Command::Random {
            nodes,
            density,
            entries,
            exits,
            acyclic,
            closed,
        } => {
            if closed {
                let g = random_closed_game(nodes, config.max_priority, density, config.seed)?;
                write!(out, "{}", write_pgsolver(&g))?;
            } else {
                let g = random_game(&RandomGameParams {
                    nodes,
                    max_priority: config.max_priority,
                    density,
                    entries,
                    exits,
                    acyclic,
                    seed: config.seed,
                })?;
                writeln!(out, "{}", game_to_json(&g))?;
            }
            Ok(Status::Ok)
        }
        Command::Selftest { samples } => {
            let report = selftest(samples, config.seed);
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
            Ok(if report.passed { Status::Ok } else { Status::Inequivalent })
        }
    }
}

fn load_game(config: &RunConfig, path: &Path) -> Result<OpenParityGame> {
    let game = load(path, config.max_priority)?.into_game();
    if game.max_priority() > config.max_priority {
        bail!(
            "{} uses priorities up to {}, above --max-priority {}",
            path.display(),
            game.max_priority(),
            config.max_priority
        );
    }
    Ok(game)
}

fn write_trace(config: &RunConfig, trace: &RewriteTrace) -> Result<()> {
    if let Some(path) = &config.trace_path {
        std::fs::write(path, trace.to_jsonl()).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}

/// Normal forms of a file, with the trace written if one was asked for.
fn semantics(config: &RunConfig, path: &Path) -> Result<Vec<NormalForm>> {
    match load(path, config.max_priority)? {
        Input::Term(t) => {
            let (nf, trace) = normalize(&t, &config.guards)?;
            write_trace(config, &trace)?;
            Ok(vec![nf])
        }
        Input::Game(g) => {
            let nf = normalize_game(&g, &config.guards)?;
            write_trace(config, &nf.trace)?;
            Ok(nf.entries)
        }
    }
}

fn player_name(p: Player) -> &'static str {
    match p {
        Player::Zero => "Player 0 (even)",
        Player::One => "Player 1 (odd)",
    }
}

fn solve(config: &RunConfig, path: &Path, positional: bool, out: &mut impl Write) -> Result<Status> {
    let game = load_game(config, path)?;
    if !game.is_closed() {
        bail!("{} has {} exits; only closed games can be solved", path.display(), game.num_exits());
    }
    let nfs = if positional {
        positional_semantics(&game)?
    } else {
        let nf = normalize_game(&game, &config.guards)?;
        write_trace(config, &nf.trace)?;
        nf.entries
    };
    let winners = nfs.iter().map(winner_of).collect::<opgame_core::Result<Vec<_>>>()?;
    let label = |i: usize| -> String {
        let target = game.entry_target(i + 1);
        match target {
            Some(opgame_core::Endpoint::Pos(p)) => game.positions()[p].name.clone().unwrap_or_else(|| p.to_string()),
            _ => String::new(),
        }
    };
    match config.format {
        OutputFormat::Text => {
            for (i, w) in winners.iter().enumerate() {
                writeln!(out, "entry {} ({}): {}", i + 1, label(i), player_name(*w))?;
            }
        }
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = winners
                .iter()
                .enumerate()
                .map(|(i, w)| serde_json::json!({"entry": i + 1, "position": label(i), "winner": w.index()}))
                .collect();
            writeln!(out, "{}", serde_json::json!({ "winners": rows }))?;
        }
    }
    Ok(Status::Ok)
}

fn normalize_cmd(config: &RunConfig, path: &Path, out: &mut impl Write) -> Result<Status> {
    let nfs = semantics(config, path)?;
    match config.format {
        OutputFormat::Text => {
            for nf in &nfs {
                writeln!(out, "{}", nf.to_json())?;
            }
        }
        OutputFormat::Json => {
            let entries: Vec<serde_json::Value> = nfs
                .iter()
                .map(|n| serde_json::from_str(&n.to_json()))
                .collect::<Result<_, _>>()?;
            writeln!(out, "{}", serde_json::json!({ "entries": entries }))?;
        }
    }
    Ok(Status::Ok)
}

fn equiv(config: &RunConfig, a: &Path, b: &Path, out: &mut impl Write) -> Result<Status> {
    let (ga, gb) = (load_game(config, a)?, load_game(config, b)?);
    let mismatch = if ga.domain() != gb.domain() {
        Some((ga.domain(), gb.domain()))
    } else if ga.codomain() != gb.codomain() {
        Some((ga.codomain(), gb.codomain()))
    } else {
        None
    };
    if let Some((left, right)) = mismatch {
        return Err(opgame_core::Error::BoundaryMismatch { left, right }).with_context(|| {
            format!(
                "{} is {} → {} but {} is {} → {}",
                a.display(),
                ga.domain(),
                ga.codomain(),
                b.display(),
                gb.domain(),
                gb.codomain()
            )
        });
    }
    let na = normalize_game(&ga, &config.guards)?.entries;
    let nb = normalize_game(&gb, &config.guards)?.entries;
    let differing = na.iter().zip(&nb).position(|(x, y)| x != y);
    match (config.format, differing) {
        (OutputFormat::Text, None) => writeln!(out, "equivalent")?,
        (OutputFormat::Text, Some(i)) => writeln!(
            out,
            "inequivalent at entry {}: {} vs {}",
            i + 1,
            na[i].to_json(),
            nb[i].to_json()
        )?,
        (OutputFormat::Json, None) => writeln!(out, "{}", serde_json::json!({"equivalent": true}))?,
        (OutputFormat::Json, Some(i)) => {
            let a: serde_json::Value = serde_json::from_str(&na[i].to_json())?;
            let b: serde_json::Value = serde_json::from_str(&nb[i].to_json())?;
            writeln!(out, "{}", serde_json::json!({"equivalent": false, "entry": i + 1, "a": a, "b": b}))?
        }
    }
    Ok(if differing.is_none() { Status::Ok } else { Status::Inequivalent })
}
