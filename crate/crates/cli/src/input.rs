//! Reading games and terms from files.

use std::path::Path;

use anyhow::{Context, Result};
use opgame_core::expr::{expr_to_game, parse_expr};
use opgame_core::format::{game_from_json, parse_pgsolver};
use opgame_core::{Expr, ExprSystem, OpenParityGame};

/// What a file turned out to hold.
pub enum Input {
    Game(OpenParityGame),
    Term(Expr),
}

impl Input {
    /// The input as a game; a term becomes a one-entry game over its free
    /// variables.
    pub fn into_game(self) -> OpenParityGame {
        match self {
            Input::Game(g) => g,
            Input::Term(t) => expr_to_game(&ExprSystem::from_exprs(vec![t])),
        }
    }
}

/// `.json` is an open game, `.pg`/`.gm` PGSolver, `.mu`/`.expr` a term;
/// anything else is sniffed: `{` means JSON, a leading number or `parity`
/// header means PGSolver, otherwise a term.
pub fn load(path: &Path, max_priority: u32) -> Result<Input> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    let trimmed = text.trim_start();
    let kind = match ext {
        "json" => Kind::Json,
        "pg" | "gm" => Kind::Pgsolver,
        "mu" | "expr" => Kind::Term,
        _ if trimmed.starts_with('{') => Kind::Json,
        _ if trimmed.starts_with("parity") || trimmed.starts_with(|c: char| c.is_ascii_digit()) || trimmed.is_empty() => {
            Kind::Pgsolver
        }
        _ => Kind::Term,
    };
    let parsed = match kind {
        Kind::Json => game_from_json(&text).map(Input::Game),
        Kind::Pgsolver => parse_pgsolver(&text, max_priority).map(|g| Input::Game(g.into_game())),
        Kind::Term => parse_expr(&text).map(Input::Term),
    };
    parsed.with_context(|| format!("cannot parse {}", path.display()))
}

enum Kind {
    Json,
    Pgsolver,
    Term,
}
