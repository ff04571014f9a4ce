//! File formats: PGSolver text for closed games, JSON for open games, and
//! DOT for pictures.

mod dot;
mod json;
mod pgsolver;

pub use dot::to_dot;
pub use json::{game_from_json, game_to_json};
pub use pgsolver::{parse_pgsolver, write_pgsolver};
