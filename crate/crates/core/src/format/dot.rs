//! Graphviz export.

use std::fmt::Write;

use crate::game::{Endpoint, OpenParityGame, Player};

/// Diamonds for Player 0, boxes for Player 1, the priority as label; entries
/// and exits are small unlabelled points so their edges dangle.
pub fn to_dot(game: &OpenParityGame) -> String {
    let mut out = String::from("digraph game {\n  rankdir=LR;\n");
    for (i, p) in game.positions().iter().enumerate() {
        let shape = match p.owner {
            Player::Zero => "diamond",
            Player::One => "box",
        };
        let label = match &p.name {
            Some(name) => format!("{name}: {}", p.priority.value()),
            None => p.priority.value().to_string(),
        };
        let _ = writeln!(out, "  p{i} [shape={shape}, label=\"{label}\"];");
    }
    for i in 1..=game.num_entries() {
        let _ = writeln!(out, "  in{i} [shape=point, xlabel=\"{i}\"];");
    }
    for k in 1..=game.num_exits() {
        let _ = writeln!(out, "  out{k} [shape=point, xlabel=\"{k}\"];");
    }
    let name = |e: Endpoint| match e {
        Endpoint::Entry(i) => format!("in{i}"),
        Endpoint::Pos(p) => format!("p{p}"),
        Endpoint::Exit(k) => format!("out{k}"),
    };
    for &(s, t) in game.edges() {
        let _ = writeln!(out, "  {} -> {};", name(s), name(t));
    }
    out.push_str("}\n");
    out
}
