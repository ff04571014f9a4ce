//! PGSolver text format for closed games.
//!
//! ```text
//! parity 3;
//! 0 4 0 1,2 "tl";
//! 1 1 1 0;
//! ```
//!
//! Every node becomes an entry, in ascending id order. A node may list no
//! successors, in which case its owner is stuck.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::game::{ClosedParityGame, Player, Position};

struct Node {
    priority: u32,
    owner: Player,
    succ: Vec<u64>,
    name: Option<String>,
}

/// Parse a game. `max_priority` is raised to the largest priority present.
pub fn parse_pgsolver(text: &str, max_priority: u32) -> Result<ClosedParityGame> {
    let mut nodes: BTreeMap<u64, Node> = BTreeMap::new();
    let mut header_allowed = true;
    for (line, body) in split_statements(text) {
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("parity") {
            if !header_allowed {
                return Err(Error::syntax("header after the first node", line, 1));
            }
            header_allowed = false;
            rest.trim()
                .parse::<u64>()
                .map_err(|_| Error::syntax("expected `parity <max id>`", line, 1))?;
            continue;
        }
        if trimmed.starts_with("start") {
            header_allowed = false;
            continue;
        }
        header_allowed = false;
        let (id, node) = parse_node(trimmed, line)?;
        if nodes.insert(id, node).is_some() {
            return Err(Error::syntax(format!("node {id} is declared twice"), line, 1));
        }
    }
    let index: BTreeMap<u64, usize> = nodes.keys().enumerate().map(|(i, &id)| (id, i)).collect();
    let mut positions = Vec::with_capacity(nodes.len());
    let mut succ = Vec::with_capacity(nodes.len());
    let mut top = max_priority;
    for (id, node) in &nodes {
        let targets = node
            .succ
            .iter()
            .map(|s| {
                index
                    .get(s)
                    .copied()
                    .ok_or_else(|| Error::Precondition(format!("node {id} has undeclared successor {s}")))
            })
            .collect::<Result<Vec<_>>>()?;
        top = top.max(node.priority);
        let mut p = Position::new(node.owner, node.priority);
        p.name = node.name.clone();
        positions.push(p);
        succ.push(targets);
    }
    ClosedParityGame::from_graph(top.max(2), positions, &succ)
}

/// Statements separated by `;`, ignoring `;` inside quoted names, each
/// with the line it starts on.
fn split_statements(text: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut line = 1;
    let mut start = 1;
    let mut quoted = false;
    for ch in text.chars() {
        if cur.trim().is_empty() {
            start = line;
        }
        match ch {
            '"' => {
                quoted = !quoted;
                cur.push(ch);
            }
            ';' if !quoted => out.push((start, std::mem::take(&mut cur))),
            '\n' => {
                line += 1;
                cur.push(' ');
            }
            _ => cur.push(ch),
        }
    }
    out.push((start, cur));
    out
}

fn parse_node(stmt: &str, line: usize) -> Result<(u64, Node)> {
    let (fields, name) = match stmt.find('"') {
        Some(q) => {
            let rest = &stmt[q + 1..];
            let end = rest
                .find('"')
                .ok_or_else(|| Error::syntax("unterminated name", line, q + 1))?;
            if !rest[end + 1..].trim().is_empty() {
                return Err(Error::syntax("text after the node name", line, q + end + 2));
            }
            (&stmt[..q], Some(rest[..end].to_string()))
        }
        None => (stmt, None),
    };
    let mut parts = fields.split_whitespace();
    let mut number = |what: &str| -> Result<u64> {
        parts
            .next()
            .ok_or_else(|| Error::syntax(format!("missing {what}"), line, 1))?
            .parse::<u64>()
            .map_err(|_| Error::syntax(format!("{what} is not a number"), line, 1))
    };
    let id = number("node id")?;
    let priority = u32::try_from(number("priority")?).map_err(|_| Error::syntax("priority out of range", line, 1))?;
    let owner = Player::from_index(number("owner")?).ok_or_else(|| Error::syntax("owner must be 0 or 1", line, 1))?;
    let succ = match parts.next() {
        None => Vec::new(),
        Some(list) => list
            .split(',')
            .map(|s| s.parse::<u64>().map_err(|_| Error::syntax(format!("bad successor {s:?}"), line, 1)))
            .collect::<Result<Vec<_>>>()?,
    };
    if let Some(extra) = parts.next() {
        return Err(Error::syntax(format!("unexpected {extra:?}"), line, 1));
    }
    Ok((id, Node { priority, owner, succ, name }))
}

/// Write a game with node ids equal to position indices.
pub fn write_pgsolver(game: &ClosedParityGame) -> String {
    let g = game.game();
    let succ = g.successors();
    let mut out = String::new();
    let _ = writeln!(out, "parity {};", g.num_positions().saturating_sub(1));
    for (id, (p, targets)) in g.positions().iter().zip(&succ).enumerate() {
        let list: Vec<String> = targets
            .iter()
            .filter_map(|t| match t {
                crate::game::Endpoint::Pos(q) => Some(q.to_string()),
                _ => None,
            })
            .collect();
        let _ = write!(out, "{id} {} {}", p.priority.value(), p.owner.index());
        if !list.is_empty() {
            let _ = write!(out, " {}", list.join(","));
        }
        if let Some(name) = &p.name {
            let _ = write!(out, " \"{name}\"");
        }
        out.push_str(";\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::zielonka;

    const EXAMPLE: &str = "parity 3;\n0 4 0 1,2 \"tl\";\n1 1 1 0;\n2 3 0 3 \"bl\";\n3 2 1 2,0,1;\n";

    #[test]
    fn example_solves() {
        let g = parse_pgsolver(EXAMPLE, 4).unwrap();
        assert_eq!(g.game().positions()[0].name.as_deref(), Some("tl"));
        assert_eq!(zielonka(&g), [Player::Zero, Player::Zero, Player::One, Player::One]);
    }

    #[test]
    fn header_is_optional_and_ids_may_be_sparse() {
        let g = parse_pgsolver("10 2 0 20;\n20 1 1 10;", 2).unwrap();
        assert_eq!(g.game().num_positions(), 2);
        assert_eq!(g.entry_positions(), [0, 1]);
    }

    #[test]
    fn round_trip() {
        let g = parse_pgsolver(EXAMPLE, 4).unwrap();
        let again = parse_pgsolver(&write_pgsolver(&g), 4).unwrap();
        assert_eq!(again, g);
        assert!(write_pgsolver(&g).starts_with("parity 3;\n"));
    }

    #[test]
    fn dead_nodes_have_no_successor_list() {
        let g = parse_pgsolver("0 1 0;\n1 2 1 0;", 2).unwrap();
        assert_eq!(zielonka(&g), [Player::One, Player::One]);
        assert_eq!(write_pgsolver(&g), "parity 1;\n0 1 0;\n1 2 1 0;\n");
    }

    #[test]
    fn errors_carry_lines() {
        match parse_pgsolver("0 1 0 1;\n1 x 1 0;", 2) {
            Err(Error::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_pgsolver("0 1 0 5;", 2).is_err());
        assert!(parse_pgsolver("0 1 2 0;", 2).is_err());
    }
}
