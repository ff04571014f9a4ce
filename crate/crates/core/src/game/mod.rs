//! Open parity games: boundary-typed game graphs and their composition
//! algebra.
//!
//! Boundary indices are 1-based. A game `m → n` has `m.rightward` entries on
//! its left and `n.leftward` entries on its right; entries are numbered left
//! side first. Exits are numbered the same way: the `m.leftward` exits on the
//! left come before the `n.rightward` exits on the right.

mod compose;
mod generators;

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::priority::Priority;

pub use compose::{close, compose, tensor};
pub use generators::{cap, cup, empty, identity, lose, merge, priority, start, swap, choice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Player {
    Zero,
    One,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Zero => Player::One,
            Player::One => Player::Zero,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Player::Zero => 0,
            Player::One => 1,
        }
    }

    pub fn from_index(i: u64) -> Option<Player> {
        match i {
            0 => Some(Player::Zero),
            1 => Some(Player::One),
            _ => None,
        }
    }

    /// The player who wins infinite plays whose dominant priority is `p`.
    pub fn of_parity(p: Priority) -> Player {
        if p.is_even() {
            Player::Zero
        } else {
            Player::One
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Player {}", self.index())
    }
}

/// One side of a game's interface: wires flowing rightward and leftward.
///
/// On a domain, `rightward` counts entries and `leftward` counts exits; on a
/// codomain it is the other way round.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Boundary {
    pub rightward: usize,
    pub leftward: usize,
}

impl Boundary {
    pub const ZERO: Boundary = Boundary {
        rightward: 0,
        leftward: 0,
    };

    pub fn new(rightward: usize, leftward: usize) -> Self {
        Boundary { rightward, leftward }
    }
}

impl Add for Boundary {
    type Output = Boundary;

    fn add(self, rhs: Boundary) -> Boundary {
        Boundary::new(self.rightward + rhs.rightward, self.leftward + rhs.leftward)
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.rightward, self.leftward)
    }
}

/// An endpoint of an edge. Sources are entries or positions, targets are
/// positions or exits. `Ord` puts positions before exits, which fixes the
/// traversal order of successors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoint {
    Entry(usize),
    Pos(usize),
    Exit(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Position {
    pub owner: Player,
    pub priority: Priority,
    pub name: Option<String>,
}

impl Position {
    pub fn new(owner: Player, priority: impl Into<Priority>) -> Self {
        Position {
            owner,
            priority: priority.into(),
            name: None,
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }
}

pub type Edge = (Endpoint, Endpoint);

/// A game graph with entry and exit positions on both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenParityGame {
    max_priority: u32,
    domain: Boundary,
    codomain: Boundary,
    positions: Vec<Position>,
    edges: BTreeSet<Edge>,
}

impl OpenParityGame {
    /// Build a game and check every structural invariant.
    pub fn new(
        max_priority: u32,
        domain: Boundary,
        codomain: Boundary,
        positions: Vec<Position>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self> {
        let game = Self::new_unchecked(max_priority, domain, codomain, positions, edges);
        let violations = game.validate();
        if violations.is_empty() {
            Ok(game)
        } else {
            Err(Error::InvalidGame(violations))
        }
    }

    /// Build a game without checking it; [`OpenParityGame::validate`] lists
    /// what is wrong with it. Duplicate edges collapse.
    pub fn new_unchecked(
        max_priority: u32,
        domain: Boundary,
        codomain: Boundary,
        positions: Vec<Position>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Self {
        OpenParityGame {
            max_priority,
            domain,
            codomain,
            positions,
            edges: edges.into_iter().collect(),
        }
    }

    pub fn max_priority(&self) -> u32 {
        self.max_priority
    }

    /// The same game under a larger priority bound.
    pub fn with_max_priority(mut self, max_priority: u32) -> Self {
        self.max_priority = self.max_priority.max(max_priority);
        self
    }

    pub fn domain(&self) -> Boundary {
        self.domain
    }

    pub fn codomain(&self) -> Boundary {
        self.codomain
    }

    pub fn positions(&self) -> &[Position] {
        &self.positions
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn num_positions(&self) -> usize {
        self.positions.len()
    }

    pub fn num_entries(&self) -> usize {
        self.domain.rightward + self.codomain.leftward
    }

    pub fn num_exits(&self) -> usize {
        self.domain.leftward + self.codomain.rightward
    }

    /// The position or exit that entry `i` leads to.
    pub fn entry_target(&self, i: usize) -> Option<Endpoint> {
        self.edges
            .range((Endpoint::Entry(i), Endpoint::Entry(0))..)
            .take_while(|(s, _)| *s == Endpoint::Entry(i))
            .map(|&(_, t)| t)
            .next()
    }

    /// Successors of every position, in ascending endpoint order.
    pub fn successors(&self) -> Vec<Vec<Endpoint>> {
        let mut succ = vec![Vec::new(); self.positions.len()];
        for &(s, t) in &self.edges {
            if let Endpoint::Pos(p) = s {
                if p < succ.len() {
                    succ[p].push(t);
                }
            }
        }
        succ
    }

    /// Every structural problem with the game, one description each. Empty
    /// iff the game is well formed.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.max_priority < 2 {
            out.push(format!("max priority {} is below 2", self.max_priority));
        }
        let n = self.positions.len();
        let entries = self.num_entries();
        let exits = self.num_exits();
        let mut out_of_entry = vec![0usize; entries + 1];
        let mut into_exit = vec![0usize; exits + 1];
        for &(s, t) in &self.edges {
            let edge = format!("{s:?} -> {t:?}");
            match s {
                Endpoint::Entry(i) if (1..=entries).contains(&i) => out_of_entry[i] += 1,
                Endpoint::Pos(p) if p < n => {}
                _ => out.push(format!("edge {edge} has an invalid source")),
            }
            match t {
                Endpoint::Exit(k) if (1..=exits).contains(&k) => into_exit[k] += 1,
                Endpoint::Pos(p) if p < n => {}
                _ => out.push(format!("edge {edge} has an invalid target")),
            }
        }
        for (i, &count) in out_of_entry.iter().enumerate().skip(1) {
            if count != 1 {
                out.push(format!("entry {i} has {count} outgoing edges, expected exactly one"));
            }
        }
        for (k, &count) in into_exit.iter().enumerate().skip(1) {
            if count != 1 {
                out.push(format!("exit {k} has {count} incoming edges, expected exactly one"));
            }
        }
        for (p, pos) in self.positions.iter().enumerate() {
            if pos.priority.value() > self.max_priority {
                out.push(format!(
                    "position {p} has priority {} above the bound {}",
                    pos.priority, self.max_priority
                ));
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// True when no position can reach itself.
    pub fn is_acyclic(&self) -> bool {
        topological_order(&self.successors()).is_some()
    }

    /// Positions reachable from at least one entry, in ascending id order.
    pub fn reachable_positions(&self) -> Vec<usize> {
        let succ = self.successors();
        let mut seen = vec![false; self.positions.len()];
        let mut stack: Vec<usize> = (1..=self.num_entries())
            .filter_map(|i| match self.entry_target(i) {
                Some(Endpoint::Pos(p)) => Some(p),
                _ => None,
            })
            .collect();
        while let Some(p) = stack.pop() {
            if std::mem::replace(&mut seen[p], true) {
                continue;
            }
            for t in &succ[p] {
                if let Endpoint::Pos(q) = *t {
                    stack.push(q);
                }
            }
        }
        (0..self.positions.len()).filter(|&p| seen[p]).collect()
    }

    pub fn is_closed(&self) -> bool {
        self.num_exits() == 0
    }
}

/// Kahn's algorithm over position successors; `None` when there is a cycle.
pub(crate) fn topological_order(succ: &[Vec<Endpoint>]) -> Option<Vec<usize>> {
    let n = succ.len();
    let mut indeg = vec![0usize; n];
    for targets in succ {
        for t in targets {
            if let Endpoint::Pos(q) = *t {
                indeg[q] += 1;
            }
        }
    }
    let mut ready: Vec<usize> = (0..n).filter(|&p| indeg[p] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(p) = ready.pop() {
        order.push(p);
        for t in &succ[p] {
            if let Endpoint::Pos(q) = *t {
                indeg[q] -= 1;
                if indeg[q] == 0 {
                    ready.push(q);
                }
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// A game with no exits: every entry is a queried start position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedParityGame(OpenParityGame);

impl ClosedParityGame {
    pub fn new(game: OpenParityGame) -> Result<Self> {
        if !game.is_closed() {
            return Err(Error::Precondition(format!(
                "a closed game has no exits, this one has {}",
                game.num_exits()
            )));
        }
        let violations = game.validate();
        if !violations.is_empty() {
            return Err(Error::InvalidGame(violations));
        }
        Ok(ClosedParityGame(game))
    }

    /// A plain parity game with every position marked as an entry, in id
    /// order. Successor lists name positions by index.
    pub fn from_graph(max_priority: u32, positions: Vec<Position>, successors: &[Vec<usize>]) -> Result<Self> {
        let n = positions.len();
        let mut edges = Vec::new();
        for p in 0..n {
            edges.push((Endpoint::Entry(p + 1), Endpoint::Pos(p)));
        }
        for (p, targets) in successors.iter().enumerate() {
            for &q in targets {
                edges.push((Endpoint::Pos(p), Endpoint::Pos(q)));
            }
        }
        let game = OpenParityGame::new(max_priority, Boundary::new(n, 0), Boundary::ZERO, positions, edges)?;
        ClosedParityGame::new(game)
    }

    pub fn game(&self) -> &OpenParityGame {
        &self.0
    }

    pub fn into_game(self) -> OpenParityGame {
        self.0
    }

    /// The position each entry starts at.
    pub fn entry_positions(&self) -> Vec<usize> {
        (1..=self.0.num_entries())
            .map(|i| match self.0.entry_target(i) {
                Some(Endpoint::Pos(p)) => p,
                other => unreachable!("closed game entry {i} leads to {other:?}"),
            })
            .collect()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use Endpoint::*;

    pub(crate) fn example_game() -> ClosedParityGame {
        let positions = vec![
            Position::new(Player::Zero, 4).named("tl"),
            Position::new(Player::One, 1).named("tr"),
            Position::new(Player::Zero, 3).named("bl"),
            Position::new(Player::One, 2).named("br"),
        ];
        ClosedParityGame::from_graph(4, positions, &[vec![1, 2], vec![0], vec![3], vec![2, 0, 1]]).unwrap()
    }

    #[test]
    fn example_game_is_valid() {
        assert!(example_game().game().validate().is_empty());
    }

    #[test]
    fn entry_with_two_edges_is_reported() {
        let g = OpenParityGame::new_unchecked(
            2,
            Boundary::new(1, 0),
            Boundary::ZERO,
            vec![Position::new(Player::Zero, 0), Position::new(Player::One, 0)],
            [(Entry(1), Pos(0)), (Entry(1), Pos(1))],
        );
        let v = g.validate();
        assert_eq!(v.len(), 1);
        assert!(v[0].contains("entry 1"), "{v:?}");
    }

    #[test]
    fn priority_above_bound_is_reported() {
        let g = OpenParityGame::new_unchecked(
            2,
            Boundary::new(1, 0),
            Boundary::ZERO,
            vec![Position::new(Player::Zero, 3)],
            [(Entry(1), Pos(0))],
        );
        let v = g.validate();
        assert_eq!(v.len(), 1);
        assert!(v[0].contains("priority 3"), "{v:?}");
    }

    #[test]
    fn dangling_edges_and_missing_exit() {
        let g = OpenParityGame::new_unchecked(
            2,
            Boundary::new(1, 0),
            Boundary::new(1, 0),
            vec![Position::new(Player::Zero, 0)],
            [(Entry(1), Pos(0)), (Pos(0), Pos(7)), (Exit(1), Pos(0))],
        );
        let v = g.validate();
        assert_eq!(v.len(), 3, "{v:?}");
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = OpenParityGame::new(
            2,
            Boundary::new(1, 0),
            Boundary::ZERO,
            vec![Position::new(Player::Zero, 0)],
            [(Entry(1), Pos(0)), (Pos(0), Pos(0)), (Pos(0), Pos(0))],
        )
        .unwrap();
        assert_eq!(g.edges().len(), 2);
    }

    #[test]
    fn acyclicity() {
        assert!(!example_game().game().is_acyclic());
        assert!(identity(Boundary::new(2, 1)).is_acyclic());
    }

    #[test]
    fn closed_game_rejects_exits() {
        assert!(ClosedParityGame::new(identity(Boundary::new(1, 0))).is_err());
    }
}
