//! Elementary games: identities, swaps, the empty game and the one-position
//! building blocks that every open game can be assembled from.

use crate::priority::Priority;

use super::{Boundary, Endpoint, OpenParityGame, Player, Position};

const DEFAULT_MAX: u32 = 2;

fn wires(domain: Boundary, codomain: Boundary, edges: Vec<(Endpoint, Endpoint)>) -> OpenParityGame {
    OpenParityGame::new_unchecked(DEFAULT_MAX, domain, codomain, Vec::new(), edges)
}

fn single(owner: Player, prio: u32, domain: Boundary, codomain: Boundary, ins: usize, outs: usize) -> OpenParityGame {
    let mut edges = Vec::new();
    for i in 1..=ins {
        edges.push((Endpoint::Entry(i), Endpoint::Pos(0)));
    }
    for k in 1..=outs {
        edges.push((Endpoint::Pos(0), Endpoint::Exit(k)));
    }
    OpenParityGame::new_unchecked(
        DEFAULT_MAX.max(prio),
        domain,
        codomain,
        vec![Position::new(owner, prio)],
        edges,
    )
}

/// `id_b : b → b`, each wire passed straight through.
pub fn identity(b: Boundary) -> OpenParityGame {
    let mut edges = Vec::new();
    for i in 1..=b.rightward {
        edges.push((Endpoint::Entry(i), Endpoint::Exit(b.leftward + i)));
    }
    for j in 1..=b.leftward {
        edges.push((Endpoint::Entry(b.rightward + j), Endpoint::Exit(j)));
    }
    wires(b, b, edges)
}

/// `σ : a + b → b + a`, exchanging the two blocks of wires on each side.
pub fn swap(a: Boundary, b: Boundary) -> OpenParityGame {
    let left_exits = a.leftward + b.leftward;
    let right_entries = a.rightward + b.rightward;
    let mut edges = Vec::new();
    for i in 1..=a.rightward {
        edges.push((Endpoint::Entry(i), Endpoint::Exit(left_exits + b.rightward + i)));
    }
    for i in 1..=b.rightward {
        edges.push((Endpoint::Entry(a.rightward + i), Endpoint::Exit(left_exits + i)));
    }
    for j in 1..=b.leftward {
        edges.push((Endpoint::Entry(right_entries + j), Endpoint::Exit(a.leftward + j)));
    }
    for j in 1..=a.leftward {
        edges.push((Endpoint::Entry(right_entries + b.leftward + j), Endpoint::Exit(j)));
    }
    wires(a + b, b + a, edges)
}

/// The game `(0,0) → (0,0)` with nothing in it.
pub fn empty() -> OpenParityGame {
    wires(Boundary::ZERO, Boundary::ZERO, Vec::new())
}

/// A position owned by `owner` choosing between two exits.
pub fn choice(owner: Player) -> OpenParityGame {
    single(owner, 0, Boundary::new(1, 0), Boundary::new(2, 0), 1, 2)
}

/// A dead position owned by `owner`, who therefore loses.
pub fn lose(owner: Player) -> OpenParityGame {
    single(owner, 0, Boundary::new(1, 0), Boundary::ZERO, 1, 0)
}

/// Two entries joined into one exit.
pub fn merge() -> OpenParityGame {
    single(Player::One, 0, Boundary::new(2, 0), Boundary::new(1, 0), 2, 1)
}

/// An exit nothing leads into.
pub fn start() -> OpenParityGame {
    single(Player::One, 0, Boundary::ZERO, Boundary::new(1, 0), 0, 1)
}

/// A single pass-through position carrying priority `k`.
pub fn priority(k: impl Into<Priority>) -> OpenParityGame {
    let k = k.into().value();
    single(Player::One, k, Boundary::new(1, 0), Boundary::new(1, 0), 1, 1)
}

/// Bends a rightward wire back to the left: `(1,1) → (0,0)`.
pub fn cap() -> OpenParityGame {
    wires(Boundary::new(1, 1), Boundary::ZERO, vec![(Endpoint::Entry(1), Endpoint::Exit(1))])
}

/// Bends a leftward wire back to the right: `(0,0) → (1,1)`.
pub fn cup() -> OpenParityGame {
    wires(Boundary::ZERO, Boundary::new(1, 1), vec![(Endpoint::Entry(1), Endpoint::Exit(1))])
}
