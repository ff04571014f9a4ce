use crate::error::{Error, Result};

use super::{Boundary, ClosedParityGame, Edge, Endpoint, OpenParityGame};

/// Node of the glued graph while composing: an outer boundary point, a
/// position of either game (already shifted), or an interface wire.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Glued {
    Outer(Endpoint),
    Wire(usize),
}

fn require_valid(game: &OpenParityGame) -> Result<()> {
    let violations = game.validate();
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidGame(violations))
    }
}

/// Sequential composition `a ; b`: `a`'s right boundary is glued to `b`'s
/// left boundary and the shared boundary points are hidden. Chains of
/// interface wires are followed to their end; closed loops made only of
/// wires disappear.
pub fn compose(a: &OpenParityGame, b: &OpenParityGame) -> Result<OpenParityGame> {
    if a.codomain != b.domain {
        return Err(Error::BoundaryMismatch {
            left: a.codomain,
            right: b.domain,
        });
    }
    require_valid(a)?;
    require_valid(b)?;
    let mid = a.codomain;
    let na = a.positions.len();
    let wires = mid.rightward + mid.leftward;
    // Rightward wire j (1-based) is slot j-1, leftward wire j is slot mid.rightward + j-1.
    let map_a = |e: Endpoint| -> Glued {
        match e {
            Endpoint::Entry(i) if i <= a.domain.rightward => Glued::Outer(Endpoint::Entry(i)),
            Endpoint::Entry(i) => Glued::Wire(mid.rightward + i - a.domain.rightward - 1),
            Endpoint::Exit(k) if k <= a.domain.leftward => Glued::Outer(Endpoint::Exit(k)),
            Endpoint::Exit(k) => Glued::Wire(k - a.domain.leftward - 1),
            Endpoint::Pos(p) => Glued::Outer(Endpoint::Pos(p)),
        }
    };
    let map_b = |e: Endpoint| -> Glued {
        match e {
            Endpoint::Entry(i) if i <= mid.rightward => Glued::Wire(i - 1),
            Endpoint::Entry(i) => Glued::Outer(Endpoint::Entry(a.domain.rightward + i - mid.rightward)),
            Endpoint::Exit(k) if k <= mid.leftward => Glued::Wire(mid.rightward + k - 1),
            Endpoint::Exit(k) => Glued::Outer(Endpoint::Exit(a.domain.leftward + k - mid.leftward)),
            Endpoint::Pos(p) => Glued::Outer(Endpoint::Pos(na + p)),
        }
    };

    let mut wire_next: Vec<Option<Glued>> = vec![None; wires];
    let mut open_edges: Vec<(Endpoint, Glued)> = Vec::new();
    let glued = a
        .edges
        .iter()
        .map(|&(s, t)| (map_a(s), map_a(t)))
        .chain(b.edges.iter().map(|&(s, t)| (map_b(s), map_b(t))));
    for (s, t) in glued {
        match s {
            Glued::Wire(w) => wire_next[w] = Some(t),
            Glued::Outer(src) => open_edges.push((src, t)),
        }
    }

    let mut edges: Vec<Edge> = Vec::with_capacity(open_edges.len());
    for (src, mut t) in open_edges {
        let mut hops = 0;
        while let Glued::Wire(w) = t {
            hops += 1;
            // Each wire has one incoming edge, so a chain from a real source
            // cannot revisit a wire.
            debug_assert!(hops <= wires);
            t = wire_next[w].expect("valid games give every interface wire an outgoing edge");
        }
        if let Glued::Outer(dst) = t {
            edges.push((src, dst));
        }
    }

    let mut positions = a.positions.clone();
    positions.extend(b.positions.iter().cloned());
    Ok(OpenParityGame::new_unchecked(
        a.max_priority.max(b.max_priority),
        a.domain,
        b.codomain,
        positions,
        edges,
    ))
}

/// Parallel composition: the two graphs side by side, boundaries added
/// componentwise with `a`'s wires first on every side.
pub fn tensor(a: &OpenParityGame, b: &OpenParityGame) -> OpenParityGame {
    let domain = a.domain + b.domain;
    let codomain = a.codomain + b.codomain;
    let na = a.positions.len();
    let shift_a = |e: Endpoint| match e {
        Endpoint::Entry(i) if i <= a.domain.rightward => Endpoint::Entry(i),
        Endpoint::Entry(i) => Endpoint::Entry(domain.rightward + i - a.domain.rightward),
        Endpoint::Exit(k) if k <= a.domain.leftward => Endpoint::Exit(k),
        Endpoint::Exit(k) => Endpoint::Exit(domain.leftward + k - a.domain.leftward),
        pos => pos,
    };
    let shift_b = |e: Endpoint| match e {
        Endpoint::Entry(i) if i <= b.domain.rightward => Endpoint::Entry(a.domain.rightward + i),
        Endpoint::Entry(i) => {
            Endpoint::Entry(domain.rightward + a.codomain.leftward + i - b.domain.rightward)
        }
        Endpoint::Exit(k) if k <= b.domain.leftward => Endpoint::Exit(a.domain.leftward + k),
        Endpoint::Exit(k) => Endpoint::Exit(domain.leftward + a.codomain.rightward + k - b.domain.leftward),
        Endpoint::Pos(p) => Endpoint::Pos(na + p),
    };
    let edges = a
        .edges
        .iter()
        .map(|&(s, t)| (shift_a(s), shift_a(t)))
        .chain(b.edges.iter().map(|&(s, t)| (shift_b(s), shift_b(t))));
    let mut positions = a.positions.clone();
    positions.extend(b.positions.iter().cloned());
    OpenParityGame::new_unchecked(a.max_priority.max(b.max_priority), domain, codomain, positions, edges)
}

/// Plug every exit of `game` with the environment `env`, leaving `game`'s
/// entries as the queried start positions.
pub fn close(game: &OpenParityGame, env: &OpenParityGame) -> Result<ClosedParityGame> {
    if env.codomain != Boundary::ZERO {
        return Err(Error::BoundaryMismatch {
            left: env.codomain,
            right: Boundary::ZERO,
        });
    }
    if game.domain.leftward != 0 {
        return Err(Error::Precondition(format!(
            "cannot close a game with {} exits on its left side",
            game.domain.leftward
        )));
    }
    ClosedParityGame::new(compose(game, env)?)
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use Endpoint::*;

    #[test]
    fn identity_is_unit_on_the_wiring() {
        let g = tests::example_game().into_game();
        assert_eq!(compose(&identity(g.domain()), &g).unwrap(), g);
    }

    #[test]
    fn mismatched_boundaries() {
        let err = compose(&identity(Boundary::new(1, 0)), &identity(Boundary::new(2, 0))).unwrap_err();
        assert!(matches!(err, Error::BoundaryMismatch { .. }));
    }

    #[test]
    fn tensor_of_single_positions() {
        let t = tensor(&priority(3), &lose(Player::Zero));
        assert_eq!(t.num_positions(), 2);
        assert_eq!(t.domain(), Boundary::new(2, 0));
        assert_eq!(t.codomain(), Boundary::new(1, 0));
        assert!(t.is_valid());
        assert!(t.edges().contains(&(Entry(2), Pos(1))));
    }

    #[test]
    fn yanking_straightens_a_wire() {
        let right = Boundary::new(1, 0);
        let lhs = compose(&tensor(&cup(), &identity(right)), &tensor(&identity(right), &cap())).unwrap();
        assert_eq!(lhs, identity(right));
        let left = Boundary::new(0, 1);
        let lhs = compose(&tensor(&identity(left), &cup()), &tensor(&cap(), &identity(left))).unwrap();
        assert_eq!(lhs, identity(left));
    }

    #[test]
    fn pure_wire_loop_vanishes() {
        assert_eq!(compose(&cup(), &cap()).unwrap(), empty());
    }

    #[test]
    fn swap_wiring_matches_picture() {
        let s = swap(Boundary::new(2, 0), Boundary::new(1, 0));
        let edges: Vec<_> = s.edges().iter().copied().collect();
        assert_eq!(edges, vec![(Entry(1), Exit(2)), (Entry(2), Exit(3)), (Entry(3), Exit(1))]);
    }

    #[test]
    fn close_requires_closed_env() {
        let g = identity(Boundary::new(1, 0));
        assert!(close(&g, &identity(Boundary::new(1, 0))).is_err());
        let closed = close(&g, &lose(Player::One)).unwrap();
        assert_eq!(closed.entry_positions(), vec![0]);
    }
}
