//! Closing contexts: small environments that take over at every exit of an
//! open game and may lead back into any of its entries.

use rand::Rng;

use crate::config::Guards;
use crate::error::Result;
use crate::fixpoint::{solve_equations, winner_of};
use crate::game::{Boundary, ClosedParityGame, Endpoint, OpenParityGame, Player, Position};
use crate::nf::NormalForm;
use crate::priority::Priority;
use crate::var::Var;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CtxTarget {
    /// One of the context's own positions.
    Node(usize),
    /// An entry of the game being closed (1-based).
    Entry(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosingContext {
    pub positions: Vec<Position>,
    pub successors: Vec<Vec<CtxTarget>>,
    /// Context position reached from each exit.
    pub exit_targets: Vec<usize>,
}

impl ClosingContext {
    /// A random context for a game with `entries` entries and `exits` exits.
    pub fn random<R: Rng>(rng: &mut R, entries: usize, exits: usize, max_priority: u32) -> Self {
        let n = rng.gen_range(1..=exits.max(1) + 2);
        let positions: Vec<Position> = (0..n)
            .map(|_| {
                let owner = if rng.gen_bool(0.5) { Player::Zero } else { Player::One };
                Position::new(owner, rng.gen_range(0..=max_priority))
            })
            .collect();
        let successors = (0..n)
            .map(|_| {
                let degree = rng.gen_range(0..=2);
                (0..degree)
                    .map(|_| {
                        if entries > 0 && rng.gen_bool(0.6) {
                            CtxTarget::Entry(rng.gen_range(1..=entries))
                        } else {
                            CtxTarget::Node(rng.gen_range(0..n))
                        }
                    })
                    .collect()
            })
            .collect();
        let exit_targets = (0..exits).map(|_| rng.gen_range(0..n)).collect();
        ClosingContext {
            positions,
            successors,
            exit_targets,
        }
    }

    /// The closed game whose entries are `game`'s entries.
    pub fn close(&self, game: &OpenParityGame) -> Result<ClosedParityGame> {
        let na = game.num_positions();
        let resolve_entry = |j: usize| -> Endpoint {
            match game.entry_target(j).expect("valid games wire every entry") {
                Endpoint::Exit(k) => Endpoint::Pos(na + self.exit_targets[k - 1]),
                t => t,
            }
        };
        let mut edges = Vec::new();
        for j in 1..=game.num_entries() {
            edges.push((Endpoint::Entry(j), resolve_entry(j)));
        }
        for &(s, t) in game.edges() {
            if let Endpoint::Pos(_) = s {
                let t = match t {
                    Endpoint::Exit(k) => Endpoint::Pos(na + self.exit_targets[k - 1]),
                    t => t,
                };
                edges.push((s, t));
            }
        }
        for (i, succ) in self.successors.iter().enumerate() {
            for t in succ {
                let t = match *t {
                    CtxTarget::Node(c) => Endpoint::Pos(na + c),
                    CtxTarget::Entry(j) => resolve_entry(j),
                };
                edges.push((Endpoint::Pos(na + i), t));
            }
        }
        let mut positions = game.positions().to_vec();
        positions.extend(self.positions.iter().cloned());
        let max_priority = self
            .positions
            .iter()
            .map(|p| p.priority.value())
            .fold(game.max_priority(), u32::max);
        ClosedParityGame::new(OpenParityGame::new(
            max_priority,
            Boundary::new(game.num_entries(), 0),
            Boundary::ZERO,
            positions,
            edges,
        )?)
    }

    /// Winners at the entries predicted from the entries' normal forms alone,
    /// by solving the equations they form together with the context.
    pub fn predict(&self, entries: &[NormalForm], guards: &Guards) -> Result<Vec<Player>> {
        let entry_var = |j: usize| Var::new(format!("a{j}"));
        let node_var = |c: usize| Var::new(format!("c{c}"));
        let mut vars = Vec::new();
        let mut eqs = Vec::new();
        for (j, nf) in entries.iter().enumerate() {
            let mut f = nf.clone();
            for (k, &c) in self.exit_targets.iter().enumerate() {
                f = f.substitute_checked(&Var::exit(k + 1), &NormalForm::var(node_var(c)), guards)?;
            }
            vars.push(entry_var(j + 1));
            eqs.push(f);
        }
        for (c, (pos, succ)) in self.positions.iter().zip(&self.successors).enumerate() {
            let atoms = succ.iter().map(|t| match *t {
                CtxTarget::Node(d) => NormalForm::var(node_var(d)),
                CtxTarget::Entry(j) => NormalForm::var(entry_var(j)),
            });
            let body = match pos.owner {
                Player::Zero => atoms.fold(NormalForm::bot(), |a, b| a.join(&b)),
                Player::One => atoms.fold(NormalForm::top(), |a, b| a.meet(&b)),
            };
            vars.push(node_var(c));
            eqs.push(body.lift(Priority(pos.priority.value())));
        }
        let solved = solve_equations(&vars, eqs, guards)?;
        solved[..entries.len()].iter().map(winner_of).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{random::rng, zielonka};

    #[test]
    fn dead_player1_context_on_the_worked_example() {
        // The worked game from its top-left entry, with the top-right position leaving
        // through exit 1; the exit leads to a dead Player 1 position.
        let g = OpenParityGame::new(
            4,
            Boundary::new(1, 0),
            Boundary::new(1, 0),
            vec![
                Position::new(Player::Zero, 4),
                Position::new(Player::One, 1),
                Position::new(Player::Zero, 3),
                Position::new(Player::One, 2),
            ],
            [
                (Endpoint::Entry(1), Endpoint::Pos(1)),
                (Endpoint::Pos(0), Endpoint::Pos(1)),
                (Endpoint::Pos(0), Endpoint::Pos(2)),
                (Endpoint::Pos(1), Endpoint::Pos(0)),
                (Endpoint::Pos(1), Endpoint::Exit(1)),
                (Endpoint::Pos(2), Endpoint::Pos(3)),
                (Endpoint::Pos(3), Endpoint::Pos(2)),
                (Endpoint::Pos(3), Endpoint::Pos(0)),
                (Endpoint::Pos(3), Endpoint::Pos(1)),
            ],
        )
        .unwrap();
        let ctx = ClosingContext {
            positions: vec![Position::new(Player::One, 0)],
            successors: vec![vec![]],
            exit_targets: vec![0],
        };
        let closed = ctx.close(&g).unwrap();
        assert_eq!(zielonka(&closed), [Player::Zero]);
    }

    #[test]
    fn random_contexts_close_validly() {
        let mut r = rng(9);
        let g = crate::game::choice(Player::Zero);
        for _ in 0..50 {
            let ctx = ClosingContext::random(&mut r, 1, 2, 4);
            assert!(ctx.close(&g).is_ok());
        }
    }
}
