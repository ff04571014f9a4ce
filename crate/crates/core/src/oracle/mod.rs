//! Independent ground truth: classical solvers, semantics by strategy
//! enumeration, random generators and the axiom harness.
//!
//! Nothing here uses the rewriting pipeline except where a normal form has
//! to be canonicalised for comparison.

mod axioms;
mod brute;
mod context;
pub mod random;
mod semantics;
mod zielonka;

use crate::game::{ClosedParityGame, Endpoint, Player};

pub use axioms::{check_axiom, selftest, AxiomId, AxiomReport, Counterexample, SelftestReport};
pub use brute::{brute_force, lasso_winner};
pub use context::{ClosingContext, CtxTarget};
pub use random::{random_closed_game, random_game, RandomGameParams, TermGen};
pub use semantics::{enumerate_semantics_acyclic, positional_semantics};
pub use zielonka::solve_graph;

/// A plain parity game: owner, priority and successors per node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub owner: Vec<Player>,
    pub priority: Vec<u32>,
    pub succ: Vec<Vec<usize>>,
}

impl Graph {
    pub fn len(&self) -> usize {
        self.owner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owner.is_empty()
    }

    /// The positions of a closed game, and the node each entry starts at.
    pub fn of_closed(game: &ClosedParityGame) -> (Graph, Vec<usize>) {
        let g = game.game();
        let succ = g
            .successors()
            .into_iter()
            .map(|ts| {
                ts.into_iter()
                    .map(|t| match t {
                        Endpoint::Pos(q) => q,
                        other => unreachable!("closed games only lead to positions, not {other:?}"),
                    })
                    .collect()
            })
            .collect();
        let graph = Graph {
            owner: g.positions().iter().map(|p| p.owner).collect(),
            priority: g.positions().iter().map(|p| p.priority.value()).collect(),
            succ,
        };
        (graph, game.entry_positions())
    }
}

/// Winner at every entry, by Zielonka's algorithm.
pub fn zielonka(game: &ClosedParityGame) -> Vec<Player> {
    let (g, entries) = Graph::of_closed(game);
    let w = solve_graph(&g);
    entries.into_iter().map(|v| w[v]).collect()
}

/// Winner at every entry, by trying every pair of positional strategies.
pub fn brute_force_closed(game: &ClosedParityGame) -> Vec<Player> {
    let (g, entries) = Graph::of_closed(game);
    let w = brute_force(&g);
    entries.into_iter().map(|v| w[v]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_game_both_solvers() {
        let g = crate::game::tests::example_game();
        let want = [Player::Zero, Player::Zero, Player::One, Player::One];
        assert_eq!(zielonka(&g), want);
        assert_eq!(brute_force_closed(&g), want);
    }

    #[test]
    fn zielonka_matches_brute_force_on_small_games() {
        for seed in 0..400 {
            let n = (seed % 5) as usize + 1;
            let g = random_closed_game(n, 3, 0.2 + 0.1 * (seed % 5) as f64, seed).unwrap();
            assert_eq!(zielonka(&g), brute_force_closed(&g), "seed {seed}");
        }
    }
}
