//! Semantics by strategy enumeration.
//!
//! For each positional strategy of Player 0 the plays it allows are
//! collected; every play that leaves through exit `o` having seen largest
//! priority `k` contributes `(o, k)` to the strategy's clause. Strategies
//! that allow Player 1 to win outright contribute nothing.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::game::{Endpoint, OpenParityGame, Player};
use crate::nf::{canonicalize, Clause, NormalForm};
use crate::priority::Priority;
use crate::var::Var;

/// Normal form of every entry of an acyclic game, from the definition.
pub fn enumerate_semantics_acyclic(game: &OpenParityGame) -> Result<Vec<NormalForm>> {
    if !game.is_acyclic() {
        return Err(Error::Precondition("strategy enumeration needs an acyclic game".into()));
    }
    enumerate(game)
}

/// The same enumeration on games with cycles, where plays that stay inside
/// the game forever are judged by the parity condition. Only positional
/// strategies are considered, which is not known to be complete for open
/// games.
pub fn positional_semantics(game: &OpenParityGame) -> Result<Vec<NormalForm>> {
    enumerate(game)
}

fn enumerate(game: &OpenParityGame) -> Result<Vec<NormalForm>> {
    let violations = game.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidGame(violations));
    }
    let e = Enumerator {
        game,
        succ: game.successors(),
    };
    Ok((1..=game.num_entries())
        .map(|i| match game.entry_target(i).expect("validated") {
            Endpoint::Exit(k) => NormalForm::var(Var::exit(k)),
            Endpoint::Pos(p) => {
                let mut out = Vec::new();
                let mut sigma = vec![None; game.num_positions()];
                e.branch(&mut sigma, vec![(p, Priority::ZERO)], HashSet::new(), Clause::new(), &mut out);
                canonicalize(out)
            }
            Endpoint::Entry(_) => unreachable!(),
        })
        .collect())
}

struct Enumerator<'a> {
    game: &'a OpenParityGame,
    succ: Vec<Vec<Endpoint>>,
}

impl Enumerator<'_> {
    /// Explore all plays from the pending `(position, max so far)` pairs,
    /// fixing Player 0's choice the first time each of her positions is
    /// reached.
    fn branch(
        &self,
        sigma: &mut Vec<Option<usize>>,
        mut stack: Vec<(usize, Priority)>,
        mut seen: HashSet<(usize, Priority)>,
        mut clause: Clause,
        out: &mut Vec<Clause>,
    ) {
        while let Some((v, before)) = stack.pop() {
            if seen.contains(&(v, before)) {
                continue;
            }
            let pos = &self.game.positions()[v];
            let m = before.max(pos.priority);
            let succ = &self.succ[v];
            if succ.is_empty() {
                if pos.owner == Player::Zero {
                    return;
                }
                seen.insert((v, before));
                continue;
            }
            let chosen: Vec<usize> = match pos.owner {
                Player::One => (0..succ.len()).collect(),
                Player::Zero => match sigma[v] {
                    Some(c) => vec![c],
                    None => {
                        for c in 0..succ.len() {
                            sigma[v] = Some(c);
                            let mut st = stack.clone();
                            st.push((v, before));
                            self.branch(sigma, st, seen.clone(), clause.clone(), out);
                        }
                        sigma[v] = None;
                        return;
                    }
                },
            };
            seen.insert((v, before));
            for c in chosen {
                match succ[c] {
                    Endpoint::Pos(q) => stack.push((q, m)),
                    Endpoint::Exit(k) => clause.insert(Var::exit(k), m),
                    Endpoint::Entry(_) => unreachable!(),
                }
            }
        }
        if !self.odd_cycle(sigma, &seen) {
            out.push(clause);
        }
    }

    /// Whether Player 1 can stay forever on an odd cycle among the reached
    /// positions, given Player 0's choices.
    fn odd_cycle(&self, sigma: &[Option<usize>], seen: &HashSet<(usize, Priority)>) -> bool {
        let n = self.game.num_positions();
        let mut reached = vec![false; n];
        for &(v, _) in seen {
            reached[v] = true;
        }
        let edges = |v: usize| -> Vec<usize> {
            let succ = &self.succ[v];
            let picks: Vec<usize> = match (self.game.positions()[v].owner, sigma[v]) {
                (Player::Zero, Some(c)) => vec![c],
                _ => (0..succ.len()).collect(),
            };
            picks
                .into_iter()
                .filter_map(|c| match succ[c] {
                    Endpoint::Pos(q) if reached[q] => Some(q),
                    _ => None,
                })
                .collect()
        };
        let prio = |v: usize| self.game.positions()[v].priority.value();
        (0..n).filter(|&v| reached[v] && prio(v) % 2 == 1).any(|v| {
            let d = prio(v);
            let mut visited = vec![false; n];
            let mut stack = edges(v);
            while let Some(w) = stack.pop() {
                if w == v {
                    return true;
                }
                if visited[w] || prio(w) > d {
                    continue;
                }
                visited[w] = true;
                stack.extend(edges(w));
            }
            false
        })
    }
}
