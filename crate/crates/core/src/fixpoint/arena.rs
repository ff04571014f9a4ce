//! Certification route for fixpoint elimination.
//!
//! The loop `mu x . B` is unrolled into a finite arena whose states remember
//! the largest priority seen so far. For a candidate clause `T`, reaching
//! exit `o` with recorded `k` is a win iff `T` accepts `(o, k)`; looping
//! forever is judged by the loop priorities. The normal form is the
//! canonical set of candidates Player 0 wins, each decided by Zielonka.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::config::Guards;
use crate::error::{Error, Result};
use crate::game::Player;
use crate::nf::{canonicalize, Clause, NormalForm};
use crate::oracle::{solve_graph, Graph};
use crate::priority::Priority;
use crate::var::Var;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArenaState {
    /// Player 0 picks a clause; `m` is the largest priority recorded so far.
    Start(Priority),
    /// Player 1 picks an outcome of clause `i`.
    Clause(usize, Priority),
    /// Back through the loop with loop priority `q`, to `Start(m)`.
    Transit(Priority, Priority),
    Win,
    Lose,
}

/// The arena of `mu x . body` for one candidate clause.
#[derive(Clone, Debug)]
pub struct Arena {
    pub states: Vec<ArenaState>,
    pub graph: Graph,
}

impl Arena {
    pub fn build(x: &Var, body: &NormalForm, candidate: &Clause, guards: &Guards) -> Result<Arena> {
        let clauses: Vec<&Clause> = body.clauses().collect();
        let top = clauses
            .iter()
            .flat_map(|c| c.iter().map(|(_, p)| p.value()))
            .max()
            .unwrap_or(0)
            + 2;
        let (win_p, lose_p) = if top % 2 == 0 { (top, top + 1) } else { (top + 1, top) };

        let mut states = vec![ArenaState::Win, ArenaState::Lose];
        let mut index: HashMap<ArenaState, usize> = HashMap::from([(ArenaState::Win, 0), (ArenaState::Lose, 1)]);
        let mut succ: Vec<Vec<usize>> = vec![vec![0], vec![1]];
        let mut queue = vec![ArenaState::Start(Priority::ZERO)];
        let mut intern = |s: ArenaState, states: &mut Vec<ArenaState>, succ: &mut Vec<Vec<usize>>, queue: &mut Vec<ArenaState>| {
            *index.entry(s).or_insert_with(|| {
                states.push(s);
                succ.push(Vec::new());
                queue.push(s);
                states.len() - 1
            })
        };
        let root = intern(ArenaState::Start(Priority::ZERO), &mut states, &mut succ, &mut Vec::new());
        while let Some(s) = queue.pop() {
            if states.len() > guards.arena_states {
                return Err(Error::Resource(format!(
                    "fixpoint arena exceeds {} states",
                    guards.arena_states
                )));
            }
            let from = intern(s, &mut states, &mut succ, &mut Vec::new());
            let mut out = Vec::new();
            match s {
                ArenaState::Start(m) => {
                    for i in 0..clauses.len() {
                        out.push(intern(ArenaState::Clause(i, m), &mut states, &mut succ, &mut queue));
                    }
                }
                ArenaState::Clause(i, m) => {
                    for (o, p) in clauses[i].iter() {
                        let k = m.max(p);
                        let t = if o == x {
                            ArenaState::Transit(p, k)
                        } else if candidate.get(o).is_some_and(|t| t.parity_leq(k)) {
                            ArenaState::Win
                        } else {
                            ArenaState::Lose
                        };
                        out.push(intern(t, &mut states, &mut succ, &mut queue));
                    }
                }
                ArenaState::Transit(_, m) => {
                    out.push(intern(ArenaState::Start(m), &mut states, &mut succ, &mut queue));
                }
                ArenaState::Win | ArenaState::Lose => {}
            }
            if !out.is_empty() {
                succ[from] = out;
            }
        }
        debug_assert_eq!(root, 2);
        let owner = states
            .iter()
            .map(|s| match s {
                ArenaState::Clause(..) => Player::One,
                _ => Player::Zero,
            })
            .collect();
        let priority = states
            .iter()
            .map(|s| match s {
                ArenaState::Transit(q, _) => q.value(),
                ArenaState::Win => win_p,
                ArenaState::Lose => lose_p,
                _ => 0,
            })
            .collect();
        Ok(Arena {
            states,
            graph: Graph { owner, priority, succ },
        })
    }

    /// Whether Player 0 wins from `Start(0)`.
    pub fn player0_wins(&self) -> bool {
        solve_graph(&self.graph)[2] == Player::Zero
    }
}

/// Outcomes that can possibly be recorded at each remaining exit.
fn outcome_universe(x: &Var, body: &NormalForm) -> BTreeMap<Var, BTreeSet<Priority>> {
    let mut levels: BTreeSet<Priority> = body.clauses().filter_map(|c| c.get(x)).collect();
    levels.insert(Priority::ZERO);
    let mut universe: BTreeMap<Var, BTreeSet<Priority>> = BTreeMap::new();
    for c in body.clauses() {
        for (o, p) in c.iter() {
            if o != x {
                let set = universe.entry(o.clone()).or_default();
                set.extend(levels.iter().map(|&m| m.max(p)));
            }
        }
    }
    universe
}

/// Normal form of `mu x . body` from arena solving alone: every candidate
/// clause over the outcome universe is tried.
pub fn solve_by_arenas(x: &Var, body: &NormalForm, guards: &Guards) -> Result<NormalForm> {
    let universe = outcome_universe(x, body);
    let size: usize = universe.values().map(BTreeSet::len).sum();
    if size > guards.outcome_universe {
        return Err(Error::Resource(format!(
            "{size} possible outcomes exceed the outcome guard ({})",
            guards.outcome_universe
        )));
    }
    let axes: Vec<(Var, Vec<Option<Priority>>)> = universe
        .into_iter()
        .map(|(o, ks)| (o, std::iter::once(None).chain(ks.into_iter().map(Some)).collect()))
        .collect();
    let total: usize = axes.iter().map(|(_, ks)| ks.len()).product();
    if total > guards.arena_states {
        return Err(Error::Resource(format!(
            "{total} candidate clauses exceed the arena guard ({})",
            guards.arena_states
        )));
    }
    let mut winners = Vec::new();
    let mut digits = vec![0usize; axes.len()];
    loop {
        let candidate: Clause = axes
            .iter()
            .zip(&digits)
            .filter_map(|((o, ks), &d)| ks[d].map(|k| (o.clone(), k)))
            .collect();
        if Arena::build(x, body, &candidate, guards)?.player0_wins() {
            winners.push(candidate);
        }
        let mut i = 0;
        loop {
            if i == axes.len() {
                return Ok(canonicalize(winners));
            }
            digits[i] += 1;
            if digits[i] < axes[i].1.len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}
