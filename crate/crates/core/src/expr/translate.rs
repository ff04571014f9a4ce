//! Translation between game graphs and expression systems.

use std::collections::HashMap;

use crate::config::Guards;
use crate::error::{Error, Result};
use crate::game::{Boundary, Endpoint, OpenParityGame, Player, Position};
use crate::priority::Priority;
use crate::var::Var;

use super::{Expr, ExprSystem};

/// One expression per entry, unfolding the graph depth first. Exit `k` is the
/// free variable `x{k}`; a back edge to position `p` on the current path
/// becomes `y{p}`, bound by a `mu` at `p`. Shared positions are duplicated,
/// so the guard on term nodes applies.
pub fn game_to_exprs(game: &OpenParityGame, guards: &Guards) -> Result<ExprSystem> {
    let violations = game.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidGame(violations));
    }
    let mut dfs = Unfold {
        game,
        succ: game.successors(),
        on_path: vec![false; game.num_positions()],
        used: vec![false; game.num_positions()],
        nodes: 0,
        limit: guards.term_nodes,
    };
    let mut components = Vec::with_capacity(game.num_entries());
    for i in 1..=game.num_entries() {
        let t = match game.entry_target(i) {
            Some(Endpoint::Pos(p)) => dfs.visit(p)?,
            Some(Endpoint::Exit(k)) => Expr::Var(Var::exit(k)),
            other => unreachable!("validated entry {i} leads to {other:?}"),
        };
        components.push(t);
    }
    let vars = (1..=game.num_exits()).map(Var::exit).collect();
    ExprSystem::new(vars, components)
}

struct Unfold<'a> {
    game: &'a OpenParityGame,
    succ: Vec<Vec<Endpoint>>,
    on_path: Vec<bool>,
    used: Vec<bool>,
    nodes: usize,
    limit: usize,
}

impl Unfold<'_> {
    fn charge(&mut self, n: usize) -> Result<()> {
        self.nodes += n;
        if self.nodes > self.limit {
            return Err(Error::Resource(format!(
                "unfolding the game into terms exceeds {} nodes",
                self.limit
            )));
        }
        Ok(())
    }

    fn visit(&mut self, p: usize) -> Result<Expr> {
        self.on_path[p] = true;
        let targets = self.succ[p].clone();
        let mut children = Vec::with_capacity(targets.len());
        for t in targets {
            let child = match t {
                Endpoint::Pos(q) if self.on_path[q] => {
                    self.used[q] = true;
                    Expr::Var(Var::position(q))
                }
                Endpoint::Pos(q) => self.visit(q)?,
                Endpoint::Exit(k) => Expr::Var(Var::exit(k)),
                Endpoint::Entry(_) => unreachable!("entries are never targets"),
            };
            children.push(child);
        }
        // children, one combining node per extra child, the priority node
        self.charge(children.len().max(1) + 1)?;
        let pos = &self.game.positions()[p];
        let combined = match pos.owner {
            Player::Zero => Expr::join_all(children),
            Player::One => Expr::meet_all(children),
        };
        let body = Expr::Pri(pos.priority, Box::new(combined));
        self.on_path[p] = false;
        if std::mem::replace(&mut self.used[p], false) {
            self.charge(1)?;
            Ok(Expr::Mu(Var::position(p), Box::new(body)))
        } else {
            Ok(body)
        }
    }
}

/// Build a game with one entry per component and one exit per declared
/// variable. Each exit is reached through a Player 1 merge position of
/// priority 0; `\/`, `/\` and `<k>` become positions, `bot`/`top` dead
/// positions, and `mu` a loop back to the start of its body.
pub fn expr_to_game(system: &ExprSystem) -> OpenParityGame {
    let mut b = Builder::default();
    let mut env: HashMap<Var, Vec<usize>> = HashMap::new();
    for (k, x) in system.vars().iter().enumerate() {
        let m = b.add(Player::One, Priority::ZERO);
        b.exits.push((m, k + 1));
        env.entry(x.clone()).or_default().push(m);
    }
    let roots: Vec<usize> = system
        .components()
        .iter()
        .map(|t| b.translate(t, &mut env).0)
        .collect();
    let max_priority = system
        .components()
        .iter()
        .map(Expr::max_priority)
        .fold(2, u32::max);
    b.finish(max_priority, &roots, system.vars().len())
}

#[derive(Default)]
struct Builder {
    positions: Vec<Position>,
    alive: Vec<bool>,
    edges: Vec<(usize, usize)>,
    exits: Vec<(usize, usize)>,
}

impl Builder {
    fn add(&mut self, owner: Player, priority: Priority) -> usize {
        self.positions.push(Position {
            owner,
            priority,
            name: None,
        });
        self.alive.push(true);
        self.positions.len() - 1
    }

    /// Returns the position that starts `t` and whether it was created for
    /// `t` (a variable only points at an existing position).
    fn translate(&mut self, t: &Expr, env: &mut HashMap<Var, Vec<usize>>) -> (usize, bool) {
        match t {
            Expr::Var(x) => {
                let p = *env
                    .get(x)
                    .and_then(|s| s.last())
                    .expect("well-typed systems declare every free variable");
                (p, false)
            }
            Expr::Pri(k, c) => {
                let p = self.add(Player::One, *k);
                let (q, _) = self.translate(c, env);
                self.edges.push((p, q));
                (p, true)
            }
            Expr::Join(l, r) | Expr::Meet(l, r) => {
                let owner = if matches!(t, Expr::Join(..)) { Player::Zero } else { Player::One };
                let p = self.add(owner, Priority::ZERO);
                let (a, _) = self.translate(l, env);
                let (c, _) = self.translate(r, env);
                self.edges.push((p, a));
                self.edges.push((p, c));
                (p, true)
            }
            Expr::Bot => (self.add(Player::Zero, Priority::ZERO), true),
            Expr::Top => (self.add(Player::One, Priority::ZERO), true),
            Expr::Mu(y, body) => {
                let r = self.add(Player::One, Priority::ZERO);
                env.entry(y.clone()).or_default().push(r);
                let (q, fresh) = self.translate(body, env);
                env.get_mut(y).map(Vec::pop);
                if fresh && q != r {
                    for e in &mut self.edges {
                        if e.1 == r {
                            e.1 = q;
                        }
                    }
                    self.alive[r] = false;
                    (q, true)
                } else {
                    self.edges.push((r, q));
                    (r, true)
                }
            }
        }
    }

    fn finish(self, max_priority: u32, roots: &[usize], exits: usize) -> OpenParityGame {
        let mut new_id = vec![usize::MAX; self.positions.len()];
        let mut positions = Vec::new();
        for (p, pos) in self.positions.into_iter().enumerate() {
            if self.alive[p] {
                new_id[p] = positions.len();
                positions.push(pos);
            }
        }
        let mut edges = Vec::new();
        for (i, &r) in roots.iter().enumerate() {
            edges.push((Endpoint::Entry(i + 1), Endpoint::Pos(new_id[r])));
        }
        for (p, q) in self.edges {
            edges.push((Endpoint::Pos(new_id[p]), Endpoint::Pos(new_id[q])));
        }
        for (m, k) in self.exits {
            edges.push((Endpoint::Pos(new_id[m]), Endpoint::Exit(k)));
        }
        OpenParityGame::new_unchecked(
            max_priority,
            Boundary::new(roots.len(), 0),
            Boundary::new(exits, 0),
            positions,
            edges,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;
    use Endpoint::*;

    fn sys(s: &str) -> ExprSystem {
        ExprSystem::from_exprs(vec![parse_expr(s).unwrap()])
    }

    #[test]
    fn variable_goes_through_a_merge_position() {
        let g = expr_to_game(&sys("x1"));
        assert!(g.is_valid(), "{:?}", g.validate());
        assert_eq!(g.positions(), &[Position::new(Player::One, 0)]);
        assert_eq!(g.edges().iter().copied().collect::<Vec<_>>(), vec![(Entry(1), Pos(0)), (Pos(0), Exit(1))]);
    }

    #[test]
    fn priority_loop_is_one_position() {
        let g = expr_to_game(&sys("mu y . <2> y"));
        assert!(g.is_valid());
        assert_eq!(g.positions(), &[Position::new(Player::One, 2)]);
        assert_eq!(g.edges().iter().copied().collect::<Vec<_>>(), vec![(Entry(1), Pos(0)), (Pos(0), Pos(0))]);
    }

    #[test]
    fn bare_loop_keeps_its_placeholder() {
        let g = expr_to_game(&sys("mu y . y"));
        assert!(g.is_valid());
        assert_eq!(g.num_positions(), 1);
        assert!(g.edges().contains(&(Pos(0), Pos(0))));
    }

    #[test]
    fn dead_player0_position() {
        let g = OpenParityGame::new(
            3,
            Boundary::new(1, 0),
            Boundary::ZERO,
            vec![Position::new(Player::Zero, 3)],
            [(Entry(1), Pos(0))],
        )
        .unwrap();
        let s = game_to_exprs(&g, &Guards::default()).unwrap();
        assert_eq!(s.components(), &[Expr::pri(3, Expr::Bot)]);
    }

    #[test]
    fn entry_wired_to_exit() {
        let g = crate::game::identity(Boundary::new(1, 0));
        let s = game_to_exprs(&g, &Guards::default()).unwrap();
        assert_eq!(s.components(), &[Expr::var("x1")]);
        assert_eq!(s.vars(), &[Var::new("x1")]);
    }

    #[test]
    fn back_edges_become_binders() {
        let g = crate::game::tests::example_game();
        let s = game_to_exprs(g.game(), &Guards::default()).unwrap();
        assert_eq!(s.components().len(), 4);
        for t in s.components() {
            assert!(t.free_vars().is_empty());
            assert!(t.has_mu());
        }
        let again = game_to_exprs(g.game(), &Guards::default()).unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn guard_aborts_large_unfoldings() {
        let g = crate::game::tests::example_game();
        let tiny = Guards {
            term_nodes: 5,
            ..Guards::default()
        };
        assert!(game_to_exprs(g.game(), &tiny).unwrap_err().is_resource());
    }

    #[test]
    fn shadowed_binders_point_at_the_innermost() {
        let g = expr_to_game(&sys("mu y . <1> (mu y . <2> y) /\\ y"));
        assert!(g.is_valid(), "{:?}", g.validate());
        // <1> node loops back to itself through the meet; <2> loops alone.
        assert!(g.edges().iter().any(|&(s, t)| s == t));
    }
}
