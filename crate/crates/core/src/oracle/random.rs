//! Seeded generators for games and terms.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::game::{Boundary, ClosedParityGame, Endpoint, OpenParityGame, Player, Position};
use crate::priority::Priority;
use crate::var::Var;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RandomGameParams {
    pub nodes: usize,
    pub max_priority: u32,
    /// Probability of each possible position-to-position edge.
    pub density: f64,
    pub entries: usize,
    pub exits: usize,
    /// Only allow edges from lower to higher position ids.
    pub acyclic: bool,
    pub seed: u64,
}

impl Default for RandomGameParams {
    fn default() -> Self {
        RandomGameParams {
            nodes: 6,
            max_priority: 4,
            density: 0.3,
            entries: 1,
            exits: 1,
            acyclic: false,
            seed: 0,
        }
    }
}

/// A valid game `(entries,0) → (exits,0)`; identical parameters give an
/// identical game.
pub fn random_game(params: &RandomGameParams) -> Result<OpenParityGame> {
    if params.max_priority < 2 {
        return Err(Error::Precondition(format!(
            "max priority must be at least 2, got {}",
            params.max_priority
        )));
    }
    if !(0.0..=1.0).contains(&params.density) {
        return Err(Error::Precondition(format!("density {} is not a probability", params.density)));
    }
    if params.nodes == 0 && params.entries != params.exits {
        return Err(Error::Precondition(format!(
            "a game without positions must wire {} entries to {} exits one to one",
            params.entries, params.exits
        )));
    }
    let mut rng = rng(params.seed);
    let n = params.nodes;
    let positions: Vec<Position> = (0..n)
        .map(|_| {
            let owner = if rng.gen_bool(0.5) { Player::Zero } else { Player::One };
            Position::new(owner, rng.gen_range(0..=params.max_priority))
        })
        .collect();
    let mut edges = Vec::new();
    for p in 0..n {
        let lo = if params.acyclic { p + 1 } else { 0 };
        for q in lo..n {
            if rng.gen_bool(params.density) {
                edges.push((Endpoint::Pos(p), Endpoint::Pos(q)));
            }
        }
    }
    for i in 1..=params.entries {
        let target = if n == 0 { Endpoint::Exit(i) } else { Endpoint::Pos(rng.gen_range(0..n)) };
        edges.push((Endpoint::Entry(i), target));
    }
    if n > 0 {
        for k in 1..=params.exits {
            edges.push((Endpoint::Pos(rng.gen_range(0..n)), Endpoint::Exit(k)));
        }
    }
    OpenParityGame::new(
        params.max_priority,
        Boundary::new(params.entries, 0),
        Boundary::new(params.exits, 0),
        positions,
        edges,
    )
}

/// A plain parity game with every position queried.
pub fn random_closed_game(nodes: usize, max_priority: u32, density: f64, seed: u64) -> Result<ClosedParityGame> {
    let mut rng = rng(seed);
    let positions: Vec<Position> = (0..nodes)
        .map(|_| {
            let owner = if rng.gen_bool(0.5) { Player::Zero } else { Player::One };
            Position::new(owner, rng.gen_range(0..=max_priority))
        })
        .collect();
    let succ: Vec<Vec<usize>> = (0..nodes)
        .map(|_| (0..nodes).filter(|_| rng.gen_bool(density)).collect())
        .collect();
    ClosedParityGame::from_graph(max_priority.max(2), positions, &succ)
}

/// Random terms over a fixed set of free variables.
#[derive(Clone, Debug)]
pub struct TermGen {
    pub vars: Vec<Var>,
    pub max_priority: u32,
    pub depth: usize,
    /// Allow `mu` binders; bound variables only occur under a priority.
    pub mu: bool,
}

impl TermGen {
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Expr {
        let mut bound = Vec::new();
        let mut fresh = 0;
        self.gen(rng, self.depth, &mut bound, &mut fresh)
    }

    fn leaf<R: Rng>(&self, rng: &mut R, bound: &[Var]) -> Expr {
        let roll = rng.gen_range(0..10);
        if roll < 3 && !bound.is_empty() {
            let y = bound.choose(rng).expect("non-empty").clone();
            return Expr::Pri(Priority(rng.gen_range(0..=self.max_priority)), Box::new(Expr::Var(y)));
        }
        if roll < 9 && !self.vars.is_empty() {
            return Expr::Var(self.vars.choose(rng).expect("non-empty").clone());
        }
        if rng.gen_bool(0.5) {
            Expr::Bot
        } else {
            Expr::Top
        }
    }

    fn gen<R: Rng>(&self, rng: &mut R, depth: usize, bound: &mut Vec<Var>, fresh: &mut usize) -> Expr {
        if depth == 0 {
            return self.leaf(rng, bound);
        }
        match rng.gen_range(0..20) {
            0..=4 => Expr::Pri(
                Priority(rng.gen_range(0..=self.max_priority)),
                Box::new(self.gen(rng, depth - 1, bound, fresh)),
            ),
            5..=9 => Expr::join(self.gen(rng, depth - 1, bound, fresh), self.gen(rng, depth - 1, bound, fresh)),
            10..=14 => Expr::meet(self.gen(rng, depth - 1, bound, fresh), self.gen(rng, depth - 1, bound, fresh)),
            15..=17 if self.mu => {
                *fresh += 1;
                let y = Var::new(format!("u{fresh}"));
                bound.push(y.clone());
                let body = self.gen(rng, depth - 1, bound, fresh);
                bound.pop();
                Expr::Mu(y, Box::new(body))
            }
            _ => self.leaf(rng, bound),
        }
    }
}
