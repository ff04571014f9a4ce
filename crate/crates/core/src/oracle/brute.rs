//! Exhaustive search over positional strategy pairs, for tiny games.

use crate::game::Player;

use super::Graph;

/// Winner of the play that both players' positional choices force from
/// `start`: a dead end loses for its owner, a cycle is won by the parity of
/// its largest priority.
pub fn lasso_winner(g: &Graph, choice: &[Option<usize>], start: usize) -> Player {
    let mut seen = vec![usize::MAX; g.len()];
    let mut path = Vec::new();
    let mut v = start;
    loop {
        if seen[v] != usize::MAX {
            let top = path[seen[v]..].iter().map(|&u| g.priority[u]).max().unwrap_or(0);
            return if top % 2 == 0 { Player::Zero } else { Player::One };
        }
        seen[v] = path.len();
        path.push(v);
        match choice[v] {
            Some(w) => v = w,
            None => return g.owner[v].opponent(),
        }
    }
}

/// Winner of every node: Player 0 wins `v` iff some positional strategy of
/// hers beats every positional strategy of Player 1 from `v`.
pub fn brute_force(g: &Graph) -> Vec<Player> {
    let n = g.len();
    let mine = |p: Player| -> Vec<usize> { (0..n).filter(|&v| g.owner[v] == p && !g.succ[v].is_empty()).collect() };
    let (zero, one) = (mine(Player::Zero), mine(Player::One));
    let mut wins = vec![false; n];
    let mut s0 = Odometer::new(zero.len());
    loop {
        let mut beats_all = vec![true; n];
        let mut s1 = Odometer::new(one.len());
        loop {
            let mut choice: Vec<Option<usize>> = vec![None; n];
            s0.fill(g, &zero, &mut choice);
            s1.fill(g, &one, &mut choice);
            for (v, b) in beats_all.iter_mut().enumerate() {
                if *b && lasso_winner(g, &choice, v) == Player::One {
                    *b = false;
                }
            }
            if !s1.advance(g, &one) {
                break;
            }
        }
        for v in 0..n {
            wins[v] |= beats_all[v];
        }
        if !s0.advance(g, &zero) {
            break;
        }
    }
    wins.into_iter()
        .map(|w| if w { Player::Zero } else { Player::One })
        .collect()
}

struct Odometer {
    digits: Vec<usize>,
}

impl Odometer {
    fn new(len: usize) -> Self {
        Odometer { digits: vec![0; len] }
    }

    fn fill(&self, g: &Graph, nodes: &[usize], choice: &mut [Option<usize>]) {
        for (i, &v) in nodes.iter().enumerate() {
            choice[v] = Some(g.succ[v][self.digits[i]]);
        }
    }

    fn advance(&mut self, g: &Graph, nodes: &[usize]) -> bool {
        for (i, &v) in nodes.iter().enumerate() {
            self.digits[i] += 1;
            if self.digits[i] < g.succ[v].len() {
                return true;
            }
            self.digits[i] = 0;
        }
        false
    }
}
