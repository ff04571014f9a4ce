//! Zielonka's recursive algorithm.

use crate::game::Player;

use super::Graph;

/// Winner of every node. Dead ends are first given an edge to a sink won by
/// the stuck player's opponent.
pub fn solve_graph(g: &Graph) -> Vec<Player> {
    let n = g.len();
    let top = g.priority.iter().copied().max().unwrap_or(0) + 2;
    let (even_top, odd_top) = if top % 2 == 0 { (top, top + 1) } else { (top + 1, top) };
    let mut ext = g.clone();
    let sink0 = n;
    let sink1 = n + 1;
    ext.owner.extend([Player::Zero, Player::Zero]);
    ext.priority.extend([even_top, odd_top]);
    ext.succ.extend([vec![sink0], vec![sink1]]);
    for v in 0..n {
        if ext.succ[v].is_empty() {
            ext.succ[v].push(match g.owner[v] {
                Player::Zero => sink1,
                Player::One => sink0,
            });
        }
    }
    let pred = predecessors(&ext);
    let alive = vec![true; n + 2];
    let (w0, _) = solve(&ext, &pred, &alive);
    (0..n)
        .map(|v| if w0[v] { Player::Zero } else { Player::One })
        .collect()
}

fn predecessors(g: &Graph) -> Vec<Vec<usize>> {
    let mut pred = vec![Vec::new(); g.len()];
    for (v, succ) in g.succ.iter().enumerate() {
        for &w in succ {
            pred[w].push(v);
        }
    }
    pred
}

/// Nodes of `alive` from which `player` can force a visit to `target`.
fn attractor(g: &Graph, pred: &[Vec<usize>], alive: &[bool], target: &[bool], player: Player) -> Vec<bool> {
    let mut attr = target.to_vec();
    let mut remaining: Vec<usize> = (0..g.len())
        .map(|v| g.succ[v].iter().filter(|&&w| alive[w]).count())
        .collect();
    let mut queue: Vec<usize> = (0..g.len()).filter(|&v| attr[v]).collect();
    while let Some(w) = queue.pop() {
        for &v in &pred[w] {
            if !alive[v] || attr[v] {
                continue;
            }
            let pulled = if g.owner[v] == player {
                true
            } else {
                remaining[v] -= 1;
                remaining[v] == 0
            };
            if pulled {
                attr[v] = true;
                queue.push(v);
            }
        }
    }
    attr
}

fn solve(g: &Graph, pred: &[Vec<usize>], alive: &[bool]) -> (Vec<bool>, Vec<bool>) {
    let n = g.len();
    let Some(d) = (0..n).filter(|&v| alive[v]).map(|v| g.priority[v]).max() else {
        return (vec![false; n], vec![false; n]);
    };
    let i = if d % 2 == 0 { Player::Zero } else { Player::One };
    let top: Vec<bool> = (0..n).map(|v| alive[v] && g.priority[v] == d).collect();
    let a = attractor(g, pred, alive, &top, i);
    let rest: Vec<bool> = (0..n).map(|v| alive[v] && !a[v]).collect();
    let (w0, w1) = solve(g, pred, &rest);
    let wo = match i {
        Player::Zero => w1,
        Player::One => w0,
    };
    if !wo.iter().any(|&b| b) {
        let all = alive.to_vec();
        return match i {
            Player::Zero => (all, vec![false; n]),
            Player::One => (vec![false; n], all),
        };
    }
    let b = attractor(g, pred, alive, &wo, i.opponent());
    let rest: Vec<bool> = (0..n).map(|v| alive[v] && !b[v]).collect();
    let (w0, w1) = solve(g, pred, &rest);
    match i {
        Player::Zero => (w0, (0..n).map(|v| w1[v] || b[v]).collect()),
        Player::One => ((0..n).map(|v| w0[v] || b[v]).collect(), w1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(nodes: &[(Player, u32, &[usize])]) -> Graph {
        Graph {
            owner: nodes.iter().map(|n| n.0).collect(),
            priority: nodes.iter().map(|n| n.1).collect(),
            succ: nodes.iter().map(|n| n.2.to_vec()).collect(),
        }
    }

    #[test]
    fn self_loops() {
        assert_eq!(solve_graph(&graph(&[(Player::One, 2, &[0])])), [Player::Zero]);
        assert_eq!(solve_graph(&graph(&[(Player::Zero, 3, &[0])])), [Player::One]);
    }

    #[test]
    fn dead_ends_lose_for_their_owner() {
        let g = graph(&[(Player::Zero, 2, &[]), (Player::One, 1, &[]), (Player::Zero, 0, &[0, 1])]);
        assert_eq!(solve_graph(&g), [Player::One, Player::Zero, Player::Zero]);
    }

    #[test]
    fn example_game() {
        let g = graph(&[
            (Player::Zero, 4, &[1, 2]),
            (Player::One, 1, &[0]),
            (Player::Zero, 3, &[3]),
            (Player::One, 2, &[2, 0, 1]),
        ]);
        assert_eq!(solve_graph(&g), [Player::Zero, Player::Zero, Player::One, Player::One]);
    }
}
