//! Isomorphism of open games with the boundary held fixed.
//!
//! Positions may be renamed; entries and exits keep their indices. Colour
//! refinement narrows the candidates, backtracking finishes the match.
//! Names and the priority bound are ignored.

use std::collections::{BTreeSet, HashMap};

use crate::game::{Endpoint, OpenParityGame};

/// A bijection `a`-position → `b`-position preserving owners, priorities,
/// edges and boundary wiring, if there is one.
pub fn find_isomorphism(a: &OpenParityGame, b: &OpenParityGame) -> Option<Vec<usize>> {
    if a.domain() != b.domain() || a.codomain() != b.codomain() || a.num_positions() != b.num_positions() {
        return None;
    }
    if a.edges().len() != b.edges().len() {
        return None;
    }
    let direct = |g: &OpenParityGame| -> BTreeSet<(Endpoint, Endpoint)> {
        g.edges()
            .iter()
            .filter(|(s, t)| !matches!(s, Endpoint::Pos(_)) && !matches!(t, Endpoint::Pos(_)))
            .copied()
            .collect()
    };
    if direct(a) != direct(b) {
        return None;
    }
    let (ca, cb) = refine(a, b);
    let n = a.num_positions();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&p| cb.iter().filter(|&&c| c == ca[p]).count());
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let b_edges = b.edges();
    let a_edges: Vec<_> = a.edges().iter().copied().collect();
    if extend(0, &order, &ca, &cb, &mut map, &mut used, &a_edges, b_edges) {
        Some(map)
    } else {
        None
    }
}

pub fn is_isomorphic(a: &OpenParityGame, b: &OpenParityGame) -> bool {
    find_isomorphism(a, b).is_some()
}

#[allow(clippy::too_many_arguments)]
fn extend(
    depth: usize,
    order: &[usize],
    ca: &[u64],
    cb: &[u64],
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    a_edges: &[(Endpoint, Endpoint)],
    b_edges: &BTreeSet<(Endpoint, Endpoint)>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let p = order[depth];
    for q in 0..cb.len() {
        if used[q] || cb[q] != ca[p] {
            continue;
        }
        map[p] = q;
        used[q] = true;
        if consistent(map, a_edges, b_edges) && extend(depth + 1, order, ca, cb, map, used, a_edges, b_edges) {
            return true;
        }
        used[q] = false;
        map[p] = usize::MAX;
    }
    false
}

/// Every `a` edge whose endpoints are already mapped exists in `b`.
fn consistent(map: &[usize], a_edges: &[(Endpoint, Endpoint)], b_edges: &BTreeSet<(Endpoint, Endpoint)>) -> bool {
    let image = |e: Endpoint| match e {
        Endpoint::Pos(p) if map[p] == usize::MAX => None,
        Endpoint::Pos(p) => Some(Endpoint::Pos(map[p])),
        other => Some(other),
    };
    a_edges.iter().all(|&(s, t)| match (image(s), image(t)) {
        (Some(s), Some(t)) => b_edges.contains(&(s, t)),
        _ => true,
    })
}

/// Stable colours for the positions of both games, computed jointly so that
/// equal colours mean the same thing on both sides.
fn refine(a: &OpenParityGame, b: &OpenParityGame) -> (Vec<u64>, Vec<u64>) {
    let base = |g: &OpenParityGame| -> Vec<String> {
        let mut keys: Vec<String> = g
            .positions()
            .iter()
            .map(|p| format!("{}:{}", p.owner.index(), p.priority.value()))
            .collect();
        for &(s, t) in g.edges() {
            match (s, t) {
                (Endpoint::Entry(i), Endpoint::Pos(p)) => keys[p].push_str(&format!(" <{i}")),
                (Endpoint::Pos(p), Endpoint::Exit(k)) => keys[p].push_str(&format!(" >{k}")),
                _ => {}
            }
        }
        keys
    };
    let mut ids: HashMap<String, u64> = HashMap::new();
    let mut intern = |k: String| -> u64 {
        let next = ids.len() as u64;
        *ids.entry(k).or_insert(next)
    };
    let (ka, kb) = (base(a), base(b));
    let mut ca: Vec<u64> = ka.into_iter().map(&mut intern).collect();
    let mut cb: Vec<u64> = kb.into_iter().map(&mut intern).collect();
    let adjacency = |g: &OpenParityGame| -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let mut out = vec![Vec::new(); g.num_positions()];
        let mut inc = vec![Vec::new(); g.num_positions()];
        for &(s, t) in g.edges() {
            if let (Endpoint::Pos(p), Endpoint::Pos(q)) = (s, t) {
                out[p].push(q);
                inc[q].push(p);
            }
        }
        (out, inc)
    };
    let (adj_a, adj_b) = (adjacency(a), adjacency(b));
    loop {
        let step = |c: &[u64], (out, inc): &(Vec<Vec<usize>>, Vec<Vec<usize>>)| -> Vec<String> {
            (0..c.len())
                .map(|p| {
                    let mut o: Vec<u64> = out[p].iter().map(|&q| c[q]).collect();
                    let mut i: Vec<u64> = inc[p].iter().map(|&q| c[q]).collect();
                    o.sort_unstable();
                    i.sort_unstable();
                    format!("{} {o:?} {i:?}", c[p])
                })
                .collect()
        };
        let (ka, kb) = (step(&ca, &adj_a), step(&cb, &adj_b));
        let mut fresh: HashMap<String, u64> = HashMap::new();
        let mut intern = |k: String| -> u64 {
            let next = fresh.len() as u64;
            *fresh.entry(k).or_insert(next)
        };
        let na: Vec<u64> = ka.into_iter().map(&mut intern).collect();
        let nb: Vec<u64> = kb.into_iter().map(&mut intern).collect();
        let classes = |c: &[u64]| c.iter().collect::<BTreeSet<_>>().len();
        let stable = classes(&na) == classes(&ca) && classes(&nb) == classes(&cb);
        ca = na;
        cb = nb;
        if stable {
            return (ca, cb);
        }
    }
}
