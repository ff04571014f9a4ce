//! Fixpoint elimination and full normalisation of terms and game graphs.
//!
//! `mu x . B` with `B` in normal form is the game where Player 0 picks a
//! clause of `B` and Player 1 either leaves through an exit or, through `x`,
//! starts over. Only the largest priority seen so far matters, so the loop
//! is solved level by level, from the highest loop priority down to 0.

pub mod arena;

use std::collections::BTreeMap;

use crate::config::Guards;
use crate::error::{Error, Result};
use crate::expr::{Expr, ExprSystem};
use crate::game::{ClosedParityGame, Endpoint, OpenParityGame, Player};
use crate::nf::{Clause, FixpointEliminator, NormalForm, RewriteTrace, Rule, Walker};
use crate::priority::Priority;
use crate::var::Var;

/// Normal form of `mu x . body`, and the rule that justifies it: `F2` when
/// `x` does not occur, `E` for the literal parity-axiom shape, `LOOP-SOLVE`
/// otherwise.
pub fn eliminate_mu(x: &Var, body: &NormalForm, guards: &Guards) -> Result<(NormalForm, Rule)> {
    if !body.mentions(x) {
        return Ok((body.clone(), Rule::F2));
    }
    if let Some(nf) = parity_axiom(x, body) {
        return Ok((nf, Rule::E));
    }
    Ok((solve_levels(x, body, guards)?, Rule::LoopSolve))
}

/// `mu y . (s \/ (t /\ <p> y))` is `s \/ t` for even `p` and `s` for odd `p`.
fn parity_axiom(x: &Var, body: &NormalForm) -> Option<NormalForm> {
    let (looping, other): (Vec<&Clause>, Vec<&Clause>) = body.clauses().partition(|c| c.get(x).is_some());
    if looping.len() != 1 || other.len() > 1 {
        return None;
    }
    let p = looping[0].get(x)?;
    let s: NormalForm = other.into_iter().cloned().collect();
    if p.is_even() {
        Some(s.join(&NormalForm::single(looping[0].without(x))))
    } else {
        Some(s)
    }
}

/// `N(m)`: value of the loop when the largest priority recorded so far is
/// `m`. A clause whose loop priority `q` does not raise `m` repeats forever
/// if Player 1 keeps looping, so it wins iff `q` is even; otherwise the loop
/// continues at level `q`.
fn solve_levels(x: &Var, body: &NormalForm, guards: &Guards) -> Result<NormalForm> {
    let mut levels: Vec<Priority> = body.clauses().filter_map(|c| c.get(x)).collect();
    levels.push(Priority::ZERO);
    levels.sort();
    levels.dedup();
    let mut value: BTreeMap<Priority, NormalForm> = BTreeMap::new();
    for &m in levels.iter().rev() {
        let mut acc = NormalForm::bot();
        for c in body.clauses() {
            let rest = NormalForm::single(c.without(x).lift(m));
            let term = match c.get(x) {
                None => rest,
                Some(q) if q <= m => {
                    if q.is_even() {
                        rest
                    } else {
                        continue;
                    }
                }
                Some(q) => rest.meet_checked(&value[&q], guards)?,
            };
            acc = acc.join(&term);
            guards.check_clauses(acc.len())?;
        }
        value.insert(m, acc);
    }
    Ok(value.remove(&Priority::ZERO).expect("level 0 is always solved"))
}

struct Levels<'a> {
    guards: &'a Guards,
}

impl FixpointEliminator for Levels<'_> {
    fn eliminate(&mut self, x: &Var, body: &NormalForm) -> Result<(NormalForm, Rule)> {
        eliminate_mu(x, body, self.guards)
    }
}

/// Normal form of any term, with a trace over a single slot.
pub fn normalize(t: &Expr, guards: &Guards) -> Result<(NormalForm, RewriteTrace)> {
    let mut trace = RewriteTrace::new();
    let nf = Walker::new(&mut Levels { guards }, guards, Some(&mut trace), 0).run(t)?;
    Ok((nf, trace))
}

/// Normal forms of every component; component `i` is slot `i` of the trace.
pub fn normalize_system(system: &ExprSystem, guards: &Guards) -> Result<(Vec<NormalForm>, RewriteTrace)> {
    let mut trace = RewriteTrace::new();
    let mut out = Vec::with_capacity(system.components().len());
    for (i, t) in system.components().iter().enumerate() {
        out.push(Walker::new(&mut Levels { guards }, guards, Some(&mut trace), i).run(t)?);
    }
    Ok((out, trace))
}

/// The normal form of every entry of a game, together with the certificate
/// that produced it.
#[derive(Clone, Debug)]
pub struct GameNormalForm {
    /// One normal form per entry, over exit variables `x1, x2, ...`.
    pub entries: Vec<NormalForm>,
    /// Initial slots: one per entry (`y{p}` or `x{k}`), then one equation
    /// `<prio> (successors)` per position.
    pub initial: Vec<Expr>,
    pub trace: RewriteTrace,
}

impl GameNormalForm {
    pub fn verify_trace(&self) -> Result<()> {
        self.trace.verify(&self.initial, &self.entries)
    }
}

/// Normalise a game graph by solving its position equations one at a time:
/// each position's loop is eliminated and the result substituted into the
/// later positions, then everything is substituted back.
pub fn normalize_game(game: &OpenParityGame, guards: &Guards) -> Result<GameNormalForm> {
    let mut trace = RewriteTrace::new();
    let (entries, initial) = eliminate(game, guards, Some(&mut trace))?;
    Ok(GameNormalForm { entries, initial, trace })
}

/// [`normalize_game`] without recording a trace.
pub fn game_semantics(game: &OpenParityGame, guards: &Guards) -> Result<Vec<NormalForm>> {
    Ok(eliminate(game, guards, None)?.0)
}

/// Winner at every entry of a closed game, read off its normal forms.
pub fn solve_closed(game: &ClosedParityGame, guards: &Guards) -> Result<Vec<Player>> {
    game_semantics(game.game(), guards)?
        .into_iter()
        .map(|nf| winner_of(&nf))
        .collect()
}

/// `Top` is a win for Player 0, `Bot` for Player 1.
pub fn winner_of(nf: &NormalForm) -> Result<Player> {
    if nf.is_top() {
        Ok(Player::Zero)
    } else if nf.is_bot() {
        Ok(Player::One)
    } else {
        Err(Error::Precondition(format!("normal form {nf} still has exits")))
    }
}

/// The equation `y{p} = <prio> (successors)` of position `p`.
pub(crate) fn position_equation(game: &OpenParityGame, p: usize, succ: &[Endpoint]) -> Expr {
    let pos = &game.positions()[p];
    let vars = succ.iter().map(|t| match *t {
        Endpoint::Pos(q) => Expr::Var(Var::position(q)),
        Endpoint::Exit(k) => Expr::Var(Var::exit(k)),
        Endpoint::Entry(_) => unreachable!("entries are never targets"),
    });
    let body = match pos.owner {
        Player::Zero => Expr::join_all(vars),
        Player::One => Expr::meet_all(vars),
    };
    Expr::Pri(pos.priority, Box::new(body))
}

/// Solve the equations `vars[i] = eqs[i]` together: each variable's loop is
/// eliminated in turn and its solution substituted into the later
/// equations, then solutions are substituted back into the earlier ones.
pub fn solve_equations(vars: &[Var], eqs: Vec<NormalForm>, guards: &Guards) -> Result<Vec<NormalForm>> {
    gauss(vars, eqs, guards, &mut |_, _, _, _| {})
}

type Recorder<'a> = dyn FnMut(Rule, usize, &NormalForm, &NormalForm) + 'a;

fn gauss(vars: &[Var], eqs: Vec<NormalForm>, guards: &Guards, record: &mut Recorder<'_>) -> Result<Vec<NormalForm>> {
    let mut eqs: Vec<Option<NormalForm>> = eqs.into_iter().map(Some).collect();
    for (i, y) in vars.iter().enumerate() {
        let body = eqs[i].take().expect("present");
        let (solved, rule) = eliminate_mu(y, &body, guards)?;
        record(rule, i, &body, &solved);
        for (j, slot) in eqs.iter_mut().enumerate().skip(i + 1) {
            let f = slot.as_ref().expect("present");
            if f.mentions(y) {
                let g = f.substitute_checked(y, &solved, guards)?;
                record(Rule::Subst, j, f, &g);
                *slot = Some(g);
            }
        }
        eqs[i] = Some(solved);
    }
    for i in (0..vars.len()).rev() {
        let mut f = eqs[i].take().expect("present");
        for (j, y) in vars.iter().enumerate().skip(i + 1) {
            if f.mentions(y) {
                let g = f.substitute_checked(y, eqs[j].as_ref().expect("solved"), guards)?;
                record(Rule::Subst, i, &f, &g);
                f = g;
            }
        }
        eqs[i] = Some(f);
    }
    Ok(eqs.into_iter().map(|f| f.expect("present")).collect())
}

fn eliminate(
    game: &OpenParityGame,
    guards: &Guards,
    mut trace: Option<&mut RewriteTrace>,
) -> Result<(Vec<NormalForm>, Vec<Expr>)> {
    let violations = game.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidGame(violations));
    }
    let n_entries = game.num_entries();
    let succ = game.successors();
    let targets: Vec<Endpoint> = (1..=n_entries)
        .map(|i| game.entry_target(i).expect("validated"))
        .collect();
    let mut initial: Vec<Expr> = targets
        .iter()
        .map(|t| match *t {
            Endpoint::Pos(p) => Expr::Var(Var::position(p)),
            Endpoint::Exit(k) => Expr::Var(Var::exit(k)),
            Endpoint::Entry(_) => unreachable!(),
        })
        .collect();
    initial.extend((0..game.num_positions()).map(|p| position_equation(game, p, &succ[p])));
    let slot = |p: usize| n_entries + p;

    let reach = game.reachable_positions();
    let mut eqs = Vec::with_capacity(reach.len());
    let mut levels = Levels { guards };
    for &p in &reach {
        let mut walker = Walker::new(&mut levels, guards, trace.as_deref_mut(), slot(p));
        eqs.push(walker.run(&initial[slot(p)])?);
    }
    let vars: Vec<Var> = reach.iter().map(|&p| Var::position(p)).collect();
    let solved = {
        let mut record = |rule: Rule, i: usize, before: &NormalForm, after: &NormalForm| {
            if let Some(t) = trace.as_deref_mut() {
                push_step(t, rule, slot(reach[i]), &before.to_expr(), after);
            }
        };
        gauss(&vars, eqs, guards, &mut record)?
    };

    let mut entries = Vec::with_capacity(n_entries);
    for (i, t) in targets.iter().enumerate() {
        let nf = match *t {
            Endpoint::Pos(p) => {
                let k = reach.binary_search(&p).expect("entry targets are reachable");
                if let Some(t) = trace.as_deref_mut() {
                    push_step(t, Rule::Subst, i, &initial[i], &solved[k]);
                }
                solved[k].clone()
            }
            Endpoint::Exit(k) => NormalForm::var(Var::exit(k)),
            Endpoint::Entry(_) => unreachable!(),
        };
        entries.push(nf);
    }
    Ok((entries, initial))
}

fn push_step(trace: &mut RewriteTrace, rule: Rule, slot: usize, before: &Expr, after: &NormalForm) {
    let after = after.to_expr();
    if !before.alpha_eq(&after) {
        trace.push(rule, slot, &[], before, &after);
    }
}

/// Candidate set used by the certification route: the normal form of
/// `mu x . body` rebuilt from scratch by solving arenas.
pub fn certify_mu(x: &Var, body: &NormalForm, guards: &Guards) -> Result<NormalForm> {
    arena::solve_by_arenas(x, body, guards)
}
