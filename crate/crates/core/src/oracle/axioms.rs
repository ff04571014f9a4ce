//! Axiom harness.
//!
//! Each axiom is built as a pair of games from the elementary generators.
//! Both sides are plugged into the same random filler terms, normalised, and
//! closed by the same random contexts; the normal forms and the Zielonka
//! winners must agree. Axioms that read naturally as terms are also checked
//! at the term level. The wire-bending axioms have no positions at all and
//! are checked as plain graph identities.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::config::Guards;
use crate::error::{Error, Result};
use crate::expr::{expr_to_game, parse_expr, Expr, ExprSystem};
use crate::fixpoint::{game_semantics, normalize, solve_closed};
use crate::format::game_to_json;
use crate::game::{
    cap, choice, compose, cup, empty, identity, lose, merge, priority, start, swap, tensor, Boundary, OpenParityGame,
    Player,
};
use crate::iso::is_isomorphic;
use crate::nf::NormalForm;
use crate::oracle::context::ClosingContext;
use crate::oracle::random::{random_closed_game, random_game, rng, RandomGameParams, TermGen};
use crate::oracle::semantics::enumerate_semantics_acyclic;
use crate::oracle::{brute_force_closed, zielonka};
use crate::var::Var;

const CONTEXTS: usize = 20;
const FILLER_VARS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomId {
    A(u8),
    B(u8),
    C(u8),
    D(u8),
    EEven,
    EOdd,
}

impl AxiomId {
    /// Every axiom, wire-bending ones first.
    pub fn all() -> Vec<AxiomId> {
        let mut out: Vec<AxiomId> = (1..=3).map(AxiomId::A).collect();
        out.extend((1..=23).map(AxiomId::B));
        out.extend((1..=4).map(AxiomId::C));
        out.extend((1..=4).map(AxiomId::D));
        out.push(AxiomId::EEven);
        out.push(AxiomId::EOdd);
        out
    }

    fn in_range(self) -> bool {
        match self {
            AxiomId::A(n) => (1..=3).contains(&n),
            AxiomId::B(n) => (1..=23).contains(&n),
            AxiomId::C(n) | AxiomId::D(n) => (1..=4).contains(&n),
            AxiomId::EEven | AxiomId::EOdd => true,
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomId::A(n) => write!(f, "A{n}"),
            AxiomId::B(n) => write!(f, "B{n}"),
            AxiomId::C(n) => write!(f, "C{n}"),
            AxiomId::D(n) => write!(f, "D{n}"),
            AxiomId::EEven => f.write_str("E-even"),
            AxiomId::EOdd => f.write_str("E-odd"),
        }
    }
}

impl FromStr for AxiomId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("unknown axiom {s:?}"));
        let id = match s {
            "E-even" => AxiomId::EEven,
            "E-odd" => AxiomId::EOdd,
            _ => {
                let (family, n) = s.split_at(1.min(s.len()));
                let n: u8 = n.parse().map_err(|_| bad())?;
                match family {
                    "A" => AxiomId::A(n),
                    "B" => AxiomId::B(n),
                    "C" => AxiomId::C(n),
                    "D" => AxiomId::D(n),
                    _ => return Err(bad()),
                }
            }
        };
        if id.in_range() {
            Ok(id)
        } else {
            Err(bad())
        }
    }
}

/// A failing instance: both filled sides and what they normalised to.
#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub sample: usize,
    pub reason: String,
    pub lhs_game: serde_json::Value,
    pub rhs_game: serde_json::Value,
    pub lhs_nf: Vec<serde_json::Value>,
    pub rhs_nf: Vec<serde_json::Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub axiom: String,
    pub samples: usize,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

/// One side of an axiom at both levels. Terms are over `a1, a2, ...`, one
/// per exit of the game.
struct Side {
    game: OpenParityGame,
    terms: Option<Vec<Expr>>,
}

struct Instance {
    pairs: Vec<(Side, Side)>,
}

fn g(side: OpenParityGame) -> Side {
    Side { game: side, terms: None }
}

fn gt(side: OpenParityGame, terms: &[&str]) -> Result<Side> {
    let terms = terms.iter().map(|t| parse_expr(t)).collect::<Result<Vec<_>>>()?;
    Ok(Side { game: side, terms: Some(terms) })
}

fn c(a: &OpenParityGame, b: &OpenParityGame) -> Result<OpenParityGame> {
    compose(a, b)
}

fn t(a: &OpenParityGame, b: &OpenParityGame) -> OpenParityGame {
    tensor(a, b)
}

fn id(n: usize) -> OpenParityGame {
    identity(Boundary::new(n, 0))
}

fn sw() -> OpenParityGame {
    swap(Boundary::new(1, 0), Boundary::new(1, 0))
}

/// `a1 ⊗ σ ⊗ a1`, the middle crossing of four wires.
fn cross() -> OpenParityGame {
    t(&t(&id(1), &sw()), &id(1))
}

/// Both sides of an axiom for the priorities `k`, `l`.
fn instance(axiom: AxiomId, k: u32, l: u32) -> Result<Instance> {
    let (c0, c1) = (choice(Player::Zero), choice(Player::One));
    let (l0, l1) = (lose(Player::Zero), lose(Player::One));
    let (m, s) = (merge(), start());
    let pk = priority(k);
    let one = |a: Side, b: Side| Instance { pairs: vec![(a, b)] };
    let pk_ = format!("<{k}>");
    Ok(match axiom {
        AxiomId::A(1) => one(g(c(&t(&id(1), &cup()), &t(&cap(), &id(1)))?), g(id(1))),
        AxiomId::A(2) => {
            let left = identity(Boundary::new(0, 1));
            one(g(c(&t(&cup(), &left), &t(&left, &cap()))?), g(left))
        }
        AxiomId::A(3) => one(g(c(&cup(), &cap())?), g(empty())),
        AxiomId::B(1) => one(g(c(&t(&id(1), &m), &m)?), g(c(&t(&m, &id(1)), &m)?)),
        AxiomId::B(2) => one(g(c(&sw(), &m)?), g(m)),
        AxiomId::B(3) => Instance {
            pairs: vec![
                (g(c(&t(&id(1), &s), &m)?), g(id(1))),
                (g(c(&t(&s, &id(1)), &m)?), g(id(1))),
            ],
        },
        AxiomId::B(4) => one(
            gt(c(&c0, &t(&c0, &id(1)))?, &["(a1 \\/ a2) \\/ a3"])?,
            gt(c(&c0, &t(&id(1), &c0))?, &["a1 \\/ (a2 \\/ a3)"])?,
        ),
        AxiomId::B(5) => one(gt(c(&c0, &sw())?, &["a2 \\/ a1"])?, gt(c0, &["a1 \\/ a2"])?),
        AxiomId::B(6) => Instance {
            pairs: vec![
                (gt(c(&c0, &t(&l0, &id(1)))?, &["bot \\/ a1"])?, gt(id(1), &["a1"])?),
                (gt(c(&c0, &t(&id(1), &l0))?, &["a1 \\/ bot"])?, gt(id(1), &["a1"])?),
            ],
        },
        AxiomId::B(7) => one(
            gt(c(&c1, &t(&c1, &id(1)))?, &["(a1 /\\ a2) /\\ a3"])?,
            gt(c(&c1, &t(&id(1), &c1))?, &["a1 /\\ (a2 /\\ a3)"])?,
        ),
        AxiomId::B(8) => one(gt(c(&c1, &sw())?, &["a2 /\\ a1"])?, gt(c1, &["a1 /\\ a2"])?),
        AxiomId::B(9) => Instance {
            pairs: vec![
                (gt(c(&c1, &t(&l1, &id(1)))?, &["top /\\ a1"])?, gt(id(1), &["a1"])?),
                (gt(c(&c1, &t(&id(1), &l1))?, &["a1 /\\ top"])?, gt(id(1), &["a1"])?),
            ],
        },
        AxiomId::B(10) => one(g(c(&m, &c0)?), g(c(&c(&t(&c0, &c0), &cross())?, &t(&m, &m))?)),
        AxiomId::B(11) => one(g(c(&m, &l0)?), g(t(&l0, &l0))),
        AxiomId::B(12) => one(g(c(&s, &c0)?), g(t(&s, &s))),
        AxiomId::B(13) => one(g(t(&s, &s)), g(c(&s, &c1)?)),
        AxiomId::B(14) => one(g(c(&s, &l0)?), g(empty())),
        AxiomId::B(15) => one(g(empty()), g(c(&s, &l1)?)),
        AxiomId::B(16) => one(gt(c(&c0, &m)?, &["a1 \\/ a1"])?, gt(id(1), &["a1"])?),
        AxiomId::B(17) => one(gt(id(1), &["a1"])?, gt(c(&c1, &m)?, &["a1 /\\ a1"])?),
        AxiomId::B(18) => one(g(c(&m, &c1)?), g(c(&c(&t(&c1, &c1), &cross())?, &t(&m, &m))?)),
        AxiomId::B(19) => one(g(c(&m, &l1)?), g(t(&l1, &l1))),
        AxiomId::B(20) => one(
            gt(c(&c0, &t(&c1, &id(1)))?, &["(a1 /\\ a2) \\/ a3"])?,
            gt(
                c(&c(&c(&c1, &t(&c0, &c0))?, &cross())?, &t(&id(2), &m))?,
                &["(a1 \\/ a3) /\\ (a2 \\/ a3)"],
            )?,
        ),
        AxiomId::B(21) => one(gt(c(&c0, &t(&l1, &id(1)))?, &["top \\/ a1"])?, gt(c(&l1, &s)?, &["top"])?),
        AxiomId::B(22) => one(
            gt(c(&c1, &t(&c0, &id(1)))?, &["(a1 \\/ a2) /\\ a3"])?,
            gt(
                c(&c(&c(&c0, &t(&c1, &c1))?, &cross())?, &t(&id(2), &m))?,
                &["(a1 /\\ a3) \\/ (a2 /\\ a3)"],
            )?,
        ),
        AxiomId::B(23) => one(gt(c(&c1, &t(&l0, &id(1)))?, &["bot /\\ a1"])?, gt(c(&l0, &s)?, &["bot"])?),
        AxiomId::C(1) => one(g(c(&t(&pk, &pk), &m)?), g(c(&m, &pk)?)),
        AxiomId::C(2) => one(g(c(&s, &pk)?), g(s)),
        AxiomId::C(3) => one(
            gt(c(&pk, &priority(l))?, &[&format!("{pk_} <{l}> a1")])?,
            gt(priority(k.max(l)), &[&format!("<{}> a1", k.max(l))])?,
        ),
        AxiomId::C(4) => one(gt(priority(0), &["<0> a1"])?, gt(id(1), &["a1"])?),
        AxiomId::D(1) => one(
            gt(c(&pk, &c0)?, &[&format!("{pk_} (a1 \\/ a2)")])?,
            gt(c(&c0, &t(&pk, &pk))?, &[&format!("{pk_} a1 \\/ {pk_} a2")])?,
        ),
        AxiomId::D(2) => one(gt(c(&pk, &l0)?, &[&format!("{pk_} bot")])?, gt(l0, &["bot"])?),
        AxiomId::D(3) => one(
            gt(c(&pk, &c1)?, &[&format!("{pk_} (a1 /\\ a2)")])?,
            gt(c(&c1, &t(&pk, &pk))?, &[&format!("{pk_} a1 /\\ {pk_} a2")])?,
        ),
        AxiomId::D(4) => one(gt(c(&pk, &l1)?, &[&format!("{pk_} top")])?, gt(l1, &["top"])?),
        AxiomId::EEven | AxiomId::EOdd => {
            let lhs = format!("mu y . a1 \\/ (a2 /\\ {pk_} y)");
            let rhs = if k.is_multiple_of(2) { "a1 \\/ a2" } else { "a1" };
            one(term_side(&lhs, 2)?, term_side(rhs, 2)?)
        }
        other => return Err(Error::Precondition(format!("unknown axiom {other}"))),
    })
}

/// A side given only as a term over `a1..an`, with its game translated.
fn term_side(text: &str, exits: usize) -> Result<Side> {
    let term = parse_expr(text)?;
    let vars: Vec<Var> = (1..=exits).map(filler_slot).collect();
    let game = expr_to_game(&ExprSystem::new(vars, vec![term.clone()])?);
    Ok(Side { game, terms: Some(vec![term]) })
}

fn filler_slot(i: usize) -> Var {
    Var::new(format!("a{i}"))
}

/// Axioms whose side priority must have a given parity.
fn draw_priorities<R: Rng>(axiom: AxiomId, rng: &mut R, max_p: u32) -> (u32, u32) {
    let any = rng.gen_range(0..=max_p);
    let k = match axiom {
        AxiomId::EEven => 2 * rng.gen_range(0..=max_p / 2),
        AxiomId::EOdd => 2 * rng.gen_range(0..=(max_p.max(1) - 1) / 2) + 1,
        _ => any,
    };
    (k, rng.gen_range(0..=max_p))
}

/// Instantiate `axiom` `samples` times and compare both sides.
pub fn check_axiom(axiom: AxiomId, samples: usize, seed: u64, max_p: u32) -> AxiomReport {
    let guards = Guards::default();
    let mut rng = rng(seed);
    let fill = TermGen {
        vars: (1..=FILLER_VARS).map(Var::exit).collect(),
        max_priority: max_p,
        depth: 2,
        mu: true,
    };
    let report = |counterexample: Option<Counterexample>| AxiomReport {
        axiom: axiom.to_string(),
        samples,
        passed: counterexample.is_none(),
        counterexample,
    };
    for sample in 0..samples {
        let (k, l) = draw_priorities(axiom, &mut rng, max_p);
        let inst = match instance(axiom, k, l) {
            Ok(inst) => inst,
            Err(e) => {
                return report(Some(Counterexample {
                    sample,
                    reason: format!("could not build the instance: {e}"),
                    lhs_game: serde_json::Value::Null,
                    rhs_game: serde_json::Value::Null,
                    lhs_nf: Vec::new(),
                    rhs_nf: Vec::new(),
                }))
            }
        };
        for (lhs, rhs) in &inst.pairs {
            if let AxiomId::A(_) = axiom {
                if !is_isomorphic(&lhs.game, &rhs.game) {
                    return report(Some(counterexample(sample, "the two wirings differ", &lhs.game, &rhs.game, &[], &[])));
                }
                continue;
            }
            let fillers: Vec<Expr> = (0..lhs.game.codomain().rightward).map(|_| fill.sample(&mut rng)).collect();
            if let Err(cx) = compare(sample, lhs, rhs, &fillers, &mut rng, max_p, &guards) {
                return report(Some(*cx));
            }
        }
    }
    report(None)
}

fn counterexample(
    sample: usize,
    reason: impl Into<String>,
    lhs: &OpenParityGame,
    rhs: &OpenParityGame,
    lhs_nf: &[NormalForm],
    rhs_nf: &[NormalForm],
) -> Counterexample {
    let game = |g: &OpenParityGame| serde_json::from_str(&game_to_json(g)).expect("our own JSON parses");
    let nfs = |v: &[NormalForm]| v.iter().map(|n| serde_json::from_str(&n.to_json()).expect("our own JSON parses")).collect();
    Counterexample {
        sample,
        reason: reason.into(),
        lhs_game: game(lhs),
        rhs_game: game(rhs),
        lhs_nf: nfs(lhs_nf),
        rhs_nf: nfs(rhs_nf),
    }
}

fn compare<R: Rng>(
    sample: usize,
    lhs: &Side,
    rhs: &Side,
    fillers: &[Expr],
    rng: &mut R,
    max_p: u32,
    guards: &Guards,
) -> std::result::Result<(), Box<Counterexample>> {
    let exits: Vec<Var> = (1..=FILLER_VARS).map(Var::exit).collect();
    let plug = ExprSystem::new(exits, fillers.to_vec()).expect("fillers only use the filler variables");
    let plug = expr_to_game(&plug);
    let fail = |reason: String, a: &OpenParityGame, b: &OpenParityGame, na: &[NormalForm], nb: &[NormalForm]| {
        Box::new(counterexample(sample, reason, a, b, na, nb))
    };
    let (a, b) = match (compose(&lhs.game, &plug), compose(&rhs.game, &plug)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return Err(fail(format!("could not plug fillers: {e}"), &lhs.game, &rhs.game, &[], &[])),
    };
    let (na, nb) = match (game_semantics(&a, guards), game_semantics(&b, guards)) {
        (Ok(na), Ok(nb)) => (na, nb),
        (Err(e), _) | (_, Err(e)) => return Err(fail(format!("normalisation failed: {e}"), &a, &b, &[], &[])),
    };
    if na != nb {
        return Err(fail("normal forms differ".into(), &a, &b, &na, &nb));
    }
    for side in [lhs, rhs] {
        let Some(terms) = &side.terms else { continue };
        let filled: Vec<Expr> = terms
            .iter()
            .map(|t| {
                fillers
                    .iter()
                    .enumerate()
                    .fold(t.clone(), |acc, (i, f)| acc.substitute(&filler_slot(i + 1), f))
            })
            .collect();
        for (i, term) in filled.iter().enumerate() {
            match normalize(term, guards) {
                Ok((nf, _)) if nf == na[i] => {}
                Ok((nf, _)) => {
                    return Err(fail(
                        format!("term {term} normalises to {nf}, its game to {}", na[i]),
                        &a,
                        &b,
                        &na,
                        &nb,
                    ))
                }
                Err(e) => return Err(fail(format!("term normalisation failed: {e}"), &a, &b, &na, &nb)),
            }
        }
    }
    for _ in 0..CONTEXTS {
        let ctx = ClosingContext::random(rng, a.num_entries(), FILLER_VARS, max_p);
        let (ca, cb) = match (ctx.close(&a), ctx.close(&b)) {
            (Ok(ca), Ok(cb)) => (ca, cb),
            (Err(e), _) | (_, Err(e)) => return Err(fail(format!("could not close: {e}"), &a, &b, &na, &nb)),
        };
        let (wa, wb) = (zielonka(&ca), zielonka(&cb));
        if wa != wb {
            return Err(fail(
                format!("a closing context separates the sides: {wa:?} vs {wb:?}"),
                &a,
                &b,
                &na,
                &nb,
            ));
        }
    }
    Ok(())
}

/// One differential suite: how many cases ran and the first disagreement.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub samples: usize,
    pub passed: bool,
    pub axioms: Vec<AxiomReport>,
    pub suites: Vec<SuiteReport>,
}

/// Every axiom at `samples` instances, then the solver differentials.
/// Axioms are spread over the available cores; each has its own stream
/// derived from `seed`, so the report does not depend on the thread count.
pub fn selftest(samples: usize, seed: u64) -> SelftestReport {
    let ids = AxiomId::all();
    let threads = std::thread::available_parallelism().map_or(1, usize::from).min(ids.len());
    let mut axioms: Vec<Option<AxiomReport>> = vec![None; ids.len()];
    std::thread::scope(|scope| {
        let chunk = ids.len().div_ceil(threads);
        for (slots, ids) in axioms.chunks_mut(chunk).zip(ids.chunks(chunk)) {
            scope.spawn(move || {
                for (slot, &id) in slots.iter_mut().zip(ids) {
                    let stream = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ u64::from(stream_tag(id));
                    *slot = Some(check_axiom(id, samples, stream, 6));
                }
            });
        }
    });
    let axioms: Vec<AxiomReport> = axioms.into_iter().map(|r| r.expect("every slot is filled")).collect();
    let suites = vec![closed_suite(samples, seed), acyclic_suite(samples, seed)];
    let passed = axioms.iter().all(|r| r.passed) && suites.iter().all(|s| s.passed);
    SelftestReport {
        seed,
        samples,
        passed,
        axioms,
        suites,
    }
}

fn stream_tag(id: AxiomId) -> u32 {
    match id {
        AxiomId::A(n) => 100 + u32::from(n),
        AxiomId::B(n) => 200 + u32::from(n),
        AxiomId::C(n) => 300 + u32::from(n),
        AxiomId::D(n) => 400 + u32::from(n),
        AxiomId::EEven => 500,
        AxiomId::EOdd => 501,
    }
}

/// Equational solving, Zielonka and brute force on random closed games.
fn closed_suite(cases: usize, seed: u64) -> SuiteReport {
    let guards = Guards::default();
    let mut first_failure = None;
    for i in 0..cases {
        let s = seed.wrapping_add(i as u64);
        let n = 1 + i % 6;
        let game = match random_closed_game(n, 4, 0.2 + 0.1 * (i % 4) as f64, s) {
            Ok(g) => g,
            Err(e) => {
                first_failure = Some(format!("case {i}: {e}"));
                break;
            }
        };
        let z = zielonka(&game);
        let verdict = match solve_closed(&game, &guards) {
            Ok(w) if w != z => Some(format!("case {i}: equational {w:?}, Zielonka {z:?}")),
            Ok(_) if brute_force_closed(&game) != z => Some(format!("case {i}: brute force disagrees with Zielonka")),
            Ok(_) => None,
            Err(e) => Some(format!("case {i}: {e}")),
        };
        if verdict.is_some() {
            first_failure = verdict;
            break;
        }
    }
    SuiteReport {
        name: "closed games: equational = Zielonka = brute force".into(),
        cases,
        passed: first_failure.is_none(),
        first_failure,
    }
}

/// Normal forms of acyclic games against strategy enumeration.
fn acyclic_suite(cases: usize, seed: u64) -> SuiteReport {
    let guards = Guards::default();
    let mut first_failure = None;
    for i in 0..cases {
        let params = RandomGameParams {
            nodes: 1 + i % 8,
            max_priority: 6,
            density: 0.35,
            entries: 1 + i % 2,
            exits: 1 + i % 3,
            acyclic: true,
            seed: seed.wrapping_add(i as u64),
        };
        let verdict = match random_game(&params)
            .and_then(|g| Ok((game_semantics(&g, &guards)?, enumerate_semantics_acyclic(&g)?)))
        {
            Ok((a, b)) if a != b => Some(format!("case {i}: normal forms differ")),
            Ok(_) => None,
            Err(e) => Some(format!("case {i}: {e}")),
        };
        if verdict.is_some() {
            first_failure = verdict;
            break;
        }
    }
    SuiteReport {
        name: "acyclic games: normal form = strategy enumeration".into(),
        cases,
        passed: first_failure.is_none(),
        first_failure,
    }
}
