//! Normal forms: canonical antichains of clauses.
//!
//! A clause lists, per exit, the worst priority Player 0 accepts to record on
//! the way out. A normal form is a Player 0 choice between clauses; `Bot` has
//! no clause at all and `Top` has the empty clause (nothing for Player 1 to
//! pick). Canonical forms are unique, so structural equality decides
//! semantic equivalence.

mod acyclic;
mod trace;

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::config::Guards;
use crate::error::Result;
use crate::expr::{print_expr, Expr};
use crate::priority::Priority;
use crate::var::Var;

pub use acyclic::{normalize_acyclic, FixpointEliminator};
pub(crate) use acyclic::Walker;
pub use trace::{RewriteTrace, Rule, Step};

/// A single `(exit, priority)` pair.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Outcome {
    pub exit: Var,
    pub priority: Priority,
}

/// At most one priority per exit: adding a second one keeps the ⊑-least.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause(BTreeMap<Var, Priority>);

impl Clause {
    pub fn new() -> Self {
        Clause::default()
    }

    pub fn from_pairs<V: Into<Var>, P: Into<Priority>>(pairs: impl IntoIterator<Item = (V, P)>) -> Self {
        let mut c = Clause::new();
        for (x, p) in pairs {
            c.insert(x.into(), p.into());
        }
        c
    }

    pub fn insert(&mut self, exit: Var, priority: Priority) {
        self.0
            .entry(exit)
            .and_modify(|q| *q = q.parity_min(priority))
            .or_insert(priority);
    }

    pub fn get(&self, exit: &Var) -> Option<Priority> {
        self.0.get(exit).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, Priority)> + '_ {
        self.0.iter().map(|(x, p)| (x, *p))
    }

    pub fn outcomes(&self) -> impl Iterator<Item = Outcome> + '_ {
        self.iter().map(|(x, p)| Outcome {
            exit: x.clone(),
            priority: p,
        })
    }

    pub fn without(&self, exit: &Var) -> Clause {
        let mut c = self.clone();
        c.0.remove(exit);
        c
    }

    /// Pairwise union, keeping the worse priority on shared exits.
    pub fn union(&self, other: &Clause) -> Clause {
        let (mut big, small) = if self.len() >= other.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (x, p) in small.iter() {
            big.insert(x.clone(), p);
        }
        big
    }

    pub fn lift(&self, k: Priority) -> Clause {
        Clause(self.0.iter().map(|(x, p)| (x.clone(), (*p).max(k))).collect())
    }

    /// True when `self` makes `other` redundant: every outcome `self`
    /// accepts, `other` accepts too with a priority no better for Player 0.
    pub fn subsumes(&self, other: &Clause) -> bool {
        self.len() <= other.len()
            && self
                .0
                .iter()
                .all(|(x, c)| other.0.get(x).is_some_and(|d| d.parity_leq(*c)))
    }

    fn rank_sum(&self) -> i64 {
        self.0.values().map(|p| p.rank()).sum()
    }
}

impl<V: Into<Var>, P: Into<Priority>> FromIterator<(V, P)> for Clause {
    fn from_iter<I: IntoIterator<Item = (V, P)>>(iter: I) -> Self {
        Clause::from_pairs(iter)
    }
}

/// A canonical set of clauses for one entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "NfRepr", into = "NfRepr")]
pub struct NormalForm {
    clauses: BTreeSet<Clause>,
}

/// Drop clauses made redundant by another one. Clauses arrive sorted so that
/// a subsuming clause is always seen before what it subsumes.
pub fn canonicalize(clauses: impl IntoIterator<Item = Clause>) -> NormalForm {
    let unique: BTreeSet<Clause> = clauses.into_iter().collect();
    if unique.iter().any(Clause::is_empty) {
        return NormalForm::top();
    }
    let mut order: Vec<Clause> = unique.into_iter().collect();
    order.sort_by_key(|c| (c.len(), Reverse(c.rank_sum())));
    let mut kept: Vec<Clause> = Vec::with_capacity(order.len());
    for c in order {
        if !kept.iter().any(|k| k.subsumes(&c)) {
            kept.push(c);
        }
    }
    NormalForm {
        clauses: kept.into_iter().collect(),
    }
}

impl NormalForm {
    pub fn bot() -> Self {
        NormalForm {
            clauses: BTreeSet::new(),
        }
    }

    pub fn top() -> Self {
        NormalForm {
            clauses: BTreeSet::from([Clause::new()]),
        }
    }

    /// `x` itself: leave through `x`, recording nothing.
    pub fn var(x: impl Into<Var>) -> Self {
        Self::single(Clause::from_pairs([(x.into(), Priority::ZERO)]))
    }

    pub fn single(c: Clause) -> Self {
        NormalForm {
            clauses: BTreeSet::from([c]),
        }
    }

    pub fn is_bot(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn is_top(&self) -> bool {
        self.clauses.len() == 1 && self.clauses.iter().next().is_some_and(Clause::is_empty)
    }

    pub fn clauses(&self) -> impl ExactSizeIterator<Item = &Clause> + '_ {
        self.clauses.iter()
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn mentions(&self, x: &Var) -> bool {
        self.clauses.iter().any(|c| c.get(x).is_some())
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.clauses.iter().flat_map(|c| c.0.keys().cloned()).collect()
    }

    pub fn join(&self, other: &NormalForm) -> NormalForm {
        canonicalize(self.clauses.iter().chain(&other.clauses).cloned())
    }

    pub fn meet(&self, other: &NormalForm) -> NormalForm {
        canonicalize(
            self.clauses
                .iter()
                .flat_map(|c| other.clauses.iter().map(move |d| c.union(d))),
        )
    }

    /// [`NormalForm::meet`] refusing to build more clauses than the guard allows.
    pub fn meet_checked(&self, other: &NormalForm, guards: &Guards) -> Result<NormalForm> {
        guards.check_clauses(self.len().saturating_mul(other.len()))?;
        Ok(self.meet(other))
    }

    /// Prefix with a priority: every recorded priority becomes `max(k, p)`.
    pub fn lift(&self, k: Priority) -> NormalForm {
        if k == Priority::ZERO {
            return self.clone();
        }
        canonicalize(self.clauses.iter().map(|c| c.lift(k)))
    }

    /// Plug `b` into exit `x`: sequential composition along that exit.
    pub fn substitute(&self, x: &Var, b: &NormalForm) -> NormalForm {
        self.substitute_checked(x, b, &Guards {
            clauses: usize::MAX,
            ..Guards::default()
        })
        .expect("unbounded guard")
    }

    pub fn substitute_checked(&self, x: &Var, b: &NormalForm, guards: &Guards) -> Result<NormalForm> {
        if !self.mentions(x) {
            return Ok(self.clone());
        }
        let mut out: Vec<Clause> = Vec::new();
        for c in &self.clauses {
            match c.get(x) {
                None => out.push(c.clone()),
                Some(p) => {
                    let rest = c.without(x);
                    for d in b.lift(p).clauses {
                        out.push(rest.union(&d));
                    }
                    guards.check_clauses(out.len())?;
                }
            }
        }
        Ok(canonicalize(out))
    }

    /// The normal form written as a term: a join of meets of atoms `x` or
    /// `<p> x`, in clause order.
    pub fn to_expr(&self) -> Expr {
        Expr::join_all(self.clauses.iter().map(|c| {
            Expr::meet_all(c.iter().map(|(x, p)| {
                let v = Expr::Var(x.clone());
                if p == Priority::ZERO {
                    v
                } else {
                    Expr::Pri(p, Box::new(v))
                }
            }))
        }))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("normal forms always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

impl FromIterator<Clause> for NormalForm {
    fn from_iter<I: IntoIterator<Item = Clause>>(iter: I) -> Self {
        canonicalize(iter)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_expr(&self.to_expr()))
    }
}

#[derive(Serialize, Deserialize)]
struct NfRepr {
    clauses: Vec<Vec<(String, u32)>>,
}

impl From<NfRepr> for NormalForm {
    fn from(r: NfRepr) -> Self {
        canonicalize(
            r.clauses
                .into_iter()
                .map(|c| c.into_iter().map(|(x, p)| (Var::new(x), Priority(p))).collect()),
        )
    }
}

impl From<NormalForm> for NfRepr {
    fn from(nf: NormalForm) -> Self {
        NfRepr {
            clauses: nf
                .clauses
                .iter()
                .map(|c| c.iter().map(|(x, p)| (x.to_string(), p.value())).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn clause(pairs: &[(&str, u32)]) -> Clause {
        pairs.iter().map(|&(x, p)| (x, p)).collect()
    }

    pub(crate) fn nf(clauses: &[&[(&str, u32)]]) -> NormalForm {
        clauses.iter().map(|c| clause(c)).collect()
    }

    #[test]
    fn absorption() {
        assert_eq!(nf(&[&[("a", 0)], &[("a", 0), ("b", 0)]]), nf(&[&[("a", 0)]]));
    }

    #[test]
    fn one_priority_per_exit() {
        assert_eq!(nf(&[&[("x1", 0), ("x1", 2)]]), nf(&[&[("x1", 0)]]));
        assert_eq!(nf(&[&[("x1", 3), ("x1", 1)]]), nf(&[&[("x1", 3)]]));
    }

    #[test]
    fn empty_conventions() {
        assert!(nf(&[]).is_bot());
        assert!(nf(&[&[]]).is_top());
        assert_ne!(NormalForm::top(), NormalForm::bot());
        assert_eq!(nf(&[&[], &[("x", 1)]]), NormalForm::top());
    }

    #[test]
    fn better_clause_wins() {
        // Recording 2 is better than recording 1, so {(x,1)} is redundant.
        assert_eq!(nf(&[&[("x", 1)], &[("x", 2)]]), nf(&[&[("x", 2)]]));
        assert_eq!(nf(&[&[("x", 3)], &[("x", 1)]]), nf(&[&[("x", 1)]]));
    }

    #[test]
    fn meet_then_join() {
        let v = NormalForm::var;
        let lhs = v("x1").meet(&v("x2")).join(&v("x3"));
        assert_eq!(lhs, nf(&[&[("x1", 0), ("x2", 0)], &[("x3", 0)]]));
    }

    #[test]
    fn lift_examples() {
        assert_eq!(nf(&[&[("x", 1)]]).lift(Priority(2)), nf(&[&[("x", 2)]]));
        assert!(NormalForm::top().lift(Priority(5)).is_top());
        assert!(NormalForm::bot().lift(Priority(5)).is_bot());
    }

    #[test]
    fn substitution_examples() {
        let b = nf(&[&[("y", 1)], &[("z", 4)]]);
        assert_eq!(NormalForm::var("x").substitute(&Var::new("x"), &b), b);
        assert_eq!(
            nf(&[&[("x", 2)]]).substitute(&Var::new("x"), &nf(&[&[("y", 1)]])),
            nf(&[&[("y", 2)]])
        );
    }

    #[test]
    fn json_shape() {
        assert_eq!(NormalForm::var("x1").to_json(), r#"{"clauses":[[["x1",0]]]}"#);
        assert_eq!(NormalForm::top().to_json(), r#"{"clauses":[[]]}"#);
        assert_eq!(NormalForm::bot().to_json(), r#"{"clauses":[]}"#);
        let n = nf(&[&[("x10", 3), ("x2", 0)], &[("x1", 4)]]);
        assert_eq!(NormalForm::from_json(&n.to_json()).unwrap(), n);
        assert_eq!(n.to_json(), r#"{"clauses":[[["x1",4]],[["x2",0],["x10",3]]]}"#);
    }

    #[test]
    fn to_expr_shape() {
        let n = nf(&[&[("x1", 0), ("x2", 3)], &[("x3", 0)]]);
        assert_eq!(n.to_string(), "x1 /\\ <3> x2 \\/ x3");
        assert_eq!(NormalForm::top().to_string(), "top");
        assert_eq!(NormalForm::bot().to_string(), "bot");
    }

    /// Player 0 wins the closed game where every exit `o` loops back to the
    /// entry through a position of priority `env[o]` iff some clause keeps
    /// every cycle even.
    fn wins_raw(clauses: &[Vec<(usize, u32)>], env: &[u32]) -> bool {
        clauses
            .iter()
            .any(|c| c.iter().all(|&(x, p)| p.max(env[x]) % 2 == 0))
    }

    pub(crate) fn arb_nf(vars: usize, max_p: u32) -> impl Strategy<Value = NormalForm> {
        let pair = (0..vars, 0..=max_p);
        let clause = proptest::collection::vec(pair, 0..=vars);
        proptest::collection::vec(clause, 0..4).prop_map(|cs| {
            cs.into_iter()
                .map(|c| c.into_iter().map(|(x, p)| (Var::exit(x + 1), p)).collect::<Clause>())
                .collect()
        })
    }

    proptest! {
        #[test]
        fn lattice_laws(a in arb_nf(3, 4), b in arb_nf(3, 4), c in arb_nf(3, 4)) {
            prop_assert_eq!(a.join(&b), b.join(&a));
            prop_assert_eq!(a.meet(&b), b.meet(&a));
            prop_assert_eq!(a.join(&b).join(&c), a.join(&b.join(&c)));
            prop_assert_eq!(a.meet(&b).meet(&c), a.meet(&b.meet(&c)));
            prop_assert_eq!(a.join(&a), a.clone());
            prop_assert_eq!(a.meet(&a), a.clone());
            prop_assert_eq!(a.join(&NormalForm::bot()), a.clone());
            prop_assert_eq!(a.meet(&NormalForm::top()), a.clone());
            prop_assert!(a.join(&NormalForm::top()).is_top());
            prop_assert!(a.meet(&NormalForm::bot()).is_bot());
            prop_assert_eq!(a.meet(&b.join(&c)), a.meet(&b).join(&a.meet(&c)));
            prop_assert_eq!(a.join(&b.meet(&c)), a.join(&b).meet(&a.join(&c)));
            prop_assert_eq!(a.join(&a.meet(&b)), a.clone());
            prop_assert_eq!(a.meet(&a.join(&b)), a.clone());
        }

        #[test]
        fn priority_action(a in arb_nf(3, 4), b in arb_nf(3, 4), k in 0u32..6, l in 0u32..6) {
            let (k, l) = (Priority(k), Priority(l));
            prop_assert_eq!(a.lift(l).lift(k), a.lift(k.max(l)));
            prop_assert_eq!(a.lift(Priority::ZERO), a.clone());
            prop_assert_eq!(a.join(&b).lift(k), a.lift(k).join(&b.lift(k)));
            prop_assert_eq!(a.meet(&b).lift(k), a.lift(k).meet(&b.lift(k)));
        }

        #[test]
        fn canonical_forms_are_antichains(a in arb_nf(3, 5)) {
            let again: NormalForm = a.clauses().cloned().collect();
            prop_assert_eq!(&again, &a);
            for c in a.clauses() {
                for d in a.clauses() {
                    prop_assert!(c == d || !c.subsumes(d));
                }
            }
        }

        #[test]
        fn substitution_laws(a in arb_nf(2, 4), b in arb_nf(3, 4)) {
            let x = Var::exit(1);
            prop_assert_eq!(a.substitute(&x, &NormalForm::var(x.clone())), a.clone());
            let s = a.substitute(&x, &b);
            prop_assert!(!s.mentions(&x) || b.mentions(&x));
        }

        #[test]
        fn canonicalize_preserves_looping_contexts(
            raw in proptest::collection::vec(proptest::collection::vec((0usize..2, 0u32..4), 0..3), 0..4)
        ) {
            let canon: NormalForm = raw
                .iter()
                .map(|c| c.iter().map(|&(x, p)| (Var::exit(x + 1), p)).collect::<Clause>())
                .collect();
            let canon_raw: Vec<Vec<(usize, u32)>> = canon
                .clauses()
                .map(|c| c.iter().map(|(x, p)| (x.as_str()[1..].parse::<usize>().unwrap() - 1, p.value())).collect())
                .collect();
            for e1 in 0..4u32 {
                for e2 in 0..4u32 {
                    let env = [e1, e2];
                    prop_assert_eq!(wins_raw(&raw, &env), wins_raw(&canon_raw, &env));
                }
            }
        }
    }
}
