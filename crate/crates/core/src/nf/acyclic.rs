//! Bottom-up normalisation of terms, one trace step per constructor.

use crate::config::Guards;
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::priority::Priority;
use crate::var::Var;

use super::{NormalForm, RewriteTrace, Rule};

/// Removes one binder `mu x . body` once its body is in normal form.
pub trait FixpointEliminator {
    fn eliminate(&mut self, x: &Var, body: &NormalForm) -> Result<(NormalForm, Rule)>;
}

struct Refuse;

impl FixpointEliminator for Refuse {
    fn eliminate(&mut self, x: &Var, _: &NormalForm) -> Result<(NormalForm, Rule)> {
        Err(Error::Precondition(format!(
            "acyclic normalisation met the binder `mu {x}`"
        )))
    }
}

/// Normal form of a term without `mu`, with the steps that produced it.
pub fn normalize_acyclic(t: &Expr) -> Result<(NormalForm, RewriteTrace)> {
    if t.has_mu() {
        return Err(Error::Precondition("acyclic normalisation needs a term without mu".into()));
    }
    let mut trace = RewriteTrace::new();
    let guards = Guards::default();
    let nf = Walker::new(&mut Refuse, &guards, Some(&mut trace), 0).run(t)?;
    Ok((nf, trace))
}

pub(crate) struct Walker<'a, E: FixpointEliminator + ?Sized> {
    eliminator: &'a mut E,
    guards: &'a Guards,
    trace: Option<&'a mut RewriteTrace>,
    slot: usize,
    path: Vec<usize>,
}

impl<'a, E: FixpointEliminator + ?Sized> Walker<'a, E> {
    pub(crate) fn new(
        eliminator: &'a mut E,
        guards: &'a Guards,
        trace: Option<&'a mut RewriteTrace>,
        slot: usize,
    ) -> Self {
        Walker {
            eliminator,
            guards,
            trace,
            slot,
            path: Vec::new(),
        }
    }

    pub(crate) fn run(&mut self, t: &Expr) -> Result<NormalForm> {
        self.walk(t)
    }

    fn child(&mut self, i: usize, t: &Expr) -> Result<NormalForm> {
        self.path.push(i);
        let r = self.walk(t);
        self.path.pop();
        r
    }

    fn record(&mut self, rule: Rule, redex: impl FnOnce() -> Expr, result: &NormalForm) {
        if let Some(trace) = self.trace.as_deref_mut() {
            let redex = redex();
            let contractum = result.to_expr();
            if !redex.alpha_eq(&contractum) {
                trace.push(rule, self.slot, &self.path, &redex, &contractum);
            }
        }
    }

    fn walk(&mut self, t: &Expr) -> Result<NormalForm> {
        match t {
            Expr::Var(x) => Ok(NormalForm::var(x.clone())),
            Expr::Bot => Ok(NormalForm::bot()),
            Expr::Top => Ok(NormalForm::top()),
            Expr::Pri(k, c) => {
                let n = self.child(0, c)?;
                let out = n.lift(*k);
                self.record(priority_rule(*k, &n), || Expr::Pri(*k, Box::new(n.to_expr())), &out);
                Ok(out)
            }
            Expr::Join(a, b) => {
                let (na, nb) = (self.child(0, a)?, self.child(1, b)?);
                let out = na.join(&nb);
                self.guards.check_clauses(out.len())?;
                self.record(join_rule(&na, &nb, &out), || Expr::join(na.to_expr(), nb.to_expr()), &out);
                Ok(out)
            }
            Expr::Meet(a, b) => {
                let (na, nb) = (self.child(0, a)?, self.child(1, b)?);
                let out = na.meet_checked(&nb, self.guards)?;
                self.record(meet_rule(&na, &nb, &out), || Expr::meet(na.to_expr(), nb.to_expr()), &out);
                Ok(out)
            }
            Expr::Mu(x, body) => {
                let nb = self.child(0, body)?;
                let (out, rule) = if nb.mentions(x) {
                    self.eliminator.eliminate(x, &nb)?
                } else {
                    (nb.clone(), Rule::F2)
                };
                self.record(rule, || Expr::Mu(x.clone(), Box::new(nb.to_expr())), &out);
                Ok(out)
            }
        }
    }
}

fn priority_rule(k: Priority, n: &NormalForm) -> Rule {
    if n.is_bot() {
        Rule::D(2)
    } else if n.is_top() {
        Rule::D(4)
    } else if k == Priority::ZERO {
        Rule::C(4)
    } else if n.len() > 1 {
        Rule::D(1)
    } else if n.clauses().next().is_some_and(|c| c.len() == 1) {
        Rule::C(3)
    } else {
        Rule::D(3)
    }
}

fn join_rule(a: &NormalForm, b: &NormalForm, out: &NormalForm) -> Rule {
    if a.is_bot() || b.is_bot() {
        Rule::B(6)
    } else if a.is_top() || b.is_top() {
        Rule::B(21)
    } else if out.len() < a.len() + b.len() {
        Rule::B(16)
    } else {
        Rule::B(4)
    }
}

fn meet_rule(a: &NormalForm, b: &NormalForm, out: &NormalForm) -> Rule {
    if a.is_top() || b.is_top() {
        Rule::B(9)
    } else if a.is_bot() || b.is_bot() {
        Rule::B(23)
    } else if a.len() > 1 || b.len() > 1 {
        Rule::B(22)
    } else if out.clauses().next().is_some_and(|c| {
        let (ca, cb) = (a.clauses().next(), b.clauses().next());
        ca.zip(cb).is_some_and(|(ca, cb)| c.len() < ca.len() + cb.len())
    }) {
        Rule::B(17)
    } else {
        Rule::B(7)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;
    use crate::nf::tests::nf;

    fn norm(s: &str) -> NormalForm {
        let t = parse_expr(s).unwrap();
        let (n, trace) = normalize_acyclic(&t).unwrap();
        trace.verify(&[t], std::slice::from_ref(&n)).unwrap();
        n
    }

    #[test]
    fn meet_then_join() {
        assert_eq!(norm("(x1 /\\ x2) \\/ x3"), nf(&[&[("x1", 0), ("x2", 0)], &[("x3", 0)]]));
    }

    #[test]
    fn priority_distributes() {
        assert_eq!(norm("<2> (x /\\ <1> y)"), nf(&[&[("x", 2), ("y", 2)]]));
        let (_, trace) = normalize_acyclic(&parse_expr("<2> (x /\\ <1> y)").unwrap()).unwrap();
        let rules: Vec<String> = trace.steps().iter().map(|s| s.rule.to_string()).collect();
        assert_eq!(rules, ["D3"]);
    }

    #[test]
    fn units_and_annihilators() {
        assert!(norm("x \\/ top").is_top());
        assert!(norm("x /\\ bot").is_bot());
        assert!(norm("<3> bot").is_bot());
        assert!(norm("<3> top").is_top());
        assert_eq!(norm("<0> x /\\ top"), NormalForm::var("x"));
    }

    #[test]
    fn mu_is_refused() {
        assert!(normalize_acyclic(&parse_expr("mu y . y").unwrap()).is_err());
    }

    #[test]
    fn distribution_trace_replays() {
        norm("(a \\/ <1> b) /\\ (<2> c \\/ (a /\\ <3> d))");
        norm("<4> ((a \\/ b) /\\ (a \\/ c)) \\/ <5> a");
    }
}
