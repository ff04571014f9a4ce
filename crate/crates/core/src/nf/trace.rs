//! Rewrite traces and their replay.
//!
//! A trace works on a list of slots, each holding one term. Every step names
//! a slot, a path into its term, the subterm found there and the term that
//! replaces it. Replaying needs nothing but the parser and alpha-equivalence.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{parse_expr, print_expr, Expr};

use super::NormalForm;

/// Axiom family justifying one step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Rule {
    A(u8),
    B(u8),
    C(u8),
    D(u8),
    E,
    F1,
    F2,
    Subst,
    LoopSolve,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::A(n) => write!(f, "A{n}"),
            Rule::B(n) => write!(f, "B{n}"),
            Rule::C(n) => write!(f, "C{n}"),
            Rule::D(n) => write!(f, "D{n}"),
            Rule::E => f.write_str("E"),
            Rule::F1 => f.write_str("F1"),
            Rule::F2 => f.write_str("F2"),
            Rule::Subst => f.write_str("SUBST"),
            Rule::LoopSolve => f.write_str("LOOP-SOLVE"),
        }
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("unknown rule label {s:?}"));
        let fixed = match s {
            "E" => Some(Rule::E),
            "F1" => Some(Rule::F1),
            "F2" => Some(Rule::F2),
            "SUBST" => Some(Rule::Subst),
            "LOOP-SOLVE" => Some(Rule::LoopSolve),
            _ => None,
        };
        if let Some(r) = fixed {
            return Ok(r);
        }
        let (family, num) = s.split_at(s.len().min(1));
        let n: u8 = num.parse().map_err(|_| bad())?;
        let (rule, max) = match family {
            "A" => (Rule::A(n), 3),
            "B" => (Rule::B(n), 23),
            "C" => (Rule::C(n), 4),
            "D" => (Rule::D(n), 4),
            _ => return Err(bad()),
        };
        if (1..=max).contains(&n) {
            Ok(rule)
        } else {
            Err(bad())
        }
    }
}

impl TryFrom<String> for Rule {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Rule> for String {
    fn from(r: Rule) -> String {
        r.to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub rule: Rule,
    pub slot: usize,
    pub path: Vec<usize>,
    pub redex: String,
    pub contractum: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RewriteTrace {
    steps: Vec<Step>,
}

impl RewriteTrace {
    pub fn new() -> Self {
        RewriteTrace::default()
    }

    pub fn push(&mut self, rule: Rule, slot: usize, path: &[usize], redex: &Expr, contractum: &Expr) {
        self.steps.push(Step {
            rule,
            slot,
            path: path.to_vec(),
            redex: print_expr(redex),
            contractum: print_expr(contractum),
        });
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// One JSON object per line.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&serde_json::to_string(s).expect("steps always serialize"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Self> {
        let steps = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(serde_json::from_str)
            .collect::<std::result::Result<_, _>>()?;
        Ok(RewriteTrace { steps })
    }

    /// Apply every step to `initial` and return the final slots.
    pub fn replay(&self, initial: &[Expr]) -> Result<Vec<Expr>> {
        let mut slots = initial.to_vec();
        for (n, step) in self.steps.iter().enumerate() {
            let fail = |why: String| Error::Precondition(format!("trace step {} ({}): {why}", n + 1, step.rule));
            let term = slots
                .get(step.slot)
                .ok_or_else(|| fail(format!("no slot {}", step.slot)))?;
            let found = term
                .subterm(&step.path)
                .ok_or_else(|| fail(format!("no subterm at {:?}", step.path)))?;
            let redex = parse_expr(&step.redex)?;
            if !found.alpha_eq(&redex) {
                return Err(fail(format!(
                    "expected {} at {:?}, found {}",
                    step.redex,
                    step.path,
                    print_expr(found)
                )));
            }
            let contractum = parse_expr(&step.contractum)?;
            slots[step.slot] = term
                .replace_at(&step.path, contractum)
                .ok_or_else(|| fail("path vanished".into()))?;
        }
        Ok(slots)
    }

    /// Replay and check that the first slots end as the given normal forms.
    pub fn verify(&self, initial: &[Expr], expected: &[NormalForm]) -> Result<()> {
        let slots = self.replay(initial)?;
        for (i, nf) in expected.iter().enumerate() {
            let got = slots
                .get(i)
                .ok_or_else(|| Error::Precondition(format!("trace has no slot {i}")))?;
            if !got.alpha_eq(&nf.to_expr()) {
                return Err(Error::Precondition(format!(
                    "slot {i} replays to {} instead of {nf}",
                    print_expr(got)
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_labels_round_trip() {
        let mut all = vec![Rule::E, Rule::F1, Rule::F2, Rule::Subst, Rule::LoopSolve];
        all.extend((1..=3).map(Rule::A));
        all.extend((1..=23).map(Rule::B));
        all.extend((1..=4).map(Rule::C));
        all.extend((1..=4).map(Rule::D));
        for r in all {
            assert_eq!(r.to_string().parse::<Rule>().unwrap(), r);
        }
        assert!("B24".parse::<Rule>().is_err());
        assert!("X1".parse::<Rule>().is_err());
        assert_eq!(Rule::LoopSolve.to_string(), "LOOP-SOLVE");
    }

    #[test]
    fn jsonl_round_trip() {
        let mut t = RewriteTrace::new();
        let x = Expr::var("x");
        t.push(Rule::C(4), 0, &[], &Expr::pri(0, x.clone()), &x);
        t.push(Rule::B(6), 1, &[0, 1], &Expr::join(x.clone(), Expr::Bot), &x);
        let text = t.to_jsonl();
        assert_eq!(text.lines().count(), 2);
        assert!(text.starts_with(r#"{"rule":"C4","slot":0,"path":[],"redex":"<0> x","contractum":"x"}"#));
        assert_eq!(RewriteTrace::from_jsonl(&text).unwrap(), t);
    }

    #[test]
    fn replay_checks_redexes() {
        let x = Expr::var("x");
        let start = vec![Expr::meet(Expr::pri(0, x.clone()), Expr::Top)];
        let mut t = RewriteTrace::new();
        t.push(Rule::C(4), 0, &[0], &Expr::pri(0, x.clone()), &x);
        t.push(Rule::B(9), 0, &[], &Expr::meet(x.clone(), Expr::Top), &x);
        t.verify(&start, &[NormalForm::var("x")]).unwrap();

        let mut wrong = RewriteTrace::new();
        wrong.push(Rule::B(9), 0, &[], &Expr::meet(x.clone(), Expr::Top), &x);
        assert!(wrong.replay(&start).is_err());
    }
}
