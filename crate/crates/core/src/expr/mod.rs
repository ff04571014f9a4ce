//! Fixpoint game expressions.
//!
//! A term denotes an open game with one entry whose exits are the term's
//! free variables: `\/` is a Player 0 choice, `/\` a Player 1 choice, `<k>`
//! a position of priority `k`, `bot`/`top` dead positions of Player 0/1 and
//! `mu x . t` a loop from `x` back to the start of `t`.

mod parse;
mod translate;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::priority::Priority;
use crate::var::Var;

pub use parse::{parse_expr, print_expr};
pub use translate::{expr_to_game, game_to_exprs};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Var(Var),
    Pri(Priority, Box<Expr>),
    Join(Box<Expr>, Box<Expr>),
    Meet(Box<Expr>, Box<Expr>),
    Bot,
    Top,
    Mu(Var, Box<Expr>),
}

impl Expr {
    pub fn var(name: impl AsRef<str>) -> Expr {
        Expr::Var(Var::new(name))
    }

    pub fn pri(k: impl Into<Priority>, t: Expr) -> Expr {
        Expr::Pri(k.into(), Box::new(t))
    }

    pub fn join(a: Expr, b: Expr) -> Expr {
        Expr::Join(Box::new(a), Box::new(b))
    }

    pub fn meet(a: Expr, b: Expr) -> Expr {
        Expr::Meet(Box::new(a), Box::new(b))
    }

    pub fn mu(x: impl AsRef<str>, body: Expr) -> Expr {
        Expr::Mu(Var::new(x), Box::new(body))
    }

    /// Left-nested join; `Bot` when empty.
    pub fn join_all(items: impl IntoIterator<Item = Expr>) -> Expr {
        items.into_iter().reduce(Expr::join).unwrap_or(Expr::Bot)
    }

    /// Left-nested meet; `Top` when empty.
    pub fn meet_all(items: impl IntoIterator<Item = Expr>) -> Expr {
        items.into_iter().reduce(Expr::meet).unwrap_or(Expr::Top)
    }

    pub fn children(&self) -> Vec<&Expr> {
        match self {
            Expr::Var(_) | Expr::Bot | Expr::Top => vec![],
            Expr::Pri(_, t) | Expr::Mu(_, t) => vec![t],
            Expr::Join(a, b) | Expr::Meet(a, b) => vec![a, b],
        }
    }

    /// Number of constructor nodes.
    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Expr::size).sum::<usize>()
    }

    pub fn has_mu(&self) -> bool {
        matches!(self, Expr::Mu(..)) || self.children().into_iter().any(Expr::has_mu)
    }

    pub fn max_priority(&self) -> u32 {
        let own = match self {
            Expr::Pri(k, _) => k.value(),
            _ => 0,
        };
        self.children().into_iter().map(Expr::max_priority).fold(own, u32::max)
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a Var>, out: &mut BTreeSet<Var>) {
        match self {
            Expr::Var(x) => {
                if !bound.contains(&x) {
                    out.insert(x.clone());
                }
            }
            Expr::Mu(x, t) => {
                bound.push(x);
                t.collect_free(bound, out);
                bound.pop();
            }
            _ => {
                for c in self.children() {
                    c.collect_free(bound, out);
                }
            }
        }
    }

    pub fn occurs_free(&self, x: &Var) -> bool {
        match self {
            Expr::Var(y) => y == x,
            Expr::Mu(y, t) => y != x && t.occurs_free(x),
            _ => self.children().into_iter().any(|c| c.occurs_free(x)),
        }
    }

    /// Capture-avoiding substitution `self[u/x]`.
    pub fn substitute(&self, x: &Var, u: &Expr) -> Expr {
        let fv_u = u.free_vars();
        self.subst(x, u, &fv_u)
    }

    fn subst(&self, x: &Var, u: &Expr, fv_u: &BTreeSet<Var>) -> Expr {
        match self {
            Expr::Var(y) if y == x => u.clone(),
            Expr::Var(_) | Expr::Bot | Expr::Top => self.clone(),
            Expr::Pri(k, t) => Expr::Pri(*k, Box::new(t.subst(x, u, fv_u))),
            Expr::Join(a, b) => Expr::join(a.subst(x, u, fv_u), b.subst(x, u, fv_u)),
            Expr::Meet(a, b) => Expr::meet(a.subst(x, u, fv_u), b.subst(x, u, fv_u)),
            Expr::Mu(y, t) => {
                if y == x || !t.occurs_free(x) {
                    self.clone()
                } else if fv_u.contains(y) {
                    let mut avoid = t.free_vars();
                    avoid.extend(fv_u.iter().cloned());
                    avoid.insert(x.clone());
                    let fresh = fresh_var(y, &avoid);
                    let renamed = t.subst(y, &Expr::Var(fresh.clone()), &BTreeSet::from([fresh.clone()]));
                    Expr::Mu(fresh, Box::new(renamed.subst(x, u, fv_u)))
                } else {
                    Expr::Mu(y.clone(), Box::new(t.subst(x, u, fv_u)))
                }
            }
        }
    }

    /// Equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Expr) -> bool {
        alpha(self, other, &mut Vec::new(), &mut Vec::new())
    }

    /// The subterm reached by following child indices.
    pub fn subterm(&self, path: &[usize]) -> Option<&Expr> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => self.children().get(i).and_then(|c| c.subterm(rest)),
        }
    }

    /// Replace the subterm at `path`; `None` when the path does not exist.
    pub fn replace_at(&self, path: &[usize], new: Expr) -> Option<Expr> {
        let Some((&i, rest)) = path.split_first() else {
            return Some(new);
        };
        Some(match (self, i) {
            (Expr::Pri(k, t), 0) => Expr::Pri(*k, Box::new(t.replace_at(rest, new)?)),
            (Expr::Mu(x, t), 0) => Expr::Mu(x.clone(), Box::new(t.replace_at(rest, new)?)),
            (Expr::Join(a, b), 0) => Expr::join(a.replace_at(rest, new)?, (**b).clone()),
            (Expr::Join(a, b), 1) => Expr::join((**a).clone(), b.replace_at(rest, new)?),
            (Expr::Meet(a, b), 0) => Expr::meet(a.replace_at(rest, new)?, (**b).clone()),
            (Expr::Meet(a, b), 1) => Expr::meet((**a).clone(), b.replace_at(rest, new)?),
            _ => return None,
        })
    }
}

fn alpha<'a>(a: &'a Expr, b: &'a Expr, env_a: &mut Vec<&'a Var>, env_b: &mut Vec<&'a Var>) -> bool {
    match (a, b) {
        (Expr::Var(x), Expr::Var(y)) => {
            let ix = env_a.iter().rposition(|v| *v == x);
            let iy = env_b.iter().rposition(|v| *v == y);
            match (ix, iy) {
                (None, None) => x == y,
                (Some(i), Some(j)) => i == j,
                _ => false,
            }
        }
        (Expr::Bot, Expr::Bot) | (Expr::Top, Expr::Top) => true,
        (Expr::Pri(k, s), Expr::Pri(l, t)) => k == l && alpha(s, t, env_a, env_b),
        (Expr::Join(s1, s2), Expr::Join(t1, t2)) | (Expr::Meet(s1, s2), Expr::Meet(t1, t2)) => {
            alpha(s1, t1, env_a, env_b) && alpha(s2, t2, env_a, env_b)
        }
        (Expr::Mu(x, s), Expr::Mu(y, t)) => {
            env_a.push(x);
            env_b.push(y);
            let eq = alpha(s, t, env_a, env_b);
            env_a.pop();
            env_b.pop();
            eq
        }
        _ => false,
    }
}

/// `base_1`, `base_2`, ... until one is not in `avoid`.
pub(crate) fn fresh_var(base: &Var, avoid: &BTreeSet<Var>) -> Var {
    (1..)
        .map(|n| Var::new(format!("{base}_{n}")))
        .find(|v| !avoid.contains(v))
        .expect("unbounded supply")
}

/// One expression per entry of a game over a shared list of exit variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprSystem {
    vars: Vec<Var>,
    components: Vec<Expr>,
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print_expr(self))
    }
}

impl ExprSystem {
    pub fn new(vars: Vec<Var>, components: Vec<Expr>) -> Result<Self> {
        let declared: BTreeSet<&Var> = vars.iter().collect();
        if declared.len() != vars.len() {
            return Err(Error::Precondition("exit variables must be distinct".into()));
        }
        for (i, c) in components.iter().enumerate() {
            if let Some(x) = c.free_vars().into_iter().find(|x| !declared.contains(x)) {
                return Err(Error::Precondition(format!(
                    "component {} mentions undeclared variable {x}",
                    i + 1
                )));
            }
        }
        Ok(ExprSystem { vars, components })
    }

    /// A system whose exits are the free variables of the components, in
    /// natural order.
    pub fn from_exprs(components: Vec<Expr>) -> Self {
        let vars: BTreeSet<Var> = components.iter().flat_map(Expr::free_vars).collect();
        ExprSystem {
            vars: vars.into_iter().collect(),
            components,
        }
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn components(&self) -> &[Expr] {
        &self.components
    }
}
