use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// A variable name: an exit of a game, or a μ-bound loop point.
///
/// Ordered naturally (`x2 < x10`) so clause listings read in exit order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: impl AsRef<str>) -> Self {
        Var(Arc::from(name.as_ref()))
    }

    /// The variable naming exit `k` (1-based) of a game.
    pub fn exit(k: usize) -> Self {
        Var::new(format!("x{k}"))
    }

    /// The loop variable of position `id` during game translation.
    pub fn position(id: usize) -> Self {
        Var::new(format!("y{id}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn split(&self) -> (&str, Option<u64>) {
        let s = self.as_str();
        let digits = s.bytes().rev().take_while(u8::is_ascii_digit).count();
        let (head, tail) = s.split_at(s.len() - digits);
        // Leading zeros would make distinct names compare equal numerically.
        if tail.is_empty() || (tail.len() > 1 && tail.starts_with('0')) || tail.len() > 18 {
            (s, None)
        } else {
            (head, tail.parse().ok())
        }
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        let (ha, na) = self.split();
        let (hb, nb) = other.split();
        ha.cmp(hb)
            .then_with(|| na.cmp(&nb))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Self {
        Var::new(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_order() {
        let mut v: Vec<Var> = ["x10", "x2", "y1", "x1", "a"].into_iter().map(Var::from).collect();
        v.sort();
        let names: Vec<_> = v.iter().map(Var::as_str).collect();
        assert_eq!(names, ["a", "x1", "x2", "x10", "y1"]);
    }
}
