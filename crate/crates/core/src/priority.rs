//! Priorities and the parity order on them.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A priority label in `0..=M`. `Ord` is the numeric order used by `max`;
/// the order that measures how good a recorded priority is for Player 0 is
/// [`Priority::parity_leq`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Priority(pub u32);

impl Priority {
    pub const ZERO: Priority = Priority(0);

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_even(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// Position in the parity order: odd priorities descending, then even
    /// ascending, i.e. `... 5, 3, 1, 0, 2, 4 ...`.
    pub fn rank(self) -> i64 {
        if self.is_even() {
            i64::from(self.0)
        } else {
            -i64::from(self.0)
        }
    }

    /// `self ⊑ other`: recording `other` is at least as good for Player 0 as
    /// recording `self`, whatever the play does afterwards.
    pub fn parity_leq(self, other: Priority) -> bool {
        self.rank() <= other.rank()
    }

    pub fn parity_cmp(self, other: Priority) -> Ordering {
        self.rank().cmp(&other.rank())
    }

    /// The ⊑-least of the two (the worse one for Player 0).
    pub fn parity_min(self, other: Priority) -> Priority {
        if self.parity_leq(other) {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Priority) -> Priority {
        Ord::max(self, other)
    }
}

impl From<u32> for Priority {
    fn from(value: u32) -> Self {
        Priority(value)
    }
}

impl fmt::Display for Priority {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Finite context oracle: `k ⊑ k2` iff for every environment priority
    /// `e`, `max(k, e)` even implies `max(k2, e)` even.
    fn context_leq(k: u32, k2: u32, bound: u32) -> bool {
        (0..=bound).all(|e| k.max(e) % 2 != 0 || k2.max(e) % 2 == 0)
    }

    #[test]
    fn frozen_examples() {
        assert!(Priority(1).parity_leq(Priority(0)));
        assert!(!Priority(0).parity_leq(Priority(1)));
        assert!(Priority(0).parity_leq(Priority(2)));
        assert!(!Priority(2).parity_leq(Priority(0)));
        for k in 0..10 {
            assert!(Priority(k).parity_leq(Priority(k)));
        }
    }

    #[test]
    fn matches_context_oracle() {
        let bound = 9;
        for k in 0..=bound {
            for k2 in 0..=bound {
                assert_eq!(
                    Priority(k).parity_leq(Priority(k2)),
                    context_leq(k, k2, bound),
                    "k={k} k2={k2}"
                );
            }
        }
    }

    #[test]
    fn max_is_monotone_in_parity_order() {
        for a in 0..8 {
            for b in 0..8 {
                if !Priority(a).parity_leq(Priority(b)) {
                    continue;
                }
                for e in 0..8 {
                    assert!(Priority(a).max(Priority(e)).parity_leq(Priority(b).max(Priority(e))));
                }
            }
        }
    }
}
