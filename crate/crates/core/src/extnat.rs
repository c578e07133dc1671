//! Dimensions valued in `ℕ ∪ {∞}`, plus cutoff-limited lower bounds.

use std::fmt;

use serde::Serialize;

/// A homological dimension. `AtLeast(n)` records that a computation stopped
/// at a cutoff having certified only `value ≥ n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "tag", content = "value", rename_all = "snake_case")]
pub enum ExtendedNat {
    Finite(u64),
    Infinite,
    AtLeast(u64),
}

impl ExtendedNat {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedNat::Finite(_))
    }

    /// Finite or infinite, as opposed to a bare lower bound.
    pub fn is_determinate(&self) -> bool {
        !matches!(self, ExtendedNat::AtLeast(_))
    }

    /// Least upper bound of two verdicts.
    pub fn join(self, other: ExtendedNat) -> ExtendedNat {
        use ExtendedNat::*;
        match (self, other) {
            (Infinite, _) | (_, Infinite) => Infinite,
            (Finite(a), Finite(b)) => Finite(a.max(b)),
            (Finite(a), AtLeast(b)) | (AtLeast(b), Finite(a)) | (AtLeast(a), AtLeast(b)) => {
                AtLeast(a.max(b))
            }
        }
    }

    /// Sum with `∞` absorbing.
    pub fn add(self, other: ExtendedNat) -> ExtendedNat {
        use ExtendedNat::*;
        match (self, other) {
            (Infinite, _) | (_, Infinite) => Infinite,
            (Finite(a), Finite(b)) => Finite(a + b),
            (Finite(a), AtLeast(b)) | (AtLeast(a), Finite(b)) | (AtLeast(a), AtLeast(b)) => {
                AtLeast(a + b)
            }
        }
    }

    /// Whether `self ≤ other` is consistent with everything the two values
    /// certify. A lower bound `≥ n` is refuted only by a finite value below `n`.
    pub fn le_join(self, other: ExtendedNat) -> bool {
        use ExtendedNat::*;
        match (self, other) {
            (_, Infinite) => true,
            (Infinite, Finite(_)) => false,
            (Infinite, AtLeast(_)) => true,
            (Finite(a), Finite(b)) => a <= b,
            (AtLeast(a), Finite(b)) => a <= b,
            (Finite(_), AtLeast(_)) | (AtLeast(_), AtLeast(_)) => true,
        }
    }
}

impl fmt::Display for ExtendedNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedNat::Finite(n) => write!(f, "{n}"),
            ExtendedNat::Infinite => write!(f, "inf"),
            ExtendedNat::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::ExtendedNat::*;

    #[test]
    fn join_rules() {
        assert_eq!(Finite(1).join(Finite(3)), Finite(3));
        assert_eq!(Finite(1).join(AtLeast(4)), AtLeast(4));
        assert_eq!(Finite(5).join(AtLeast(4)), AtLeast(5));
        assert_eq!(AtLeast(2).join(Infinite), Infinite);
    }

    #[test]
    fn infinity_absorbs_sums() {
        assert_eq!(Finite(1).add(Finite(1)), Finite(2));
        assert_eq!(Infinite.add(Finite(0)), Infinite);
        assert_eq!(AtLeast(0).add(Infinite), Infinite);
    }

    #[test]
    fn consistent_order() {
        assert!(Finite(0).le_join(Finite(0)));
        assert!(!Finite(2).le_join(Finite(1)));
        assert!(AtLeast(7).le_join(AtLeast(7)));
        assert!(AtLeast(3).le_join(Infinite));
        assert!(!AtLeast(3).le_join(Finite(2)));
        assert!(!Infinite.le_join(Finite(9)));
    }
}
