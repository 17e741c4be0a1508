use std::fmt;

use serde::{Serialize, Serializer};

/// Degree of a polynomial: an element of `{-inf} ∪ N`.
///
/// `NegInfinity` is the degree of the zero polynomial and sorts below every
/// finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// Truncated addition: `-inf` absorbs.
    pub fn dot_add(self, other: Degree) -> Degree {
        match (self, other) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }

    /// `self ∸ by`: `self - by` when that is a natural number, `-inf` otherwise.
    ///
    /// Subtracting the degree of the identity element (which is infinite)
    /// always yields `-inf`.
    pub fn dot_sub(self, by: ElemDegree) -> Degree {
        match (self, by) {
            (Degree::Finite(a), ElemDegree::Finite(b)) if a >= b => Degree::Finite(a - b),
            _ => Degree::NegInfinity,
        }
    }

    pub fn at_most(self, d: u32) -> bool {
        self <= Degree::Finite(d)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Degree::NegInfinity => s.serialize_str("-inf"),
            Degree::Finite(d) => s.serialize_u32(*d),
        }
    }
}

/// Degree of a group element with respect to the lower central series:
/// the largest `i` with `g ∈ G_[i]`. The identity lies in every term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElemDegree {
    Finite(u32),
    Infinite,
}

impl fmt::Display for ElemDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElemDegree::Infinite => f.write_str("inf"),
            ElemDegree::Finite(d) => write!(f, "{d}"),
        }
    }
}

impl Serialize for ElemDegree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ElemDegree::Infinite => s.serialize_str("inf"),
            ElemDegree::Finite(d) => s.serialize_u32(*d),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_arithmetic() {
        use Degree::*;
        assert_eq!(Finite(2).dot_add(Finite(3)), Finite(5));
        assert_eq!(Finite(2).dot_add(NegInfinity), NegInfinity);
        assert_eq!(Finite(3).dot_sub(ElemDegree::Finite(1)), Finite(2));
        assert_eq!(Finite(1).dot_sub(ElemDegree::Finite(2)), NegInfinity);
        assert_eq!(Finite(4).dot_sub(ElemDegree::Infinite), NegInfinity);
        assert_eq!(NegInfinity.dot_sub(ElemDegree::Finite(0)), NegInfinity);
        assert!(NegInfinity < Finite(0));
    }
}
