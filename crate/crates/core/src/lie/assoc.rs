//! Truncated free associative algebra over ℚ on letters `0..k`.
//!
//! Used to derive the BCH word coefficients from `log(e^X e^Y)` and, in tests,
//! to expand Hall elements into noncommutative polynomials.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exact::Rational;

/// Noncommutative polynomial: word ↦ coefficient, words longer than
/// `max_len` dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordPoly {
    max_len: usize,
    terms: BTreeMap<Vec<u8>, Rational>,
}

impl WordPoly {
    pub fn zero(max_len: usize) -> Self {
        WordPoly { max_len, terms: BTreeMap::new() }
    }

    pub fn one(max_len: usize) -> Self {
        Self::word(max_len, Vec::new(), Rational::one())
    }

    pub fn letter(max_len: usize, l: u8) -> Self {
        Self::word(max_len, vec![l], Rational::one())
    }

    pub fn word(max_len: usize, w: Vec<u8>, c: Rational) -> Self {
        let mut p = Self::zero(max_len);
        p.add_word(w, c);
        p
    }

    fn add_word(&mut self, w: Vec<u8>, c: Rational) {
        if w.len() > self.max_len || c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[u8]) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &WordPoly) -> WordPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_word(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> WordPoly {
        let mut out = Self::zero(self.max_len);
        for (w, a) in &self.terms {
            out.add_word(w.clone(), a * c);
        }
        out
    }

    pub fn mul(&self, other: &WordPoly) -> WordPoly {
        let mut out = Self::zero(self.max_len);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if u.len() + v.len() > self.max_len {
                    continue;
                }
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_word(w, a * b);
            }
        }
        out
    }

    /// Commutator `self·other − other·self`.
    pub fn commutator(&self, other: &WordPoly) -> WordPoly {
        self.mul(other).add(&other.mul(self).scale(&-Rational::one()))
    }

    /// `exp(self)` for `self` without constant term.
    pub fn exp(&self) -> WordPoly {
        let mut out = Self::one(self.max_len);
        let mut power = Self::one(self.max_len);
        for k in 1..=self.max_len {
            power = power.mul(self).scale(&Rational::new(1.into(), (k as i64).into()));
            out = out.add(&power);
        }
        out
    }

    /// `log(self)` for `self` with constant term one.
    pub fn log(&self) -> WordPoly {
        let z = self.add(&Self::one(self.max_len).scale(&-Rational::one()));
        let mut out = Self::zero(self.max_len);
        let mut power = Self::one(self.max_len);
        for k in 1..=self.max_len {
            power = power.mul(&z);
            let sign: i64 = if k % 2 == 1 { 1 } else { -1 };
            out = out.add(&power.scale(&Rational::new(sign.into(), (k as i64).into())));
        }
        out
    }
}
