//! Sparse multivariate polynomials over the rationals.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors under graded
//! lexicographic order: lower total degree first, and within one degree the
//! monomial with the larger exponent on the earlier variable comes first
//! (`x` before `y`, `x^2` before `x*y` before `y^2`). Zero coefficients are
//! never stored, so structural equality is mathematical equality.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::degree::Degree;
use super::rational::{format_rational, Rational};
use super::ExactError;

/// Ordered variable names shared between polynomials.
pub type Vars = Arc<[String]>;

pub fn vars<S: AsRef<str>>(names: &[S]) -> Vars {
    names.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>().into()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn unit(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.0.iter().zip(weights).map(|(e, w)| e * w).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `Some(self / other)` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: &Vars) -> Self {
        MultiPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Monomial::one(vars.len()), c);
        p
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        assert!(i < vars.len(), "variable index {i} out of range");
        let mut p = Self::zero(vars);
        p.add_term(Monomial::unit(vars.len(), i), Rational::one());
        p
    }

    pub fn monomial(vars: &Vars, exps: Vec<u32>, c: Rational) -> Result<Self, ExactError> {
        Self::from_terms(vars, [(exps, c)])
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials.
    pub fn from_terms<I>(vars: &Vars, terms: I) -> Result<Self, ExactError>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(vars);
        for (exps, c) in terms {
            if exps.len() != vars.len() {
                return Err(ExactError::ExponentLength { expected: vars.len(), found: exps.len() });
            }
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one(self.nvars())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    fn check_vars(&self, other: &MultiPoly) -> Result<(), ExactError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(ExactError::VariableMismatch {
                left: self.vars.to_vec(),
                right: other.vars.to_vec(),
            })
        }
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly, ExactError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly, ExactError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly, ExactError> {
        self.check_vars(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.vars));
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut o) => *o.get_mut() += c,
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(MultiPoly { vars: self.vars.clone(), terms })
    }

    /// In-place `self += c * other`.
    pub fn add_scaled(&mut self, other: &MultiPoly, c: &Rational) {
        assert_eq!(self.vars, other.vars, "variable-list mismatch");
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Composes with `x_i ↦ images[i]`. All images must live over `target`.
    pub fn substitute(&self, images: &[MultiPoly], target: &Vars) -> Result<MultiPoly, ExactError> {
        if images.len() != self.nvars() {
            return Err(ExactError::AssignmentLength { expected: self.nvars(), found: images.len() });
        }
        if let Some(bad) = images.iter().find(|p| &p.vars != target) {
            return Err(ExactError::VariableMismatch { left: target.to_vec(), right: bad.vars.to_vec() });
        }
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![MultiPoly::one(target), p.clone()]).collect();
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &cache[1];
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
                if term.is_zero() {
                    break;
                }
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Substitution keyed by variable name.
    pub fn substitute_named(&self, assignment: &HashMap<String, MultiPoly>) -> Result<MultiPoly, ExactError> {
        let mut images = Vec::with_capacity(self.nvars());
        for name in self.vars.iter() {
            let img = assignment.get(name).ok_or_else(|| ExactError::MissingVariable(name.clone()))?;
            images.push(img.clone());
        }
        let target = match images.first() {
            Some(p) => p.vars.clone(),
            None => match assignment.values().next() {
                Some(p) => p.vars.clone(),
                None => return Err(ExactError::EmptyAssignment),
            },
        };
        self.substitute(&images, &target)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars(), "evaluation point has wrong length");
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                if e > 0 {
                    if x.is_zero() {
                        v = Rational::zero();
                        break;
                    }
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        total
    }

    /// Maximum of `Σ w_i e_i` over the terms; `-inf` for the zero polynomial.
    pub fn weighted_degree(&self, weights: &[u32]) -> Degree {
        assert_eq!(weights.len(), self.nvars(), "weight vector has wrong length");
        self.terms
            .keys()
            .map(|m| m.weighted_degree(weights))
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn total_degree(&self) -> Degree {
        self.terms.keys().map(Monomial::total_degree).max().map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Terms of weighted degree exactly `d`.
    pub fn weighted_part(&self, weights: &[u32], d: u32) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weighted_degree(weights) == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Re-expresses over `target`, sending variable `i` to `target[positions[i]]`.
    pub fn embed(&self, target: &Vars, positions: &[usize]) -> MultiPoly {
        assert_eq!(positions.len(), self.nvars());
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.exps().iter().enumerate() {
                e[positions[i]] += x;
            }
            out.terms.insert(Monomial(e), c.clone());
        }
        out
    }

    /// Same terms over a renamed variable list of the same length.
    pub fn with_vars(&self, renamed: &Vars) -> MultiPoly {
        assert_eq!(renamed.len(), self.nvars());
        MultiPoly { vars: renamed.clone(), terms: self.terms.clone() }
    }

    /// Splits variables `[0, k)` from `[k, n)` and fixes the second block to
    /// the given values, returning a polynomial over `target` (length `k`).
    pub fn fix_tail(&self, k: usize, values: &[Rational], target: &Vars) -> MultiPoly {
        assert_eq!(k + values.len(), self.nvars());
        assert_eq!(target.len(), k);
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in values.iter().zip(&m.exps()[k..]) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            out.add_term(Monomial(m.exps()[..k].to_vec()), v);
        }
        out
    }

    /// Fixes the first `values.len()` variables, keeping the rest.
    pub fn fix_head(&self, values: &[Rational], target: &Vars) -> MultiPoly {
        let k = values.len();
        assert_eq!(target.len() + k, self.nvars());
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in values.iter().zip(&m.exps()[..k]) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            out.add_term(Monomial(m.exps()[k..].to_vec()), v);
        }
        out
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rational> {
        self.terms
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("variable-list mismatch")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("variable-list mismatch")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("variable-list mismatch")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let c = if neg { -c.clone() } else { c.clone() };
            let factors: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { self.vars[i].clone() } else { format!("{}^{e}", self.vars[i]) })
                .collect();
            if factors.is_empty() {
                write!(f, "{}", format_rational(&c))?;
            } else if c.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&c), factors.join("*"))?;
            }
        }
        Ok(())
    }
}
