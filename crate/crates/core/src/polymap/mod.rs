//! Polynomial maps `G → ℚ` in ζ coordinates.
//!
//! A [`PolyMap`] is a polynomial in the second-kind coordinate functions
//! `ζ_{i,j}`, where `ζ_{i,j}` has weight `i`. Its degree as a polynomial map
//! (the least `d` such that all `(d+1)`-fold differences vanish) is the
//! weighted degree of that polynomial; [`verify_degree`] checks this
//! independently with iterated differences.

mod diff;
mod integrate;
mod tensor;

use std::fmt;

use num_traits::{One, Zero};

use crate::exact::{Degree, ExactError, MultiPoly, Rational};
use crate::group::{Group, GroupElement, GroupError};

pub use diff::{
    degree_by_differences, determined_by_diffs, determined_on_ball, left_diff, right_diff, unitized_diff,
    verify_degree, verify_degree_left, BallCheck, DiffEngine, Side,
};
pub use diff::word_ball;
pub use integrate::{integrate_free, Integration};
pub use tensor::{check_coassociative, pull_inv, pull_m, pull_mtilde, quadratic_defect, TensorPolyMap};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyMapError {
    #[error("polynomial maps live on different groups")]
    GroupMismatch,
    #[error("basis label ({0},{1}) does not exist")]
    InvalidLabel(usize, usize),
    #[error("body variables do not match the group's ζ coordinates")]
    WrongVariables,
    #[error("multi-index has length {found}, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("integration system is inconsistent at generator {generator}")]
    Integration { generator: usize, row: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A polynomial map on a group, as a polynomial in its ζ coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMap {
    group: Group,
    body: MultiPoly,
}

impl PolyMap {
    pub fn new(group: &Group, body: MultiPoly) -> Result<PolyMap, PolyMapError> {
        if body.vars() != group.coord_vars() {
            return Err(PolyMapError::WrongVariables);
        }
        Ok(PolyMap { group: group.clone(), body })
    }

    pub(crate) fn from_body(group: &Group, body: MultiPoly) -> PolyMap {
        debug_assert_eq!(body.vars(), group.coord_vars());
        PolyMap { group: group.clone(), body }
    }

    pub fn zero(group: &Group) -> PolyMap {
        Self::from_body(group, MultiPoly::zero(group.coord_vars()))
    }

    pub fn constant(group: &Group, c: Rational) -> PolyMap {
        Self::from_body(group, MultiPoly::constant(group.coord_vars(), c))
    }

    pub fn one(group: &Group) -> PolyMap {
        Self::constant(group, Rational::one())
    }

    /// The coordinate function `ζ_{i,j}`.
    pub fn zeta(group: &Group, level: usize, index: usize) -> Result<PolyMap, PolyMapError> {
        let a = group.spec().index_of(level, index).map_err(|_| PolyMapError::InvalidLabel(level, index))?;
        Ok(Self::zeta_at(group, a))
    }

    /// `ζ` of the basis vector at position `a`.
    pub fn zeta_at(group: &Group, a: usize) -> PolyMap {
        Self::from_body(group, MultiPoly::var(group.coord_vars(), a))
    }

    /// `Π ζ_a^{d_a}` for a multi-index in basis order.
    pub fn zeta_monomial(group: &Group, exps: &[u32]) -> Result<PolyMap, PolyMapError> {
        if exps.len() != group.dim() {
            return Err(PolyMapError::WrongLength { expected: group.dim(), found: exps.len() });
        }
        Ok(Self::from_body(group, MultiPoly::monomial(group.coord_vars(), exps.to_vec(), Rational::one())?))
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn body(&self) -> &MultiPoly {
        &self.body
    }

    pub fn into_body(self) -> MultiPoly {
        self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Weighted degree, `-inf` for the zero map.
    pub fn degree(&self) -> Degree {
        self.body.weighted_degree(&self.group.spec().weights())
    }

    /// The value `ξ(𝟙)`.
    pub fn at_identity(&self) -> Rational {
        self.body.constant_term()
    }

    /// `ξ(𝟙) = 0`.
    pub fn is_unital(&self) -> bool {
        self.at_identity().is_zero()
    }

    pub fn evaluate(&self, g: &GroupElement) -> Result<Rational, PolyMapError> {
        if *g.group() != self.group {
            return Err(PolyMapError::GroupMismatch);
        }
        Ok(self.body.evaluate(g.coords()))
    }

    fn check(&self, other: &PolyMap) -> Result<(), PolyMapError> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(PolyMapError::GroupMismatch)
        }
    }

    pub fn add(&self, other: &PolyMap) -> Result<PolyMap, PolyMapError> {
        self.check(other)?;
        Ok(Self::from_body(&self.group, &self.body + &other.body))
    }

    pub fn sub(&self, other: &PolyMap) -> Result<PolyMap, PolyMapError> {
        self.check(other)?;
        Ok(Self::from_body(&self.group, &self.body - &other.body))
    }

    pub fn scale(&self, c: &Rational) -> PolyMap {
        Self::from_body(&self.group, self.body.scale(c))
    }

    /// Pointwise product.
    pub fn product(&self, other: &PolyMap) -> Result<PolyMap, PolyMapError> {
        self.check(other)?;
        Ok(Self::from_body(&self.group, &self.body * &other.body))
    }

    /// Coefficients on `basis_exponents(weights, d)`; `None` if the degree
    /// exceeds `d`.
    pub fn coordinates(&self, d: u32) -> Option<Vec<Rational>> {
        if !self.degree().at_most(d) {
            return None;
        }
        let exps = basis_exponents(&self.group.spec().weights(), d);
        Some(exps.iter().map(|e| self.body.coeff(e)).collect())
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.body)
    }
}

/// Multi-indices of weighted degree `≤ d`, sorted by weighted degree and then
/// by exponent vector in descending lexicographic order.
pub fn basis_exponents(weights: &[u32], d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; weights.len()];
    fn rec(weights: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == weights.len() {
            out.push(cur.clone());
            return;
        }
        let w = weights[i];
        for e in 0..=left / w {
            cur[i] = e;
            rec(weights, i + 1, left - e * w, cur, out);
        }
        cur[i] = 0;
    }
    rec(weights, 0, d, &mut cur, &mut out);
    let wd = |e: &Vec<u32>| -> u32 { e.iter().zip(weights).map(|(x, w)| x * w).sum() };
    out.sort_by(|a, b| wd(a).cmp(&wd(b)).then_with(|| b.cmp(a)));
    out
}

/// The ζ-monomial basis of `Pol_d(G)`.
pub fn basis(group: &Group, d: u32) -> Vec<PolyMap> {
    let vars = group.coord_vars();
    basis_exponents(&group.spec().weights(), d)
        .into_iter()
        .map(|e| PolyMap::from_body(group, MultiPoly::monomial(vars, e, Rational::one()).expect("length matches")))
        .collect()
}

/// `dim Pol_d(G)`: the number of multi-indices of weighted degree `≤ d`.
pub fn dim_pol(group: &Group, d: u32) -> usize {
    count_exponents(&group.spec().weights(), d)
}

/// Counts multi-indices of weighted degree `≤ d` without listing them.
pub fn count_exponents(weights: &[u32], d: u32) -> usize {
    // ways[k] = multi-indices over a prefix of the variables with weighted degree exactly k
    let d = d as usize;
    let mut ways = vec![0usize; d + 1];
    ways[0] = 1;
    for &w in weights {
        let w = w as usize;
        for k in w..=d {
            ways[k] += ways[k - w];
        }
    }
    ways.iter().sum()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exact::int;

    fn heis() -> Group {
        Group::new(corpus::heisenberg()).unwrap()
    }

    #[test]
    fn zeta_degrees() {
        let g = heis();
        assert_eq!(PolyMap::zeta(&g, 2, 1).unwrap().degree(), Degree::Finite(2));
        assert_eq!(PolyMap::zeta(&g, 1, 1).unwrap().degree(), Degree::Finite(1));
        let one = PolyMap::zeta_monomial(&g, &[0, 0, 0]).unwrap();
        assert_eq!(one, PolyMap::one(&g));
        assert_eq!(one.degree(), Degree::Finite(0));
        assert_eq!(PolyMap::zeta(&g, 3, 1).unwrap_err(), PolyMapError::InvalidLabel(3, 1));
        assert_eq!(PolyMap::zero(&g).degree(), Degree::NegInfinity);
    }

    #[test]
    fn heisenberg_bases() {
        let g = heis();
        let b1: Vec<String> = basis(&g, 1).iter().map(ToString::to_string).collect();
        assert_eq!(b1, vec!["1", "z1_1", "z1_2"]);
        let e2 = basis_exponents(&g.spec().weights(), 2);
        assert_eq!(
            e2,
            vec![
                vec![0, 0, 0],
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![0, 2, 0],
                vec![0, 0, 1]
            ]
        );
        assert_eq!(dim_pol(&g, 2), 7);
        assert_eq!(dim_pol(&g, 0), 1);
        for d in 0..8 {
            assert_eq!(dim_pol(&g, d), basis(&g, d).len());
        }
    }

    #[test]
    fn evaluation() {
        let g = heis();
        let z = PolyMap::zeta(&g, 2, 1).unwrap();
        assert_eq!(z.evaluate(&g.basis_element(2)).unwrap(), int(1));
        let x = g.basis_element(0);
        let y = g.basis_element(1);
        let w = x.pow(&int(3)).mul(&y.pow(&int(-2))).unwrap();
        assert_eq!(z.evaluate(&w).unwrap(), int(0));
        assert_eq!(PolyMap::one(&g).evaluate(&w).unwrap(), int(1));
        let other = Group::new(corpus::heisenberg()).unwrap();
        // structurally equal groups are the same group
        assert!(z.evaluate(&other.identity()).is_ok());
        let ab = Group::new(corpus::abelian(3)).unwrap();
        assert_eq!(z.evaluate(&ab.identity()).unwrap_err(), PolyMapError::GroupMismatch);
    }

    #[test]
    fn products_add_degrees() {
        let g = heis();
        let x = PolyMap::zeta(&g, 1, 1).unwrap();
        let y = PolyMap::zeta(&g, 1, 2).unwrap();
        let z = PolyMap::zeta(&g, 2, 1).unwrap();
        assert_eq!(x.product(&z).unwrap().degree(), Degree::Finite(3));
        assert_eq!(x.product(&y).unwrap().degree(), Degree::Finite(2));
        assert_eq!(x.product(&PolyMap::one(&g)).unwrap(), x);
        let zero = x.product(&PolyMap::zero(&g)).unwrap();
        assert!(zero.is_zero());
        assert_eq!(zero.degree(), Degree::NegInfinity);
    }

    #[test]
    fn coordinates_on_basis() {
        let g = heis();
        let xi = PolyMap::zeta(&g, 2, 1).unwrap().add(&PolyMap::constant(&g, int(4))).unwrap();
        assert_eq!(xi.coordinates(2).unwrap(), vec![int(4), int(0), int(0), int(0), int(0), int(0), int(1)]);
        assert!(xi.coordinates(1).is_none());
    }
}
