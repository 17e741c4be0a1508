//! Nilpotent Lie algebras over ℚ given by structure constants.
//!
//! A [`LieAlgebraSpec`] fixes a graded basis `X_{i,j}` (level `i`, index `j`,
//! both 1-based) listed in lexicographic label order, together with the full
//! table of brackets `[X_a, X_b]` as sparse rational combinations of basis
//! vectors. The basis is expected to be adapted to the lower central series:
//! the level-`i` vectors project to a basis of `g_[i] / g_[i+1]`.

mod assoc;
mod bch;
mod graded;
mod hall;
mod lcs;
mod validate;

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::exact::{Coefficient, Matrix, Rational};

pub use assoc::WordPoly;
pub use bch::BchSeries;
pub use graded::{graded, is_strictly_graded, GradedAlgebra};
pub use hall::{free_nilpotent, HallBasis, HallWord};
pub use lcs::{lower_central_series, Subspace};
pub use validate::{validate, Check, ValidationReport};

/// Sparse vector over the basis: `(index, coefficient)` pairs sorted by index,
/// with no zero coefficients.
pub type SparseVec = Vec<(usize, Rational)>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("elements belong to different Lie algebras")]
    AlgebraMismatch,
    #[error("lower central series does not reach zero within {steps} steps")]
    NotNilpotent { steps: usize },
    #[error("basis label ({0},{1}) does not exist")]
    InvalidLabel(usize, usize),
    #[error("basis change matrix is singular or has the wrong size")]
    BadBasisChange,
    #[error("basis change does not preserve the level filtration")]
    FiltrationNotPreserved,
    #[error("algebra fails validation: {0}")]
    Invalid(String),
}

/// A basis label `(level, index)`, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisLabel {
    pub level: usize,
    pub index: usize,
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.level, self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebraSpec {
    ranks: Vec<usize>,
    labels: Vec<BasisLabel>,
    table: Vec<Vec<SparseVec>>,
}

fn normalize(mut v: Vec<(usize, Rational)>) -> SparseVec {
    v.sort_by_key(|(k, _)| *k);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (k, c) in v {
        match out.last_mut() {
            Some((lk, lc)) if *lk == k => *lc += c,
            _ => out.push((k, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

impl LieAlgebraSpec {
    /// The abelian algebra with the given level dimensions (all brackets zero).
    pub fn with_ranks(ranks: Vec<usize>) -> Self {
        let labels: Vec<BasisLabel> = ranks
            .iter()
            .enumerate()
            .flat_map(|(i, &m)| (1..=m).map(move |j| BasisLabel { level: i + 1, index: j }))
            .collect();
        let n = labels.len();
        LieAlgebraSpec { ranks, labels, table: vec![vec![Vec::new(); n]; n] }
    }

    pub fn abelian(k: usize) -> Self {
        Self::with_ranks(vec![k])
    }

    /// Sets `[X_a, X_b] = v` and `[X_b, X_a] = -v`.
    pub fn set_bracket(&mut self, a: usize, b: usize, v: Vec<(usize, Rational)>) {
        let v = normalize(v);
        let neg: SparseVec = v.iter().map(|(k, c)| (*k, -c.clone())).collect();
        self.table[a][b] = v;
        self.table[b][a] = neg;
    }

    /// Sets only `[X_a, X_b] = v`, leaving the transposed entry alone.
    pub fn set_raw(&mut self, a: usize, b: usize, v: Vec<(usize, Rational)>) {
        self.table[a][b] = normalize(v);
    }

    pub fn set_bracket_labels(
        &mut self,
        a: (usize, usize),
        b: (usize, usize),
        v: &[((usize, usize), Rational)],
    ) -> Result<(), LieError> {
        let ia = self.index_of(a.0, a.1)?;
        let ib = self.index_of(b.0, b.1)?;
        let v = v
            .iter()
            .map(|((l, j), c)| Ok((self.index_of(*l, *j)?, c.clone())))
            .collect::<Result<Vec<_>, LieError>>()?;
        self.set_bracket(ia, ib, v);
        Ok(())
    }

    pub fn index_of(&self, level: usize, index: usize) -> Result<usize, LieError> {
        self.labels
            .binary_search(&BasisLabel { level, index })
            .map_err(|_| LieError::InvalidLabel(level, index))
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn class(&self) -> usize {
        self.ranks.len()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> BasisLabel {
        self.labels[a]
    }

    pub fn level(&self, a: usize) -> usize {
        self.labels[a].level
    }

    /// Level of every basis vector; the weights of the ζ coordinates.
    pub fn weights(&self) -> Vec<u32> {
        self.labels.iter().map(|l| l.level as u32).collect()
    }

    /// Indices of the level-1 basis vectors.
    pub fn generators(&self) -> std::ops::Range<usize> {
        0..self.ranks.first().copied().unwrap_or(0)
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> &SparseVec {
        &self.table[a][b]
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().flatten().all(Vec::is_empty)
    }

    /// Bilinear extension of the structure-constant table.
    pub fn bracket_coeffs<C: Coefficient>(&self, x: &[C], y: &[C]) -> Vec<C> {
        let n = self.dim();
        assert!(x.len() == n && y.len() == n, "coefficient vectors have wrong length");
        let Some(proto) = x.first() else { return Vec::new() };
        let mut out = vec![proto.zero_like(); n];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero_coeff() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                let entry = &self.table[a][b];
                if entry.is_empty() || yb.is_zero_coeff() {
                    continue;
                }
                let prod = xa.times(yb);
                if prod.is_zero_coeff() {
                    continue;
                }
                for (k, c) in entry {
                    out[*k].add_assign_scaled(&prod, c);
                }
            }
        }
        out
    }

    pub fn bracket_vectors(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.bracket_coeffs(x, y)
    }

    /// Structure constants with respect to the basis `Y_a = Σ_p P[p][a] X_p`.
    ///
    /// `p` must be invertible and map each level-`i` vector into the span of
    /// old vectors of level `≥ i`, so that the result is again adapted to the
    /// lower central series.
    pub fn change_basis(&self, p: &Matrix) -> Result<LieAlgebraSpec, LieError> {
        let n = self.dim();
        if p.rows() != n || p.cols() != n {
            return Err(LieError::BadBasisChange);
        }
        for a in 0..n {
            for q in 0..n {
                if !p[(q, a)].is_zero() && self.level(q) < self.level(a) {
                    return Err(LieError::FiltrationNotPreserved);
                }
            }
        }
        let inv = p.inverse().ok_or(LieError::BadBasisChange)?;
        let cols: Vec<Vec<Rational>> = (0..n).map(|a| p.column(a)).collect();
        let mut out = Self::with_ranks(self.ranks.clone());
        for a in 0..n {
            for b in 0..n {
                let w = self.bracket_vectors(&cols[a], &cols[b]);
                let coords = inv.mul_vec(&w);
                out.table[a][b] =
                    coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            }
        }
        Ok(out)
    }

    /// Direct sum; level-`i` vectors of `self` precede those of `other`.
    pub fn direct_sum(&self, other: &LieAlgebraSpec) -> LieAlgebraSpec {
        let class = self.class().max(other.class());
        let rank = |s: &LieAlgebraSpec, i: usize| s.ranks.get(i).copied().unwrap_or(0);
        let ranks: Vec<usize> = (0..class).map(|i| rank(self, i) + rank(other, i)).collect();
        let mut out = Self::with_ranks(ranks);
        let ma: Vec<usize> = self.labels.iter().map(|l| out.index_of(l.level, l.index).unwrap()).collect();
        let mb: Vec<usize> = other
            .labels
            .iter()
            .map(|l| out.index_of(l.level, rank(self, l.level - 1) + l.index).unwrap())
            .collect();
        for (s, m) in [(self, &ma), (other, &mb)] {
            for a in 0..s.dim() {
                for b in 0..s.dim() {
                    let v = s.table[a][b].iter().map(|(k, c)| (m[*k], c.clone())).collect();
                    out.set_raw(m[a], m[b], v);
                }
            }
        }
        out
    }
}

/// An element of a Lie algebra, as coordinates over its basis.
#[derive(Debug, Clone)]
pub struct LieElement {
    algebra: Arc<LieAlgebraSpec>,
    coeffs: Vec<Rational>,
}

impl PartialEq for LieElement {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.coeffs == other.coeffs
    }
}

impl Eq for LieElement {}

pub(crate) fn same_algebra(a: &Arc<LieAlgebraSpec>, b: &Arc<LieAlgebraSpec>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl LieElement {
    pub fn new(algebra: Arc<LieAlgebraSpec>, coeffs: Vec<Rational>) -> Self {
        assert_eq!(coeffs.len(), algebra.dim(), "coefficient vector has wrong length");
        LieElement { algebra, coeffs }
    }

    pub fn zero(algebra: Arc<LieAlgebraSpec>) -> Self {
        let n = algebra.dim();
        LieElement { algebra, coeffs: vec![Rational::zero(); n] }
    }

    /// The basis vector `X_a`.
    pub fn basis(algebra: Arc<LieAlgebraSpec>, a: usize) -> Self {
        let mut e = Self::zero(algebra);
        e.coeffs[a] = Rational::one();
        e
    }

    pub fn algebra(&self) -> &Arc<LieAlgebraSpec> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &LieElement) -> Result<(), LieError> {
        if same_algebra(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(LieError::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &LieElement) -> Result<LieElement, LieError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(LieElement { algebra: self.algebra.clone(), coeffs })
    }

    pub fn scale(&self, c: &Rational) -> LieElement {
        LieElement { algebra: self.algebra.clone(), coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn neg(&self) -> LieElement {
        self.scale(&-Rational::one())
    }

    pub fn bracket(&self, other: &LieElement) -> Result<LieElement, LieError> {
        self.check(other)?;
        let coeffs = self.algebra.bracket_vectors(&self.coeffs, &other.coeffs);
        Ok(LieElement { algebra: self.algebra.clone(), coeffs })
    }

    /// `log(exp(self) exp(other))`, exact because the algebra is nilpotent.
    pub fn bch(&self, other: &LieElement) -> Result<LieElement, LieError> {
        self.check(other)?;
        let series = BchSeries::for_class(self.algebra.class());
        let coeffs = series.apply(&self.algebra, &self.coeffs, &other.coeffs);
        Ok(LieElement { algebra: self.algebra.clone(), coeffs })
    }
}

pub fn bracket(a: &LieElement, b: &LieElement) -> Result<LieElement, LieError> {
    a.bracket(b)
}

pub fn bch(a: &LieElement, b: &LieElement) -> Result<LieElement, LieError> {
    a.bch(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exact::{int, rat};

    fn heis() -> Arc<LieAlgebraSpec> {
        Arc::new(corpus::heisenberg())
    }

    #[test]
    fn heisenberg_brackets() {
        let h = heis();
        let x = LieElement::basis(h.clone(), 0);
        let y = LieElement::basis(h.clone(), 1);
        let z = LieElement::basis(h.clone(), 2);
        assert_eq!(x.bracket(&y).unwrap(), z);
        assert!(x.bracket(&z).unwrap().is_zero());
        let a = LieElement::new(h, vec![rat(1, 2), int(-3), int(7)]);
        assert!(a.bracket(&a).unwrap().is_zero());
    }

    #[test]
    fn mismatched_algebras() {
        let x = LieElement::basis(heis(), 0);
        let e = LieElement::basis(Arc::new(LieAlgebraSpec::abelian(3)), 0);
        assert_eq!(x.bracket(&e).unwrap_err(), LieError::AlgebraMismatch);
    }

    #[test]
    fn bch_examples() {
        let h = heis();
        let x = LieElement::basis(h.clone(), 0);
        let y = LieElement::basis(h.clone(), 1);
        let want = LieElement::new(h.clone(), vec![int(1), int(1), rat(1, 2)]);
        assert_eq!(x.bch(&y).unwrap(), want);
        let a = LieElement::new(h.clone(), vec![rat(2, 3), int(5), int(-1)]);
        assert_eq!(a.bch(&LieElement::zero(h.clone())).unwrap(), a);
        assert!(a.bch(&a.neg()).unwrap().is_zero());
    }

    #[test]
    fn direct_sum_shapes() {
        let s = corpus::heisenberg().direct_sum(&LieAlgebraSpec::abelian(3));
        assert_eq!(s.ranks(), &[5, 1]);
        assert!(validate(&s).all_passed());
    }

    #[test]
    fn change_basis_rejects_filtration_breaking_matrices() {
        let h = corpus::heisenberg();
        let mut p = Matrix::identity(3);
        p[(0, 2)] = int(1); // Z picks up an X component
        assert_eq!(h.change_basis(&p).unwrap_err(), LieError::FiltrationNotPreserved);
        let mut q = Matrix::identity(3);
        q[(2, 0)] = int(4); // X picks up a Z component: allowed
        q[(1, 0)] = int(1);
        let changed = h.change_basis(&q).unwrap();
        assert!(validate(&changed).all_passed());
    }
}
