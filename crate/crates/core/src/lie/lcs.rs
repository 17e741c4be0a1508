use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{LieAlgebraSpec, LieError};
use crate::exact::{EchelonBasis, Rational};

/// A subspace of the algebra, stored as reduced row-echelon basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        Subspace { ambient, basis }
    }

    pub fn spanned_by<I: IntoIterator<Item = Vec<Rational>>>(ambient: usize, vectors: I) -> Self {
        let mut ech = EchelonBasis::new();
        for v in vectors {
            ech.insert(to_sparse(&v));
        }
        Subspace { ambient, basis: rref(ambient, &ech) }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut ech = EchelonBasis::new();
        for b in &self.basis {
            ech.insert(to_sparse(b));
        }
        ech.contains(to_sparse(v))
    }
}

pub(crate) fn to_sparse(v: &[Rational]) -> BTreeMap<usize, Rational> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

fn rref(ambient: usize, ech: &EchelonBasis<usize>) -> Vec<Vec<Rational>> {
    let mut rows: Vec<Vec<Rational>> = ech
        .rows()
        .map(|r| {
            let mut dense = vec![Rational::zero(); ambient];
            for (k, c) in r {
                dense[*k] = c.clone();
            }
            dense
        })
        .collect();
    let pivots: Vec<usize> = rows.iter().map(|r| r.iter().position(|c| !c.is_zero()).unwrap()).collect();
    for i in (0..rows.len()).rev() {
        for j in i + 1..rows.len() {
            let f = rows[i][pivots[j]].clone();
            if f.is_zero() {
                continue;
            }
            let rj = rows[j].clone();
            for (a, b) in rows[i].iter_mut().zip(&rj) {
                *a -= &f * b;
            }
        }
    }
    rows
}

/// `g_[1] = g`, `g_[k+1] = [g, g_[k]]`, up to and including the first zero term,
/// computing at most `limit` terms. The flag says whether zero was reached.
pub(crate) fn series_with_limit(spec: &LieAlgebraSpec, limit: usize) -> (Vec<Subspace>, bool) {
    let n = spec.dim();
    let mut series = vec![Subspace::full(n)];
    if n == 0 {
        return (series, true);
    }
    let units: Vec<Vec<Rational>> = Subspace::full(n).basis;
    while series.len() < limit {
        let last = series.last().unwrap();
        if last.is_zero() {
            return (series, true);
        }
        let next = Subspace::spanned_by(
            n,
            units.iter().flat_map(|e| last.basis.iter().map(move |v| spec.bracket_vectors(e, v))),
        );
        series.push(next);
    }
    let done = series.last().is_some_and(Subspace::is_zero);
    (series, done)
}

/// The lower central series, ending with the zero subspace.
///
/// Fails when the series has not reached zero at index `class + 1`.
pub fn lower_central_series(spec: &LieAlgebraSpec) -> Result<Vec<Subspace>, LieError> {
    let steps = spec.class() + 1;
    let (series, done) = series_with_limit(spec, steps);
    if done {
        Ok(series)
    } else {
        Err(LieError::NotNilpotent { steps })
    }
}
