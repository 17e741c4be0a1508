//! Exact linear algebra over the rationals.
//!
//! Dense systems are reduced with fraction-free (Bareiss) elimination on
//! integer rows: every row is first cleared of denominators, and all
//! intermediate entries stay integral because each division is exact.

use std::collections::BTreeMap;
use std::ops::Bound;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let e: Vec<Rational> = (0..n).map(|i| if i == j { Rational::one() } else { Rational::zero() }).collect();
            cols.push(linear_solve(self, &e).ok()?);
        }
        if rank(self) < n {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for (j, c) in cols.into_iter().enumerate() {
            for (i, v) in c.into_iter().enumerate() {
                inv[(i, j)] = v;
            }
        }
        Some(inv)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

/// `A x = b` has no solution.
///
/// `row` is the index of an original row that reduced to `0 = c ≠ 0`;
/// `certificate` is a vector `y` with `yᵀA = 0` and `yᵀb = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inconsistent {
    pub row: usize,
    pub certificate: Vec<Rational>,
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    row.iter().map(|r| r.numer() * (&lcm / r.denom())).collect()
}

struct Echelon {
    rows: Vec<Vec<BigInt>>,
    /// `origin[k]` is the original index of the row now stored at `k`.
    origin: Vec<usize>,
    pivots: Vec<usize>,
}

/// Fraction-free forward elimination, pivoting only in columns `< pivot_cols`.
fn bareiss(mut rows: Vec<Vec<BigInt>>, pivot_cols: usize) -> Echelon {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut origin: Vec<usize> = (0..nrows).collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..pivot_cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        origin.swap(r, p);
        let (top, rest) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pv = pivot_row[col].clone();
        for row in rest.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..ncols {
                let num = &pv * &row[j] - &factor * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
            row[col] = BigInt::zero();
        }
        prev = pv;
        pivots.push(col);
        r += 1;
    }
    Echelon { rows, origin, pivots }
}

pub fn rank(a: &Matrix) -> usize {
    if a.rows == 0 || a.cols == 0 {
        return 0;
    }
    let rows = (0..a.rows).map(|i| integer_row(a.row(i))).collect();
    bareiss(rows, a.cols).pivots.len()
}

/// Solves `A x = b` exactly.
///
/// Returns the particular solution whose free variables are zero, with
/// pivots chosen leftmost. That is the unique solution supported on the
/// pivot columns of the reduced row-echelon form.
pub fn linear_solve(a: &Matrix, b: &[Rational]) -> Result<Vec<Rational>, Inconsistent> {
    assert_eq!(b.len(), a.rows, "right-hand side has wrong length");
    let n = a.cols;
    let rows: Vec<Vec<BigInt>> = (0..a.rows)
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.push(b[i].clone());
            integer_row(&row)
        })
        .collect();
    let ech = bareiss(rows, n);
    let rank = ech.pivots.len();
    if let Some(k) = (rank..a.rows).find(|&k| !ech.rows[k][n].is_zero()) {
        return Err(Inconsistent { row: ech.origin[k], certificate: certificate(a, b) });
    }
    let mut x = vec![Rational::zero(); n];
    for (k, &pc) in ech.pivots.iter().enumerate().rev() {
        let row = &ech.rows[k];
        let mut acc = Rational::from_integer(row[n].clone());
        for &j in &ech.pivots[k + 1..] {
            if !row[j].is_zero() {
                acc -= Rational::from_integer(row[j].clone()) * &x[j];
            }
        }
        x[pc] = acc / Rational::from_integer(row[pc].clone());
    }
    Ok(x)
}

/// Finds `y` with `yᵀA = 0`, `yᵀb = 1` (exists iff `Ax = b` is inconsistent).
fn certificate(a: &Matrix, b: &[Rational]) -> Vec<Rational> {
    let mut rows: Vec<Vec<Rational>> = (0..a.cols).map(|j| a.column(j)).collect();
    rows.push(b.to_vec());
    let mut rhs = vec![Rational::zero(); a.cols];
    rhs.push(Rational::one());
    let t = Matrix::from_rows(rows);
    // Consistent by the Fredholm alternative whenever the caller saw a
    // contradiction, so the recursion bottoms out immediately.
    linear_solve(&t, &rhs).expect("certificate system is consistent when Ax=b is not")
}

/// Incrementally maintained echelon basis of sparse vectors.
///
/// Each stored row is normalized so its smallest key (the pivot) has
/// coefficient one, and no stored row has a nonzero entry at another row's
/// pivot to the left of its own.
#[derive(Debug, Clone)]
pub struct EchelonBasis<K: Ord + Clone> {
    rows: BTreeMap<K, BTreeMap<K, Rational>>,
}

impl<K: Ord + Clone> Default for EchelonBasis<K> {
    fn default() -> Self {
        EchelonBasis { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> EchelonBasis<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, mut v: BTreeMap<K, Rational>) -> BTreeMap<K, Rational> {
        let mut cursor: Option<K> = None;
        loop {
            let lower = match &cursor {
                None => Bound::Unbounded,
                Some(k) => Bound::Excluded(k.clone()),
            };
            let hit = v
                .range((lower, Bound::Unbounded))
                .find(|(k, _)| self.rows.contains_key(*k))
                .map(|(k, c)| (k.clone(), c.clone()));
            let Some((k, c)) = hit else { break };
            for (key, coeff) in &self.rows[&k] {
                let entry = v.entry(key.clone()).or_insert_with(Rational::zero);
                *entry -= &c * coeff;
                if entry.is_zero() {
                    v.remove(key);
                }
            }
            cursor = Some(k);
        }
        v
    }

    /// Adds `v` if it is independent of the current rows; returns whether it was.
    pub fn insert(&mut self, v: BTreeMap<K, Rational>) -> bool {
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let normalized = r.into_iter().map(|(k, c)| (k, c / &lead)).collect();
        self.rows.insert(pivot, normalized);
        true
    }

    pub fn contains(&self, v: BTreeMap<K, Rational>) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = &BTreeMap<K, Rational>> {
        self.rows.values()
    }
}

/// Largest absolute numerator/denominator bit length, a cheap size measure.
pub fn max_bits(values: &[Rational]) -> u64 {
    values.iter().map(|r| r.numer().abs().bits().max(r.denom().bits())).max().unwrap_or(0)
}
