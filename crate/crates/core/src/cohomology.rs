//! Lie algebra cohomology with trivial coefficients and polynomial `H¹`.
//!
//! For a lattice in a simply connected nilpotent Lie group the real Betti
//! numbers of the lattice equal those of the Chevalley–Eilenberg complex
//! `Λ•g*`, which is what is computed here.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{rat, Degree, EchelonBasis, Matrix, MultiPoly, Rational};
use crate::group::GroupElement;
use crate::lie::LieAlgebraSpec;
use crate::polymap::{count_exponents, quadratic_defect, DiffEngine, PolyMap, Side};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohomologyError {
    #[error("degree {n} is outside 0..={dim}")]
    OutOfRange { n: usize, dim: usize },
    #[error("polynomial degree must be at least 1")]
    ZeroDegree,
}

type SparseRow = BTreeMap<usize, Rational>;

/// The Chevalley–Eilenberg cochain complex of a Lie algebra.
#[derive(Debug, Clone)]
pub struct CEComplex {
    dim: usize,
    /// `bases[n]`: sorted index sets spanning `Λⁿ g*`, in lexicographic order.
    bases: Vec<Vec<Vec<usize>>>,
    /// `diffs[n]`: `d_n : Λⁿ → Λⁿ⁺¹`, one sparse row per basis element of `Λⁿ⁺¹`.
    diffs: Vec<Vec<SparseRow>>,
}

fn subsets(dim: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, dim: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            rec(i + 1, dim, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, dim, n, &mut Vec::new(), &mut out);
    out
}

fn index_map(basis: &[Vec<usize>]) -> BTreeMap<&[usize], usize> {
    basis.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect()
}

/// `(dω)(x_0,…,x_n) = Σ_{i<j} (-1)^{i+j} ω([x_i,x_j], x_0,…,x̂_i,…,x̂_j,…,x_n)`.
fn coboundary(spec: &LieAlgebraSpec, source: &[Vec<usize>], target: &[Vec<usize>]) -> Vec<SparseRow> {
    let col = index_map(source);
    target
        .iter()
        .map(|s| {
            let mut row = SparseRow::new();
            for i in 0..s.len() {
                for j in i + 1..s.len() {
                    let br = spec.bracket_basis(s[i], s[j]);
                    if br.is_empty() {
                        continue;
                    }
                    let rest: Vec<usize> =
                        s.iter().enumerate().filter(|&(p, _)| p != i && p != j).map(|(_, &x)| x).collect();
                    let sign_ij = if (i + j) % 2 == 0 { 1 } else { -1 };
                    for (k, c) in br {
                        if rest.contains(k) {
                            continue;
                        }
                        let pos = rest.iter().filter(|&&x| x < *k).count();
                        let mut t = rest.clone();
                        t.insert(pos, *k);
                        let sign = if pos % 2 == 0 { sign_ij } else { -sign_ij };
                        let e = row.entry(col[t.as_slice()]).or_insert_with(Rational::zero);
                        *e += c * Rational::from_integer(sign.into());
                    }
                }
            }
            row.retain(|_, c| !c.is_zero());
            row
        })
        .collect()
}

fn sparse_rank(rows: &[SparseRow]) -> usize {
    let mut ech = EchelonBasis::new();
    for r in rows {
        ech.insert(r.clone());
    }
    ech.rank()
}

impl CEComplex {
    pub fn new(spec: &LieAlgebraSpec) -> Self {
        let dim = spec.dim();
        let bases: Vec<Vec<Vec<usize>>> = (0..=dim).map(|n| subsets(dim, n)).collect();
        let diffs = (0..dim).map(|n| coboundary(spec, &bases[n], &bases[n + 1])).collect();
        CEComplex { dim, bases, diffs }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Index sets spanning `Λⁿ g*`.
    pub fn basis(&self, n: usize) -> &[Vec<usize>] {
        &self.bases[n]
    }

    /// `d_n` as a dense matrix with `dim Λⁿ⁺¹` rows and `dim Λⁿ` columns.
    pub fn differential(&self, n: usize) -> Matrix {
        let (rows, cols) = (self.bases[n + 1].len(), self.bases[n].len());
        let mut m = Matrix::zeros(rows, cols);
        for (r, row) in self.diffs[n].iter().enumerate() {
            for (c, v) in row {
                m[(r, *c)] = v.clone();
            }
        }
        m
    }

    pub fn rank(&self, n: usize) -> usize {
        if n >= self.dim {
            0
        } else {
            sparse_rank(&self.diffs[n])
        }
    }

    pub fn betti(&self, n: usize) -> Result<usize, CohomologyError> {
        if n > self.dim {
            return Err(CohomologyError::OutOfRange { n, dim: self.dim });
        }
        let below = if n == 0 { 0 } else { self.rank(n - 1) };
        Ok(self.bases[n].len() - self.rank(n) - below)
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        (0..=self.dim).map(|n| self.betti(n).expect("in range")).collect()
    }

    /// Whether `d_{n+1} ∘ d_n = 0` for every `n`.
    pub fn is_complex(&self) -> bool {
        (0..self.dim.saturating_sub(1)).all(|n| {
            self.diffs[n + 1].iter().all(|row| {
                let mut acc = SparseRow::new();
                for (mid, c) in row {
                    for (k, v) in &self.diffs[n][*mid] {
                        *acc.entry(*k).or_insert_with(Rational::zero) += c * v;
                    }
                }
                acc.values().all(Zero::is_zero)
            })
        })
    }
}

/// `βⁿ = dim Hⁿ(g; ℚ)`, computed from just the two differentials involved.
pub fn betti(spec: &LieAlgebraSpec, n: usize) -> Result<usize, CohomologyError> {
    let dim = spec.dim();
    if n > dim {
        return Err(CohomologyError::OutOfRange { n, dim });
    }
    let basis_n = subsets(dim, n);
    let rank_out =
        if n < dim { sparse_rank(&coboundary(spec, &basis_n, &subsets(dim, n + 1))) } else { 0 };
    let rank_in = if n > 0 { sparse_rank(&coboundary(spec, &subsets(dim, n - 1), &basis_n)) } else { 0 };
    Ok(basis_n.len() - rank_out - rank_in)
}

pub fn betti_numbers(spec: &LieAlgebraSpec) -> Vec<usize> {
    CEComplex::new(spec).betti_numbers()
}

/// `dim Pol_d − dim Pol_{d−1}`, the dimension of degree-`d` polynomial `H¹`
/// with trivial coefficients.
pub fn poly_h1_dim(spec: &LieAlgebraSpec, d: u32) -> Result<usize, CohomologyError> {
    if d == 0 {
        return Err(CohomologyError::ZeroDegree);
    }
    let w = spec.weights();
    Ok(count_exponents(&w, d) - count_exponents(&w, d - 1))
}

fn random_element(xi: &PolyMap, rng: &mut ChaCha8Rng) -> GroupElement {
    let g = xi.group();
    g.element((0..g.dim()).map(|_| rat(rng.random_range(-6..=6), rng.random_range(1..=3))).collect())
        .expect("length matches")
}

/// Whether `ξ` is a polynomial 1-cocycle of degree `≤ d` with trivial
/// coefficients: `ξ(𝟙) = 0` and every `d`-fold unitized difference along the
/// level-1 generators vanishes. For `d = 2` the answer is also checked
/// against the six-term quadratic identity on seeded random triples.
pub fn check_poly_cocycle(xi: &PolyMap, d: u32) -> bool {
    if !xi.is_unital() {
        return false;
    }
    let group = xi.group();
    let mut eng = DiffEngine::generators(group, Side::Left);
    let mut span: Vec<MultiPoly> = if xi.is_zero() { Vec::new() } else { vec![xi.body().clone()] };
    for _ in 0..d {
        let mut ech: EchelonBasis<crate::exact::Monomial> = EchelonBasis::new();
        let mut next = Vec::new();
        for v in &span {
            for k in 0..eng.len() {
                let mut dv = eng.diff_body(k, v);
                let c = dv.constant_term();
                if !c.is_zero() {
                    dv = &dv - &MultiPoly::constant(group.coord_vars(), c);
                }
                if ech.insert(dv.terms().map(|(m, c)| (m.clone(), c.clone())).collect()) {
                    next.push(dv);
                }
            }
        }
        span = next;
    }
    let symbolic = span.is_empty();
    debug_assert_eq!(symbolic, xi.degree() <= Degree::Finite(d));
    if d != 2 {
        return symbolic;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut identity_holds = true;
    for _ in 0..20 {
        let (g, h, k) = (random_element(xi, &mut rng), random_element(xi, &mut rng), random_element(xi, &mut rng));
        if !quadratic_defect(xi, &g, &h, &k).expect("same group").is_zero() {
            identity_holds = false;
            break;
        }
    }
    symbolic && identity_holds
}

/// Binomial coefficient, used by tests and the acceptance checks.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exact::int;
    use crate::group::Group;

    fn corpus_specs() -> Vec<LieAlgebraSpec> {
        vec![
            corpus::heisenberg(),
            corpus::abelian(3),
            corpus::free(2, 3),
            corpus::free(3, 2),
            corpus::unitriangular(4),
            corpus::heisenberg().direct_sum(&corpus::abelian(3)),
        ]
    }

    #[test]
    fn heisenberg_betti() {
        assert_eq!(betti_numbers(&corpus::heisenberg()), vec![1, 2, 2, 1]);
        assert_eq!(betti(&corpus::heisenberg(), 4), Err(CohomologyError::OutOfRange { n: 4, dim: 3 }));
    }

    #[test]
    fn abelian_betti_is_binomial() {
        for k in 0..=4 {
            let b = betti_numbers(&corpus::abelian(k));
            assert_eq!(b, (0..=k).map(|n| binomial(k, n)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn complexes_square_to_zero_and_dualize() {
        for s in corpus_specs() {
            let c = CEComplex::new(&s);
            assert!(c.is_complex());
            for n in 0..=c.dim() {
                assert_eq!(c.basis(n).len(), binomial(c.dim(), n));
                assert_eq!(c.betti(n).unwrap(), betti(&s, n).unwrap());
            }
            let b = c.betti_numbers();
            assert_eq!(b[0], 1);
            let rev: Vec<usize> = b.iter().rev().copied().collect();
            assert_eq!(b, rev);
            if !s.is_abelian() {
                let euler: i64 = b.iter().enumerate().map(|(n, &x)| if n % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
                assert_eq!(euler, 0);
            }
            assert_eq!(poly_h1_dim(&s, 1).unwrap(), b[1]);
        }
    }

    #[test]
    fn differential_matrix_agrees_with_dense_product() {
        let c = CEComplex::new(&corpus::unitriangular(4));
        for n in 0..c.dim() - 1 {
            assert!(c.differential(n + 1).mul(&c.differential(n)).is_zero());
            assert_eq!(c.differential(n).rank(), c.rank(n));
        }
    }

    #[test]
    fn poly_h1_examples() {
        let h = corpus::heisenberg();
        assert_eq!(poly_h1_dim(&h, 1), Ok(2));
        assert_eq!(poly_h1_dim(&h, 2), Ok(4));
        for d in 1..6 {
            assert_eq!(poly_h1_dim(&corpus::abelian(1), d), Ok(1));
        }
        assert_eq!(poly_h1_dim(&h, 0), Err(CohomologyError::ZeroDegree));
    }

    #[test]
    fn cocycle_examples() {
        let g = Group::new(corpus::heisenberg()).unwrap();
        let z = PolyMap::zeta(&g, 2, 1).unwrap();
        let x = PolyMap::zeta(&g, 1, 1).unwrap();
        assert!(check_poly_cocycle(&z, 2));
        assert!(!check_poly_cocycle(&z, 1));
        let q = x.product(&x).unwrap().add(&x).unwrap();
        assert!(check_poly_cocycle(&q, 2));
        assert!(!check_poly_cocycle(&q, 1));
        for d in 0..4 {
            assert!(!check_poly_cocycle(&PolyMap::one(&g), d));
        }
        let cubic = x.product(&z).unwrap();
        assert!(!check_poly_cocycle(&cubic, 2));
        assert!(check_poly_cocycle(&cubic, 3));
        assert!(check_poly_cocycle(&PolyMap::zero(&g), 0));
        assert!(!check_poly_cocycle(&x.scale(&int(3)), 0));
    }
}
