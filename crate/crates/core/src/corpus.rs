//! Standard example algebras.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{rat, Matrix, Rational};
use crate::lie::{free_nilpotent, LieAlgebraSpec};

/// Heisenberg algebra: level-1 `X, Y`, level-2 `Z`, `[X, Y] = Z`.
pub fn heisenberg() -> LieAlgebraSpec {
    let mut s = LieAlgebraSpec::with_ranks(vec![2, 1]);
    s.set_bracket(0, 1, vec![(2, Rational::one())]);
    s
}

pub fn abelian(k: usize) -> LieAlgebraSpec {
    LieAlgebraSpec::abelian(k)
}

/// Index pairs `(a, b)`, `a < b`, of the matrix units `E_ab` spanning the
/// strictly upper triangular `n × n` matrices, in basis order: by level
/// `b - a`, then by `a`.
pub fn unitriangular_units(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|l| (0..n - l).map(move |a| (a, a + l))).collect()
}

/// Lie algebra of the upper unitriangular group `U_n`, on the matrix units
/// with `[E_ab, E_cd] = δ_bc E_ad - δ_da E_cb`.
pub fn unitriangular(n: usize) -> LieAlgebraSpec {
    let units = unitriangular_units(n);
    let mut s = LieAlgebraSpec::with_ranks((1..n).map(|l| n - l).collect());
    let pos = |p: (usize, usize)| units.iter().position(|&u| u == p).unwrap();
    for (i, &(a, b)) in units.iter().enumerate() {
        for (j, &(c, d)) in units.iter().enumerate().skip(i + 1) {
            let mut v = Vec::new();
            if b == c {
                v.push((pos((a, d)), Rational::one()));
            }
            if d == a {
                v.push((pos((c, b)), -Rational::one()));
            }
            if !v.is_empty() {
                s.set_bracket(i, j, v);
            }
        }
    }
    s
}

/// `f_n(c)` on its Hall basis.
pub fn free(n: usize, c: usize) -> LieAlgebraSpec {
    free_nilpotent(n, c)
}

/// A random invertible change of basis that keeps the basis adapted to the
/// lower central series: new level-`i` vectors combine old vectors of level
/// `≥ i`, with an invertible level-`i` block. Columns are the new vectors.
pub fn random_adapted_change(spec: &LieAlgebraSpec, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = spec.dim();
    let nonzero = |rng: &mut ChaCha8Rng| loop {
        let c = rat(rng.random_range(-3..=3), rng.random_range(1..=2));
        if !c.is_zero() {
            return c;
        }
    };
    // lower triangular with nonzero diagonal, times block upper unitriangular
    let mut lower = Matrix::identity(n);
    let mut upper = Matrix::identity(n);
    for a in 0..n {
        lower[(a, a)] = nonzero(&mut rng);
        for q in a + 1..n {
            lower[(q, a)] = rat(rng.random_range(-2..=2), 1);
            if spec.level(q) == spec.level(a) {
                upper[(a, q)] = rat(rng.random_range(-2..=2), 1);
            }
        }
    }
    lower.mul(&upper)
}
