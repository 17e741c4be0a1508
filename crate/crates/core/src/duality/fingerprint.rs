use serde::Serialize;
use serde_json::{json, Value};

use crate::cohomology::betti_numbers;
use crate::exact::{Matrix, Rational};
use crate::lie::{graded, lower_central_series, LieAlgebraSpec, LieError, Subspace};
use crate::polymap::count_exponents;

/// Isomorphism invariants of the Mal'cev completion. Every field is
/// independent of the chosen LCS-adapted basis, so any mismatch certifies
/// non-isomorphism; the graded fields are quasi-isometry invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub dimension: usize,
    pub class: usize,
    /// `dim g_[i] / g_[i+1]` for `i = 1..=class`.
    pub lcs_quotient_dims: Vec<usize>,
    pub betti: Vec<usize>,
    pub graded_betti: Vec<usize>,
    /// `dim Pol_d` for `d = 0..=class`.
    pub dim_pol: Vec<usize>,
    /// `(i, s, rank)` of the graded bracket `gr_i ⊗ gr_s → gr_{i+s}`, `i ≤ s`.
    pub graded_bracket_ranks: Vec<(usize, usize, usize)>,
    pub center_dim: usize,
    pub graded_center_dim: usize,
    /// Dimensions of the derived series down to its stable term.
    pub derived_dims: Vec<usize>,
}

fn center_dim(spec: &LieAlgebraSpec) -> usize {
    let n = spec.dim();
    // rows: (b, k) -> coefficient of X_k in [X_a, X_b], columns a
    let mut rows = Vec::new();
    for b in 0..n {
        let mut block = vec![vec![Rational::from_integer(0.into()); n]; n];
        for a in 0..n {
            for (k, c) in spec.bracket_basis(a, b) {
                block[*k][a] = c.clone();
            }
        }
        rows.extend(block);
    }
    if rows.is_empty() {
        return 0;
    }
    n - Matrix::from_rows(rows).rank()
}

fn derived_dims(spec: &LieAlgebraSpec) -> Vec<usize> {
    let n = spec.dim();
    let mut cur = Subspace::full(n);
    let mut out = vec![n];
    while !cur.is_zero() {
        let b = cur.basis();
        let next = Subspace::spanned_by(
            n,
            b.iter().enumerate().flat_map(|(i, u)| b[i + 1..].iter().map(move |v| spec.bracket_vectors(u, v))),
        );
        if next.dim() == cur.dim() {
            break;
        }
        out.push(next.dim());
        cur = next;
    }
    out
}

fn graded_ranks(gr: &LieAlgebraSpec) -> Vec<(usize, usize, usize)> {
    let c = gr.class();
    let n = gr.dim();
    let mut out = Vec::new();
    for i in 1..=c {
        for s in i..=c {
            if i + s > c {
                continue;
            }
            let rows: Vec<Vec<Rational>> = (0..n)
                .filter(|&a| gr.level(a) == i)
                .flat_map(|a| (0..n).filter(move |&b| gr.level(b) == s).map(move |b| (a, b)))
                .map(|(a, b)| {
                    let mut v = vec![Rational::from_integer(0.into()); n];
                    for (k, x) in gr.bracket_basis(a, b) {
                        v[*k] = x.clone();
                    }
                    v
                })
                .collect();
            let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(rows).rank() };
            out.push((i, s, rank));
        }
    }
    out
}

pub fn fingerprint(spec: &LieAlgebraSpec) -> Result<Fingerprint, LieError> {
    let series = lower_central_series(spec)?;
    let dims: Vec<usize> = series.windows(2).map(|w| w[0].dim() - w[1].dim()).collect();
    let class = dims.len();
    let weights: Vec<u32> =
        dims.iter().enumerate().flat_map(|(i, &m)| std::iter::repeat_n(i as u32 + 1, m)).collect();
    let gr = graded(spec);
    Ok(Fingerprint {
        dimension: spec.dim(),
        class,
        lcs_quotient_dims: dims,
        betti: betti_numbers(spec),
        graded_betti: betti_numbers(&gr),
        dim_pol: (0..=class as u32).map(|d| count_exponents(&weights, d)).collect(),
        graded_bracket_ranks: graded_ranks(&gr),
        center_dim: center_dim(spec),
        graded_center_dim: center_dim(&gr),
        derived_dims: derived_dims(spec),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantMatch {
    pub name: String,
    pub left: Value,
    pub right: Value,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub invariants: Vec<InvariantMatch>,
    pub certified_non_isomorphic: bool,
    pub verdict: String,
}

impl Comparison {
    pub fn mismatches(&self) -> Vec<&str> {
        self.invariants.iter().filter(|m| !m.matches).map(|m| m.name.as_str()).collect()
    }
}

pub fn compare(a: &LieAlgebraSpec, b: &LieAlgebraSpec) -> Result<Comparison, LieError> {
    let (fa, fb) = (fingerprint(a)?, fingerprint(b)?);
    let pairs: Vec<(&str, Value, Value)> = vec![
        ("dimension", json!(fa.dimension), json!(fb.dimension)),
        ("class", json!(fa.class), json!(fb.class)),
        ("lcs_quotient_dims", json!(fa.lcs_quotient_dims), json!(fb.lcs_quotient_dims)),
        ("betti", json!(fa.betti), json!(fb.betti)),
        ("graded_betti", json!(fa.graded_betti), json!(fb.graded_betti)),
        ("dim_pol", json!(fa.dim_pol), json!(fb.dim_pol)),
        ("graded_bracket_ranks", json!(fa.graded_bracket_ranks), json!(fb.graded_bracket_ranks)),
        ("center_dim", json!(fa.center_dim), json!(fb.center_dim)),
        ("graded_center_dim", json!(fa.graded_center_dim), json!(fb.graded_center_dim)),
        ("derived_dims", json!(fa.derived_dims), json!(fb.derived_dims)),
    ];
    let invariants: Vec<InvariantMatch> = pairs
        .into_iter()
        .map(|(name, left, right)| InvariantMatch { name: name.into(), matches: left == right, left, right })
        .collect();
    let certified = invariants.iter().any(|m| !m.matches);
    let verdict = if certified { "certified non-isomorphic" } else { "indistinguishable by implemented invariants" };
    Ok(Comparison { invariants, certified_non_isomorphic: certified, verdict: verdict.into() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn heisenberg_vs_abelian() {
        let c = compare(&corpus::heisenberg(), &corpus::abelian(3)).unwrap();
        assert!(c.certified_non_isomorphic);
        assert!(c.mismatches().contains(&"lcs_quotient_dims"));
        let f = fingerprint(&corpus::heisenberg()).unwrap();
        assert_eq!(f.lcs_quotient_dims, vec![2, 1]);
        assert_eq!(f.betti, vec![1, 2, 2, 1]);
        assert_eq!(f.dim_pol, vec![1, 3, 7]);
    }

    #[test]
    fn free_algebras_differ_in_class() {
        let c = compare(&corpus::free(2, 3), &corpus::free(3, 2)).unwrap();
        assert!(c.certified_non_isomorphic);
        assert!(c.mismatches().contains(&"class"));
    }

    #[test]
    fn invariant_under_basis_change() {
        for (seed, spec) in [corpus::heisenberg(), corpus::unitriangular(4), corpus::free(2, 3)].into_iter().enumerate() {
            let other = (0..)
                .map(|k| spec.change_basis(&corpus::random_adapted_change(&spec, seed as u64 + 17 * k)).unwrap())
                .find(|o| *o != spec)
                .unwrap();
            let c = compare(&spec, &other).unwrap();
            assert!(!c.certified_non_isomorphic, "{:?}", c.mismatches());
            assert_eq!(c.verdict, "indistinguishable by implemented invariants");
        }
    }

    #[test]
    fn filtered_algebra_and_its_graded_share_graded_invariants() {
        // [x,y] = z + w, [x,z] = w versus its associated graded
        let mut s = LieAlgebraSpec::with_ranks(vec![2, 1, 1]);
        s.set_bracket(0, 1, vec![(2, Rational::from_integer(1.into())), (3, Rational::from_integer(1.into()))]);
        s.set_bracket(0, 2, vec![(3, Rational::from_integer(1.into()))]);
        let fa = fingerprint(&s).unwrap();
        let fb = fingerprint(graded(&s).spec()).unwrap();
        assert_eq!(fa.graded_betti, fb.graded_betti);
        assert_eq!(fa.graded_bracket_ranks, fb.graded_bracket_ranks);
    }
}
