use std::ops::Deref;

use super::LieAlgebraSpec;

/// The associated graded algebra `gr(g) = ⊕ g_[i]/g_[i+1]`, presented on the
/// same labels as the algebra it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedAlgebra(LieAlgebraSpec);

impl GradedAlgebra {
    pub fn spec(&self) -> &LieAlgebraSpec {
        &self.0
    }

    pub fn into_spec(self) -> LieAlgebraSpec {
        self.0
    }
}

impl Deref for GradedAlgebra {
    type Target = LieAlgebraSpec;
    fn deref(&self) -> &LieAlgebraSpec {
        &self.0
    }
}

/// Keeps only the level `i + s` part of each bracket of a level-`i` and a
/// level-`s` vector. Assumes the basis is adapted to the lower central series.
pub fn graded(spec: &LieAlgebraSpec) -> GradedAlgebra {
    let mut out = LieAlgebraSpec::with_ranks(spec.ranks().to_vec());
    let n = spec.dim();
    for a in 0..n {
        for b in 0..n {
            let need = spec.level(a) + spec.level(b);
            let v: Vec<_> = spec.bracket_basis(a, b).iter().filter(|(k, _)| spec.level(*k) == need).cloned().collect();
            if !v.is_empty() {
                out.set_raw(a, b, v);
            }
        }
    }
    GradedAlgebra(out)
}

/// Whether every bracket of basis vectors lands exactly in the sum of levels.
pub fn is_strictly_graded(spec: &LieAlgebraSpec) -> bool {
    let n = spec.dim();
    (0..n).all(|a| {
        (0..n).all(|b| {
            let need = spec.level(a) + spec.level(b);
            spec.bracket_basis(a, b).iter().all(|(k, _)| spec.level(*k) == need)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exact::int;
    use crate::lie::validate;

    #[test]
    fn heisenberg_is_its_own_graded() {
        let h = corpus::heisenberg();
        assert!(is_strictly_graded(&h));
        assert_eq!(graded(&h).spec(), &h);
    }

    #[test]
    fn filtered_terms_are_dropped() {
        // level-1 x, y, level-2 z, level-3 w with [x,y] = z + w, [x,z] = w
        let mut s = LieAlgebraSpec::with_ranks(vec![2, 1, 1]);
        s.set_bracket(0, 1, vec![(2, int(1)), (3, int(1))]);
        s.set_bracket(0, 2, vec![(3, int(1))]);
        assert!(validate(&s).all_passed());
        assert!(!is_strictly_graded(&s));
        let g = graded(&s);
        assert!(is_strictly_graded(&g));
        assert_eq!(g.bracket_basis(0, 1), &vec![(2, int(1))]);
        assert_eq!(g.bracket_basis(0, 2), &vec![(3, int(1))]);
        assert!(validate(&g).all_passed());
    }
}
